// Loading of per-case output directories: a case directory contains
// metrics.csv (the derived time series) and meta.yaml (flat scalar
// metadata such as case name, time step length, and paradigm).

import { readFileSync, readdirSync, existsSync } from "fs";
import { join } from "path";

export interface CaseData {
  name: string;
  dtMonths: number;
  paradigm: string;
  columns: string[];
  rows: Record<string, number>[];
}

export function parseCsv(text: string): { columns: string[]; rows: Record<string, number>[] } {
  const lines = text.split(/\r?\n/).filter((l) => l.length > 0);
  if (lines.length === 0) {
    throw new Error("empty CSV");
  }
  const columns = lines[0].split(",");
  const rows: Record<string, number>[] = [];
  for (const line of lines.slice(1)) {
    const parts = line.split(",");
    if (parts.length !== columns.length) {
      throw new Error(`CSV row has ${parts.length} fields, expected ${columns.length}`);
    }
    const row: Record<string, number> = {};
    for (let i = 0; i < columns.length; i++) {
      const v = Number(parts[i]);
      if (Number.isNaN(v)) {
        throw new Error(`non-numeric value '${parts[i]}' in column ${columns[i]}`);
      }
      row[columns[i]] = v;
    }
    rows.push(row);
  }
  return { columns, rows };
}

// meta.yaml is a flat mapping of scalar values, one `key: value` per line.
export function parseFlatYaml(text: string): Record<string, string> {
  const out: Record<string, string> = {};
  for (const line of text.split(/\r?\n/)) {
    if (line.trim() === "" || line.startsWith("#")) continue;
    const idx = line.indexOf(":");
    if (idx < 0) continue;
    out[line.slice(0, idx).trim()] = line.slice(idx + 1).trim();
  }
  return out;
}

export function loadCase(dir: string): CaseData {
  const meta = parseFlatYaml(readFileSync(join(dir, "meta.yaml"), "utf8"));
  const { columns, rows } = parseCsv(readFileSync(join(dir, "metrics.csv"), "utf8"));
  if (!meta.case || !meta.dt_months || !meta.paradigm) {
    throw new Error(`${dir}: meta.yaml missing case/dt_months/paradigm`);
  }
  return {
    name: meta.case,
    dtMonths: Number(meta.dt_months),
    paradigm: meta.paradigm,
    columns,
    rows,
  };
}

// Canonical presentation order; unknown case names sort after, alphabetically.
const CASE_ORDER = ["MI", "MF", "QI", "QF"];

export function caseSortKey(name: string): [number, string] {
  const i = CASE_ORDER.indexOf(name);
  return [i >= 0 ? i : CASE_ORDER.length, name];
}

export function discoverCases(inDir: string): CaseData[] {
  if (!existsSync(inDir)) {
    throw new Error(`input directory not found: ${inDir}`);
  }
  const found: { data: CaseData; dirName: string }[] = [];
  for (const entry of readdirSync(inDir, { withFileTypes: true })) {
    if (!entry.isDirectory()) continue;
    const dir = join(inDir, entry.name);
    if (existsSync(join(dir, "metrics.csv")) && existsSync(join(dir, "meta.yaml"))) {
      found.push({ data: loadCase(dir), dirName: entry.name });
    }
  }
  // variant runs can share a case name (e.g. the same case re-run with
  // different options); fall back to the directory name to keep labels unique
  const counts = new Map<string, number>();
  for (const f of found) counts.set(f.data.name, (counts.get(f.data.name) ?? 0) + 1);
  const cases: CaseData[] = found.map((f) =>
    (counts.get(f.data.name) ?? 0) > 1 && f.dirName !== f.data.name
      ? { ...f.data, name: f.dirName }
      : f.data
  );
  cases.sort((a, b) => {
    const [ia, na] = caseSortKey(a.name);
    const [ib, nb] = caseSortKey(b.name);
    return ia - ib || (na < nb ? -1 : na > nb ? 1 : 0);
  });
  return cases;
}

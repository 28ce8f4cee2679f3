// Synthetic case directories for tests: small metrics.csv + meta.yaml
// pairs with the same shape the simulator writes.

import { mkdirSync, writeFileSync } from "fs";
import { mkdtempSync } from "fs";
import { tmpdir } from "os";
import { join } from "path";

export const METRICS_COLUMNS = [
  "t",
  "month",
  "installed_mwe",
  "generated_mwe",
  "target_mwe",
  "normalized_power",
  "shortage_offline_mwe",
  "cum_shortage_offline_gwe_mo",
  "wasted_batches",
  "cum_wasted_batch_months",
  "fissile_kg",
  "pu239_kg",
  "fissile_withdrawn_kg",
];

export interface SyntheticCase {
  name: string;
  dtMonths: number;
  paradigm: "individual" | "fleet";
  steps: number;
}

export function writeCase(root: string, spec: SyntheticCase): string {
  const dir = join(root, spec.name);
  mkdirSync(dir, { recursive: true });
  const lines = [METRICS_COLUMNS.join(",")];
  let cumOffline = 0;
  let cumWasted = 0;
  for (let t = 0; t < spec.steps; t++) {
    const month = t * spec.dtMonths;
    const target = 90000 * Math.pow(1.01, month / 12);
    const generated = target * (0.9 + 0.1 * Math.cos(t / 7));
    const offline = Math.max(0, target - generated);
    const wasted = spec.paradigm === "fleet" ? 0 : t % 5 === 0 ? 2 : 0;
    cumOffline += (offline * spec.dtMonths) / 1000;
    cumWasted += wasted * spec.dtMonths;
    const fissile = 1000 + 100 * t;
    const withdrawn = t % 3 === 0 ? 500 : 0;
    lines.push(
      [
        t,
        month,
        target.toFixed(6),
        generated.toFixed(6),
        target.toFixed(6),
        (generated / target).toFixed(6),
        offline.toFixed(6),
        cumOffline.toFixed(6),
        wasted.toFixed(6),
        cumWasted.toFixed(6),
        fissile.toFixed(6),
        (fissile * 0.9).toFixed(6),
        withdrawn.toFixed(6),
      ].join(",")
    );
  }
  writeFileSync(join(dir, "metrics.csv"), lines.join("\n") + "\n");
  writeFileSync(
    join(dir, "meta.yaml"),
    [
      `case: ${spec.name}`,
      `dt_months: ${spec.dtMonths}`,
      `paradigm: ${spec.paradigm}`,
      `horizon_steps: ${spec.steps}`,
      "seed: 0",
    ].join("\n") + "\n"
  );
  return dir;
}

export function makeSuiteDir(cases?: SyntheticCase[]): string {
  const root = mkdtempSync(join(tmpdir(), "plots-test-"));
  const defaults: SyntheticCase[] = [
    { name: "MI", dtMonths: 1, paradigm: "individual", steps: 120 },
    { name: "MF", dtMonths: 1, paradigm: "fleet", steps: 120 },
    { name: "QI", dtMonths: 3, paradigm: "individual", steps: 40 },
    { name: "QF", dtMonths: 3, paradigm: "fleet", steps: 40 },
  ];
  for (const spec of cases ?? defaults) writeCase(root, spec);
  return root;
}

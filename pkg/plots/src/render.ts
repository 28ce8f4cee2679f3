#!/usr/bin/env node
// CLI: render figures from a directory of per-case output directories.
//
//   render --in <dir> --figs 4,5,6,7,8,11,12 --out <dir>
//
// <in> holds one subdirectory per case, each with metrics.csv and
// meta.yaml. Missing canonical cases produce a warning; figures are
// rendered from whatever cases are present.

import { mkdirSync, writeFileSync } from "fs";
import { join } from "path";
import { discoverCases } from "./data.js";
import { FIGURE_IDS, renderFigure } from "./figures.js";

export interface RenderResult {
  written: string[];
  warnings: string[];
}

const CANONICAL_CASES = ["MI", "MF", "QI", "QF"];

export function renderAll(inDir: string, outDir: string, figIds: number[]): RenderResult {
  const cases = discoverCases(inDir);
  if (cases.length === 0) {
    throw new Error(`no case directories with metrics.csv found under ${inDir}`);
  }
  const warnings: string[] = [];
  const present = new Set(cases.map((c) => c.name));
  for (const name of CANONICAL_CASES) {
    if (!present.has(name)) {
      warnings.push(`case ${name} not found under ${inDir}; rendering without it`);
    }
  }

  mkdirSync(outDir, { recursive: true });
  const written: string[] = [];
  for (const id of figIds) {
    let svg: string;
    try {
      svg = renderFigure(id, cases);
    } catch (err) {
      warnings.push(`figure ${id} skipped: ${(err as Error).message}`);
      continue;
    }
    const path = join(outDir, `fig${id}.svg`);
    writeFileSync(path, svg);
    written.push(path);
  }
  return { written, warnings };
}

function parseArgs(argv: string[]): { inDir: string; outDir: string; figIds: number[] } {
  let inDir: string | undefined;
  let outDir: string | undefined;
  let figs = FIGURE_IDS.join(",");
  for (let i = 0; i < argv.length; i++) {
    const a = argv[i];
    if (a === "--in") inDir = argv[++i];
    else if (a === "--out") outDir = argv[++i];
    else if (a === "--figs") figs = argv[++i];
    else if (a === "--help" || a === "-h") {
      console.log("usage: render --in <dir> [--figs 4,5,6,7,8,11,12] --out <dir>");
      process.exit(0);
    } else throw new Error(`unknown argument: ${a}`);
  }
  if (!inDir || !outDir) {
    throw new Error("both --in and --out are required");
  }
  const figIds = figs.split(",").map((s) => {
    const n = Number(s.trim());
    if (!Number.isInteger(n)) throw new Error(`bad figure id: ${s}`);
    return n;
  });
  return { inDir, outDir, figIds };
}

export function main(argv: string[]): number {
  let parsed;
  try {
    parsed = parseArgs(argv);
  } catch (err) {
    console.error(`error: ${(err as Error).message}`);
    return 2;
  }
  try {
    const result = renderAll(parsed.inDir, parsed.outDir, parsed.figIds);
    for (const w of result.warnings) console.warn(`warning: ${w}`);
    for (const p of result.written) console.log(`wrote ${p}`);
    return result.written.length > 0 ? 0 : 1;
  } catch (err) {
    console.error(`error: ${(err as Error).message}`);
    return 1;
  }
}

import { fileURLToPath } from "url";
if (process.argv[1] && fileURLToPath(import.meta.url) === process.argv[1]) {
  process.exit(main(process.argv.slice(2)));
}

// Figure definitions: each maps loaded case metrics to one chart.
//
// Figure ids follow the suite's reporting convention:
//   4  generated power over time, all cases
//   5  power normalized by the growth target, all cases
//   6  cumulative shortage-offline power, all cases
//   7  cumulative wasted batch-months (individually tracked cases only;
//      the fleet paradigm cannot strand batches inside reactors)
//   8  Pu-239 store inventory (line) with withdrawal impulses
//   11 superimposed fissile store inventories, all cases
//   12 superimposed fissile withdrawal flows, all cases
//
// x axes are in months so cases with different step lengths superimpose.

import { CaseData } from "./data.js";
import { ChartSpec, Series, renderChart, styleForCase } from "./svg.js";

export const FIGURE_IDS = [4, 5, 6, 7, 8, 11, 12];

function months(c: CaseData): number[] {
  return c.rows.map((r) => r.month);
}

function col(c: CaseData, name: string, scale = 1): number[] {
  return c.rows.map((r) => r[name] * scale);
}

function lineSeries(cases: CaseData[], column: string, scale = 1): Series[] {
  return cases.map((c) => ({
    label: c.name,
    x: months(c),
    y: col(c, column, scale),
    style: styleForCase(c.name),
    kind: "line" as const,
  }));
}

interface FigureDef {
  filter?: (c: CaseData) => boolean;
  build: (cases: CaseData[]) => ChartSpec;
}

const KG_PER_T = 1e-3;
const MWE_PER_GWE = 1e-3;

const FIGURES: Record<number, FigureDef> = {
  4: {
    build: (cases) => ({
      title: "Generated power",
      xLabel: "time (months)",
      yLabel: "generated power (GWe)",
      series: lineSeries(cases, "generated_mwe", MWE_PER_GWE),
    }),
  },
  5: {
    build: (cases) => ({
      title: "Power normalized by growth target",
      xLabel: "time (months)",
      yLabel: "generated / target",
      series: lineSeries(cases, "normalized_power"),
    }),
  },
  6: {
    build: (cases) => ({
      title: "Cumulative shortage-offline power",
      xLabel: "time (months)",
      yLabel: "cumulative offline power (GWe-months)",
      series: lineSeries(cases, "cum_shortage_offline_gwe_mo"),
    }),
  },
  7: {
    filter: (c) => c.paradigm !== "fleet",
    build: (cases) => ({
      title: "Cumulative wasted batch-months",
      xLabel: "time (months)",
      yLabel: "wasted batch-months",
      series: lineSeries(cases, "cum_wasted_batch_months"),
    }),
  },
  8: {
    build: (cases) => ({
      title: "Pu-239 store inventory and withdrawals",
      xLabel: "time (months)",
      yLabel: "Pu-239 (t) / withdrawal (t per step)",
      series: [
        ...lineSeries(cases, "pu239_kg", KG_PER_T),
        ...cases.map((c) => ({
          label: `${c.name} withdrawn`,
          x: months(c),
          y: col(c, "fissile_withdrawn_kg", KG_PER_T),
          style: styleForCase(c.name),
          kind: "impulse" as const,
        })),
      ],
    }),
  },
  11: {
    build: (cases) => ({
      title: "Fissile store inventories",
      xLabel: "time (months)",
      yLabel: "fissile inventory (t)",
      series: lineSeries(cases, "fissile_kg", KG_PER_T),
    }),
  },
  12: {
    build: (cases) => ({
      title: "Fissile withdrawal flows",
      xLabel: "time (months)",
      yLabel: "fissile withdrawn (t per step)",
      series: lineSeries(cases, "fissile_withdrawn_kg", KG_PER_T),
    }),
  },
};

export function buildFigure(id: number, cases: CaseData[]): ChartSpec {
  const def = FIGURES[id];
  if (!def) {
    throw new Error(`unknown figure id ${id} (known: ${FIGURE_IDS.join(", ")})`);
  }
  const selected = def.filter ? cases.filter(def.filter) : cases;
  if (selected.length === 0) {
    throw new Error(`figure ${id}: no applicable cases`);
  }
  return def.build(selected);
}

export function renderFigure(id: number, cases: CaseData[]): string {
  return renderChart(buildFigure(id, cases));
}

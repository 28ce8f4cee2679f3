import { describe, expect, it } from "vitest";
import { discoverCases } from "../src/data.js";
import { FIGURE_IDS, buildFigure, renderFigure } from "../src/figures.js";
import { CASE_STYLES, renderChart, styleForCase, ticks } from "../src/svg.js";
import { makeSuiteDir } from "./fixtures.js";

const cases = discoverCases(makeSuiteDir());

describe("figure definitions", () => {
  it("renders every known figure id to SVG", () => {
    for (const id of FIGURE_IDS) {
      const svg = renderFigure(id, cases);
      expect(svg.startsWith("<svg ")).toBe(true);
      expect(svg.trimEnd().endsWith("</svg>")).toBe(true);
    }
  });

  it("excludes fleet cases from the wasted-batch figure", () => {
    const labels = buildFigure(7, cases).series.map((s) => s.label);
    expect(labels).toEqual(["MI", "QI"]);
  });

  it("includes all cases in power and inventory figures", () => {
    for (const id of [4, 5, 6, 11, 12]) {
      const labels = buildFigure(id, cases).series.map((s) => s.label);
      expect(labels).toEqual(["MI", "MF", "QI", "QF"]);
    }
  });

  it("pairs an inventory line and a withdrawal impulse per case in figure 8", () => {
    const spec = buildFigure(8, cases);
    const lines = spec.series.filter((s) => s.kind === "line");
    const impulses = spec.series.filter((s) => s.kind === "impulse");
    expect(lines.map((s) => s.label)).toEqual(["MI", "MF", "QI", "QF"]);
    expect(impulses.map((s) => s.label)).toEqual([
      "MI withdrawn",
      "MF withdrawn",
      "QI withdrawn",
      "QF withdrawn",
    ]);
  });

  it("uses months on the x axis so step lengths superimpose", () => {
    const spec = buildFigure(4, cases);
    const mi = spec.series.find((s) => s.label === "MI")!;
    const qi = spec.series.find((s) => s.label === "QI")!;
    expect(Math.max(...mi.x)).toBe(119);
    expect(Math.max(...qi.x)).toBe(117);
  });

  it("rejects unknown figure ids and empty case selections", () => {
    expect(() => buildFigure(9, cases)).toThrow(/unknown figure id/);
    const fleetOnly = cases.filter((c) => c.paradigm === "fleet");
    expect(() => buildFigure(7, fleetOnly)).toThrow(/no applicable cases/);
  });

  it("maps cumulative input to a monotone non-increasing SVG y path", () => {
    // figure 6 input is cumulative; in SVG coordinates larger values are
    // smaller y, so each polyline's y coordinates must never increase
    const svg = renderFigure(6, cases);
    const polys = [...svg.matchAll(/points="([^"]+)"/g)];
    expect(polys.length).toBe(4);
    for (const m of polys) {
      const ys = m[1].split(" ").map((p) => Number(p.split(",")[1]));
      for (let i = 1; i < ys.length; i++) {
        expect(ys[i]).toBeLessThanOrEqual(ys[i - 1] + 1e-9);
      }
    }
  });
});

describe("styles", () => {
  it("assigns each canonical case a fixed distinct color", () => {
    const colors = Object.values(CASE_STYLES).map((s) => s.color);
    expect(new Set(colors).size).toBe(4);
    expect(styleForCase("MI")).toEqual(CASE_STYLES.MI);
  });

  it("gives unknown case names a deterministic fallback style", () => {
    expect(styleForCase("MI_share")).toEqual(styleForCase("MI_share"));
  });
});

describe("chart scaffolding", () => {
  it("picks round tick values covering the range", () => {
    const t = ticks(0, 2400);
    expect(t[0]).toBe(0);
    expect(t).toContain(500);
    expect(t[t.length - 1]).toBeLessThanOrEqual(2400);
  });

  it("renders an empty-series chart without NaN coordinates", () => {
    const svg = renderChart({ title: "t", xLabel: "x", yLabel: "y", series: [] });
    expect(svg).not.toContain("NaN");
  });

  it("escapes markup in labels", () => {
    const svg = renderChart({
      title: "a<b & c",
      xLabel: "x",
      yLabel: "y",
      series: [],
    });
    expect(svg).toContain("a&lt;b &amp; c");
  });
});

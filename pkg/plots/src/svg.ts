// Minimal deterministic SVG chart renderer: line series plus optional
// vertical impulse series, shared x axis, nice-number ticks, legend.

export interface LineStyle {
  color: string;
  dash: string; // "" for solid, e.g. "6 3" for dashed
}

export interface Series {
  label: string;
  x: number[];
  y: number[];
  style: LineStyle;
  kind: "line" | "impulse";
}

export interface ChartSpec {
  title: string;
  xLabel: string;
  yLabel: string;
  series: Series[];
}

const W = 860;
const H = 480;
const MARGIN = { left: 76, right: 20, top: 44, bottom: 52 };

// Fixed per-case styles so every figure draws a given case the same way.
export const CASE_STYLES: Record<string, LineStyle> = {
  MI: { color: "#1f77b4", dash: "" },
  MF: { color: "#ff7f0e", dash: "6 3" },
  QI: { color: "#2ca02c", dash: "" },
  QF: { color: "#d62728", dash: "6 3" },
};

const FALLBACK_PALETTE = ["#9467bd", "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf"];

export function styleForCase(name: string): LineStyle {
  const fixed = CASE_STYLES[name];
  if (fixed) return fixed;
  // deterministic fallback: hash the name into the spare palette
  let h = 0;
  for (const ch of name) h = (h * 31 + ch.charCodeAt(0)) >>> 0;
  return { color: FALLBACK_PALETTE[h % FALLBACK_PALETTE.length], dash: "2 2" };
}

function niceStep(span: number, targetTicks: number): number {
  const raw = span / targetTicks;
  const mag = Math.pow(10, Math.floor(Math.log10(raw)));
  for (const m of [1, 2, 5, 10]) {
    if (raw <= m * mag) return m * mag;
  }
  return 10 * mag;
}

export function ticks(min: number, max: number, target = 6): number[] {
  if (!(max > min)) return [min];
  const step = niceStep(max - min, target);
  const out: number[] = [];
  for (let v = Math.ceil(min / step) * step; v <= max + step * 1e-9; v += step) {
    out.push(Math.abs(v) < step * 1e-9 ? 0 : v);
  }
  return out;
}

function fmtTick(v: number): string {
  if (v === 0) return "0";
  const a = Math.abs(v);
  if (a >= 1e6 || a < 1e-3) return v.toExponential(1);
  return Number(v.toPrecision(6)).toString();
}

function esc(s: string): string {
  return s.replace(/&/g, "&amp;").replace(/</g, "&lt;").replace(/>/g, "&gt;");
}

export function renderChart(spec: ChartSpec): string {
  let xMin = Infinity;
  let xMax = -Infinity;
  let yMin = 0; // charts are anchored at zero: all plotted quantities are non-negative
  let yMax = -Infinity;
  for (const s of spec.series) {
    for (const v of s.x) {
      if (v < xMin) xMin = v;
      if (v > xMax) xMax = v;
    }
    for (const v of s.y) {
      if (v < yMin) yMin = v;
      if (v > yMax) yMax = v;
    }
  }
  if (!Number.isFinite(xMin)) {
    xMin = 0;
    xMax = 1;
  }
  if (!Number.isFinite(yMax) || yMax <= yMin) yMax = yMin + 1;

  const plotW = W - MARGIN.left - MARGIN.right;
  const plotH = H - MARGIN.top - MARGIN.bottom;
  const sx = (v: number) => MARGIN.left + ((v - xMin) / (xMax - xMin)) * plotW;
  const sy = (v: number) => MARGIN.top + plotH - ((v - yMin) / (yMax - yMin)) * plotH;
  const f = (v: number) => v.toFixed(2);

  const parts: string[] = [];
  parts.push(
    `<svg xmlns="http://www.w3.org/2000/svg" width="${W}" height="${H}" viewBox="0 0 ${W} ${H}" font-family="sans-serif" font-size="12">`
  );
  parts.push(`<rect width="${W}" height="${H}" fill="white"/>`);
  parts.push(
    `<text x="${W / 2}" y="22" text-anchor="middle" font-size="15">${esc(spec.title)}</text>`
  );

  for (const v of ticks(xMin, xMax)) {
    const x = f(sx(v));
    parts.push(
      `<line x1="${x}" y1="${MARGIN.top}" x2="${x}" y2="${MARGIN.top + plotH}" stroke="#ddd"/>`,
      `<text x="${x}" y="${MARGIN.top + plotH + 18}" text-anchor="middle">${fmtTick(v)}</text>`
    );
  }
  for (const v of ticks(yMin, yMax)) {
    const y = f(sy(v));
    parts.push(
      `<line x1="${MARGIN.left}" y1="${y}" x2="${MARGIN.left + plotW}" y2="${y}" stroke="#ddd"/>`,
      `<text x="${MARGIN.left - 8}" y="${y}" text-anchor="end" dominant-baseline="middle">${fmtTick(v)}</text>`
    );
  }
  parts.push(
    `<rect x="${MARGIN.left}" y="${MARGIN.top}" width="${plotW}" height="${plotH}" fill="none" stroke="#333"/>`,
    `<text x="${MARGIN.left + plotW / 2}" y="${H - 14}" text-anchor="middle">${esc(spec.xLabel)}</text>`,
    `<text x="20" y="${MARGIN.top + plotH / 2}" text-anchor="middle" transform="rotate(-90 20 ${MARGIN.top + plotH / 2})">${esc(spec.yLabel)}</text>`
  );

  for (const s of spec.series) {
    const dash = s.style.dash ? ` stroke-dasharray="${s.style.dash}"` : "";
    if (s.kind === "line") {
      const pts = s.x.map((xv, i) => `${f(sx(xv))},${f(sy(s.y[i]))}`).join(" ");
      parts.push(
        `<polyline data-series="${esc(s.label)}" points="${pts}" fill="none" stroke="${s.style.color}" stroke-width="1.5"${dash}/>`
      );
    } else {
      const y0 = f(sy(yMin));
      const segs: string[] = [];
      for (let i = 0; i < s.x.length; i++) {
        if (s.y[i] <= yMin) continue;
        const x = f(sx(s.x[i]));
        segs.push(`M${x} ${y0}L${x} ${f(sy(s.y[i]))}`);
      }
      parts.push(
        `<path data-series="${esc(s.label)}" d="${segs.join("")}" fill="none" stroke="${s.style.color}" stroke-width="1" opacity="0.7"/>`
      );
    }
  }

  let ly = MARGIN.top + 10;
  for (const s of spec.series) {
    const dash = s.style.dash ? ` stroke-dasharray="${s.style.dash}"` : "";
    parts.push(
      `<line x1="${MARGIN.left + plotW - 130}" y1="${ly}" x2="${MARGIN.left + plotW - 100}" y2="${ly}" stroke="${s.style.color}" stroke-width="2"${dash}/>`,
      `<text x="${MARGIN.left + plotW - 94}" y="${ly + 4}">${esc(s.label)}</text>`
    );
    ly += 18;
  }

  parts.push("</svg>");
  return parts.join("\n") + "\n";
}

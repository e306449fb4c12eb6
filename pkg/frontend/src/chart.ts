/**
 * Deterministic SVG line charts: time-series overlays and log-log
 * convergence plots.  Pure string assembly, so identical inputs produce
 * byte-identical figures.
 */

export interface Series {
  label: string;
  x: number[];
  y: number[];
  color?: string;
}

export interface ChartSpec {
  title: string;
  xLabel: string;
  yLabel: string;
  series: Series[];
  logX?: boolean;
  logY?: boolean;
  markers?: boolean;
}

const W = 720;
const H = 420;
const ML = 64;
const MR = 16;
const MT = 40;
const MB = 48;
const PALETTE = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#17becf"];

function esc(s: string): string {
  return s.replace(/&/g, "&amp;").replace(/</g, "&lt;").replace(/>/g, "&gt;");
}

export function niceTicks(min: number, max: number, count: number): number[] {
  const range = max - min || 1;
  const rough = range / count;
  const mag = Math.pow(10, Math.floor(Math.log10(rough)));
  const step = [1, 2, 5, 10].map((m) => m * mag).find((n) => n >= rough) ?? rough;
  const start = Math.ceil(min / step) * step;
  const ticks: number[] = [];
  for (let v = start; v <= max + step * 1e-9; v += step) ticks.push(v);
  return ticks;
}

function logTicks(min: number, max: number): number[] {
  const ticks: number[] = [];
  for (let e = Math.floor(Math.log10(min)); e <= Math.ceil(Math.log10(max)); e++) {
    ticks.push(Math.pow(10, e));
  }
  return ticks;
}

function fmt(v: number): string {
  if (v === 0) return "0";
  const a = Math.abs(v);
  if (a >= 1e4 || a < 1e-3) return v.toExponential(0);
  return String(Math.round(v * 1e6) / 1e6);
}

export function buildChart(spec: ChartSpec): string {
  if (spec.series.length === 0) {
    throw new Error("MissingInput: no series to plot");
  }
  const pw = W - ML - MR;
  const ph = H - MT - MB;
  const tx = (v: number) => (spec.logX ? Math.log10(v) : v);
  const ty = (v: number) => (spec.logY ? Math.log10(v) : v);

  const xsAll = spec.series.flatMap((s) => s.x.map(tx));
  const ysAll = spec.series.flatMap((s) => s.y.map(ty)).filter((v) => Number.isFinite(v));
  if (ysAll.length === 0) throw new Error("MissingInput: series contain no finite values");
  let xMin = Math.min(...xsAll);
  let xMax = Math.max(...xsAll);
  let yMin = Math.min(...ysAll);
  let yMax = Math.max(...ysAll);
  if (xMax === xMin) {
    xMin -= 0.5;
    xMax += 0.5;
  }
  if (yMax === yMin) {
    yMin -= 0.5;
    yMax += 0.5;
  }
  const pad = 0.04 * (yMax - yMin);
  yMin -= pad;
  yMax += pad;
  const xOf = (v: number) => ML + ((tx(v) - xMin) / (xMax - xMin)) * pw;
  const yOf = (v: number) => MT + ph - ((ty(v) - yMin) / (yMax - yMin)) * ph;

  let s = `<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 ${W} ${H}" font-family="Helvetica, Arial, sans-serif">\n`;
  s += `<rect width="${W}" height="${H}" fill="#ffffff"/>\n`;
  s += `<text x="${ML}" y="${MT - 18}" font-size="14" font-weight="600" fill="#222">${esc(spec.title)}</text>\n`;

  const xTicks = spec.logX
    ? logTicks(Math.pow(10, xMin), Math.pow(10, xMax))
    : niceTicks(xMin, xMax, 8);
  const yTicks = spec.logY
    ? logTicks(Math.pow(10, yMin), Math.pow(10, yMax))
    : niceTicks(yMin, yMax, 6);
  for (const v of yTicks) {
    const y = MT + ph - ((ty(v) - yMin) / (yMax - yMin)) * ph;
    if (y < MT - 1 || y > MT + ph + 1) continue;
    s += `<line x1="${ML}" y1="${y.toFixed(1)}" x2="${ML + pw}" y2="${y.toFixed(1)}" stroke="#e6e6e6" stroke-width="0.6"/>\n`;
    s += `<text x="${ML - 6}" y="${(y + 3).toFixed(1)}" font-size="10" fill="#555" text-anchor="end">${fmt(v)}</text>\n`;
  }
  for (const v of xTicks) {
    const x = ML + ((tx(v) - xMin) / (xMax - xMin)) * pw;
    if (x < ML - 1 || x > ML + pw + 1) continue;
    s += `<line x1="${x.toFixed(1)}" y1="${MT}" x2="${x.toFixed(1)}" y2="${MT + ph}" stroke="#e6e6e6" stroke-width="0.6"/>\n`;
    s += `<text x="${x.toFixed(1)}" y="${MT + ph + 16}" font-size="10" fill="#555" text-anchor="middle">${fmt(v)}</text>\n`;
  }
  s += `<rect x="${ML}" y="${MT}" width="${pw}" height="${ph}" fill="none" stroke="#999" stroke-width="0.8"/>\n`;
  s += `<text x="${ML + pw / 2}" y="${H - 12}" font-size="11" fill="#333" text-anchor="middle">${esc(spec.xLabel)}</text>\n`;
  s += `<text x="16" y="${MT + ph / 2}" font-size="11" fill="#333" text-anchor="middle" transform="rotate(-90 16 ${MT + ph / 2})">${esc(spec.yLabel)}</text>\n`;

  spec.series.forEach((sr, i) => {
    const color = sr.color ?? PALETTE[i % PALETTE.length];
    const pts = sr.x
      .map((xv, j) => `${xOf(xv).toFixed(2)},${yOf(sr.y[j]).toFixed(2)}`)
      .join(" ");
    if (sr.x.length > 1) {
      s += `<polyline fill="none" stroke="${color}" stroke-width="1.4" points="${pts}"/>\n`;
    }
    if (spec.markers || sr.x.length === 1) {
      for (let j = 0; j < sr.x.length; j++) {
        s += `<circle cx="${xOf(sr.x[j]).toFixed(2)}" cy="${yOf(sr.y[j]).toFixed(2)}" r="2.5" fill="${color}"/>\n`;
      }
    }
    const ly = MT + 14 + i * 14;
    s += `<line x1="${ML + pw - 110}" y1="${ly - 3}" x2="${ML + pw - 90}" y2="${ly - 3}" stroke="${color}" stroke-width="2"/>\n`;
    s += `<text x="${ML + pw - 84}" y="${ly}" font-size="10" fill="#333">${esc(sr.label)}</text>\n`;
  });
  s += "</svg>\n";
  return s;
}

import { column, requireColumns, Table } from "../csv.js";
import { linearScale, ticks } from "../scale.js";
import { drawFrame, SvgDoc } from "../svg.js";

export interface HistogramOptions {
  metric: "f" | "e_max" | "m" | "s";
  bins?: number;
  logScale?: boolean;
}

export interface HistogramMeta {
  kind: "mc_histogram";
  metric: string;
  edges: number[];
  counts: number[];
  refValue: number;
  /** pixel abscissa of the reference line inside the rendered figure */
  refX: number;
  /** pixel x-extent of the plot area, for locating data coordinates */
  plotX: [number, number];
  transformed: boolean;
}

function quantileSorted(sorted: number[], q: number): number {
  const pos = q * (sorted.length - 1);
  const base = Math.floor(pos);
  const rest = pos - base;
  return sorted[base] + rest * ((sorted[Math.min(base + 1, sorted.length - 1)] ?? sorted[base]) - sorted[base]);
}

/** Freedman-Diaconis bin count, clamped to [4, 80]. */
export function freedmanDiaconisBins(values: number[]): number {
  const sorted = [...values].sort((a, b) => a - b);
  const iqr = quantileSorted(sorted, 0.75) - quantileSorted(sorted, 0.25);
  const span = sorted[sorted.length - 1] - sorted[0];
  if (iqr === 0 || span === 0) return 10;
  const width = (2 * iqr) / Math.cbrt(values.length);
  return Math.max(4, Math.min(80, Math.ceil(span / width)));
}

/**
 * Histogram of one MC metric with the noise-free reference drawn as a
 * vertical line at its value.  With logScale the data and the reference are
 * binned in log10 units.
 */
export function renderMcHistogram(
  table: Table,
  reference: Table,
  opts: HistogramOptions,
): { svg: string; meta: HistogramMeta } {
  requireColumns(table, [opts.metric]);
  requireColumns(reference, [opts.metric]);
  if (reference.rows.length !== 1) {
    throw new Error(`reference table must hold exactly one row, got ${reference.rows.length}`);
  }
  const transform = opts.logScale ?? false;
  const raw = column(table, opts.metric).filter((v) => Number.isFinite(v));
  if (raw.length === 0) throw new Error("no finite values to bin");
  const values = transform ? raw.filter((v) => v > 0).map(Math.log10) : raw;
  const refRaw = column(reference, opts.metric)[0];
  const refValue = transform ? Math.log10(refRaw) : refRaw;

  const nBins = opts.bins ?? freedmanDiaconisBins(values);
  let lo = Math.min(...values, refValue);
  let hi = Math.max(...values, refValue);
  if (lo === hi) {
    lo -= 0.5;
    hi += 0.5;
  }
  const edges = Array.from({ length: nBins + 1 }, (_, k) => lo + ((hi - lo) * k) / nBins);
  const counts = new Array(nBins).fill(0);
  for (const v of values) {
    const k = Math.min(nBins - 1, Math.floor(((v - lo) / (hi - lo)) * nBins));
    counts[k] += 1;
  }

  const width = 560;
  const height = 340;
  const margin = { top: 20, right: 20, bottom: 45, left: 60 };
  const plotW = width - margin.left - margin.right;
  const plotH = height - margin.top - margin.bottom;
  const doc = new SvgDoc(width, height);

  const x = linearScale([lo, hi], [margin.left, margin.left + plotW]);
  const y = linearScale([0, Math.max(...counts)], [margin.top + plotH, margin.top]);
  for (let k = 0; k < nBins; k++) {
    const x0 = x(edges[k]);
    const x1 = x(edges[k + 1]);
    doc.rect(x0, y(counts[k]), x1 - x0 - 0.5, margin.top + plotH - y(counts[k]),
      "#1f77b4");
  }
  const refX = x(refValue);
  doc.line(refX, margin.top, refX, margin.top + plotH, "red", 2);

  const label = transform ? `log10 ${opts.metric}` : opts.metric;
  drawFrame(doc, margin, plotW, plotH,
    ticks(lo, hi, 5).map((v) => ({ value: v, label: String(Number(v.toPrecision(3))) })),
    ticks(0, Math.max(...counts), 4).map((v) => ({ value: v, label: String(Math.round(v)) })),
    x, y, label, "runs");

  return {
    svg: doc.toString(),
    meta: { kind: "mc_histogram", metric: opts.metric, edges, counts, refValue,
            refX, plotX: [margin.left, margin.left + plotW], transformed: transform },
  };
}

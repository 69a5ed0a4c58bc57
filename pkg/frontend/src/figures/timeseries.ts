import { column, requireColumns, Table } from "../csv.js";
import { extent, linearScale, ticks } from "../scale.js";
import { drawFrame, SvgDoc } from "../svg.js";

const SERIES_COLORS = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd"];

export interface TimeseriesMeta {
  kind: "timeseries" | "phase_diff";
  columns: string[];
  points: number;
  tRange: [number, number];
}

export interface TimeseriesOptions {
  columns?: string[];
  tMin?: number;
  tMax?: number;
  maxPoints?: number;
  /** plot first differences of the (single) column instead of values */
  firstDifference?: boolean;
}

/** Select a time window and decimate to a renderable number of points. */
export function windowed(
  t: number[],
  series: number[][],
  opts: TimeseriesOptions,
): { t: number[]; series: number[][] } {
  const tMin = opts.tMin ?? t[0];
  const tMax = opts.tMax ?? t[t.length - 1];
  const idx: number[] = [];
  for (let i = 0; i < t.length; i++) {
    if (t[i] >= tMin && t[i] <= tMax) idx.push(i);
  }
  if (idx.length < 2) throw new Error(`time window [${tMin}, ${tMax}] selects <2 samples`);
  const stride = Math.max(1, Math.floor(idx.length / (opts.maxPoints ?? 4000)));
  const keep = idx.filter((_, k) => k % stride === 0);
  return { t: keep.map((i) => t[i]), series: series.map((s) => keep.map((i) => s[i])) };
}

export function renderTimeseries(
  table: Table,
  opts: TimeseriesOptions = {},
): { svg: string; meta: TimeseriesMeta } {
  const firstDiff = opts.firstDifference ?? false;
  const names = opts.columns ?? (firstDiff ? ["e"] : ["v_d", "v_c"]);
  requireColumns(table, ["t", ...names]);
  let t = column(table, "t");
  let series = names.map((name) => column(table, name));

  if (firstDiff) {
    if (series.length !== 1) throw new Error("first-difference plots take exactly one column");
    series = [series[0].slice(1).map((v, i) => v - series[0][i])];
    t = t.slice(1);
  }
  ({ t, series } = windowed(t, series, opts));

  const width = 640;
  const height = 320;
  const margin = { top: 20, right: 20, bottom: 45, left: 65 };
  const plotW = width - margin.left - margin.right;
  const plotH = height - margin.top - margin.bottom;
  const doc = new SvgDoc(width, height);

  const x = linearScale([t[0], t[t.length - 1]], [margin.left, margin.left + plotW]);
  const [lo, hi] = extent(series.flat());
  const y = linearScale([lo, hi], [margin.top + plotH, margin.top]);

  series.forEach((s, k) => {
    doc.polyline(t.map((tv, i) => [x(tv), y(s[i])] as [number, number]),
      SERIES_COLORS[k % SERIES_COLORS.length]);
  });
  drawFrame(doc, margin, plotW, plotH,
    ticks(t[0], t[t.length - 1]).map((v) => ({ value: v, label: String(Number(v.toPrecision(6))) })),
    ticks(lo, hi).map((v) => ({ value: v, label: String(Number(v.toPrecision(3))) })),
    x, y, "t (s)", firstDiff ? `diff ${names[0]}` : names.join(", "));
  // legend
  series.forEach((_, k) => {
    const lx = margin.left + plotW - 90;
    const ly = margin.top + 14 + 14 * k;
    doc.line(lx, ly - 4, lx + 18, ly - 4, SERIES_COLORS[k % SERIES_COLORS.length], 2);
    doc.text(lx + 24, ly, names[k], 10, "start");
  });

  return {
    svg: doc.toString(),
    meta: {
      kind: firstDiff ? "phase_diff" : "timeseries",
      columns: names,
      points: t.length,
      tRange: [t[0], t[t.length - 1]],
    },
  };
}

import { sweepGrid, Table } from "../csv.js";
import { linearScale, METRIC_COLOR_LIMITS, ticks, viridis } from "../scale.js";
import { drawFrame, SvgDoc } from "../svg.js";

export interface SweepOptions {
  metric: "f" | "m" | "s";
  colorLimits?: [number, number];
}

export interface TopviewMeta {
  kind: "sweep_topview";
  metric: string;
  omega: number[];
  gain: number[];
  /** log10 of the metric per cell, [omega index][gain index] */
  logValues: number[][];
  colorLimits: [number, number];
}

export interface SurfaceMeta {
  kind: "sweep_surface";
  metric: string;
  quads: number;
  colorLimits: [number, number];
}

function logGrid(table: Table, metric: string): { omega: number[]; gain: number[]; logValues: number[][] } {
  const { omega, gain, values } = sweepGrid(table, metric);
  // +inf (diverged / undefined ratio) stays +inf and renders as "worst"
  const logValues = values.map((row) => row.map((v) => Math.log10(v)));
  return { omega, gain, logValues };
}

function limitsFor(metric: string, override?: [number, number]): [number, number] {
  return override ?? METRIC_COLOR_LIMITS[metric] ?? [-8, 2];
}

/** 2D heat map of log10(metric) over the (omega_i, gain) grid. */
export function renderSweepTopview(
  table: Table,
  opts: SweepOptions,
): { svg: string; meta: TopviewMeta } {
  const { omega, gain, logValues } = logGrid(table, opts.metric);
  const [vLo, vHi] = limitsFor(opts.metric, opts.colorLimits);

  const width = 620;
  const height = 460;
  const margin = { top: 20, right: 90, bottom: 45, left: 65 };
  const plotW = width - margin.left - margin.right;
  const plotH = height - margin.top - margin.bottom;
  const doc = new SvgDoc(width, height);

  const cellW = plotW / omega.length;
  const cellH = plotH / gain.length;
  const color = (v: number) => viridis(1 - (v - vLo) / (vHi - vLo)); // low metric = bright
  for (let i = 0; i < omega.length; i++) {
    for (let j = 0; j < gain.length; j++) {
      doc.rect(margin.left + i * cellW,
        margin.top + plotH - (j + 1) * cellH,
        cellW + 0.5, cellH + 0.5, color(logValues[i][j]));
    }
  }

  const x = linearScale([omega[0], omega[omega.length - 1]],
    [margin.left + cellW / 2, margin.left + plotW - cellW / 2]);
  const y = linearScale([gain[0], gain[gain.length - 1]],
    [margin.top + plotH - cellH / 2, margin.top + cellH / 2]);
  drawFrame(doc, margin, plotW, plotH,
    ticks(omega[0], omega[omega.length - 1], 5).map((v) => ({ value: v, label: v.toFixed(1) })),
    ticks(gain[0], gain[gain.length - 1], 5).map((v) => ({ value: v, label: v.toFixed(1) })),
    x, y, "omega_i (rad/s)", "K_d = K_v");

  // color bar
  const barX = width - margin.right + 20;
  const steps = 60;
  for (let k = 0; k < steps; k++) {
    const v = vLo + ((k + 0.5) / steps) * (vHi - vLo);
    const yPix = margin.top + plotH - ((k + 1) / steps) * plotH;
    doc.rect(barX, yPix, 14, plotH / steps + 0.5, color(v));
  }
  for (const tv of ticks(vLo, vHi, 5)) {
    const yPix = margin.top + plotH - ((tv - vLo) / (vHi - vLo)) * plotH;
    doc.text(barX + 20, yPix + 3, tv.toFixed(0), 9, "start");
  }
  doc.text(barX + 7, margin.top - 6, `log10 ${opts.metric}`, 10);

  return {
    svg: doc.toString(),
    meta: { kind: "sweep_topview", metric: opts.metric, omega, gain, logValues,
            colorLimits: [vLo, vHi] },
  };
}

/** Isometric 3D surface of log10(metric); painter's order back to front. */
export function renderSweepSurface(
  table: Table,
  opts: SweepOptions,
): { svg: string; meta: SurfaceMeta } {
  const { omega, gain, logValues } = logGrid(table, opts.metric);
  const [vLo, vHi] = limitsFor(opts.metric, opts.colorLimits);
  const clamp = (v: number) => Math.min(vHi, Math.max(vLo, Number.isNaN(v) ? vLo : v));

  const width = 640;
  const height = 480;
  const doc = new SvgDoc(width, height);

  const nI = omega.length;
  const nJ = gain.length;
  const sx = (width - 120) / (nI + nJ);
  const sy = sx * 0.5;
  const zPix = 180 / (vHi - vLo);
  const originX = 70 + nJ * sx;
  const originY = 210;

  const project = (i: number, j: number, v: number): [number, number] => [
    originX + (i - j) * sx,
    originY + (i + j) * sy - (clamp(v) - vLo) * zPix,
  ];

  // depth = i + j; draw far cells first so near quads overpaint them
  const quads: { depth: number; pts: [number, number][]; v: number }[] = [];
  for (let i = 0; i < nI - 1; i++) {
    for (let j = 0; j < nJ - 1; j++) {
      quads.push({
        depth: i + j,
        v: (clamp(logValues[i][j]) + clamp(logValues[i + 1][j])
          + clamp(logValues[i][j + 1]) + clamp(logValues[i + 1][j + 1])) / 4,
        pts: [
          project(i, j, logValues[i][j]),
          project(i + 1, j, logValues[i + 1][j]),
          project(i + 1, j + 1, logValues[i + 1][j + 1]),
          project(i, j + 1, logValues[i][j + 1]),
        ],
      });
    }
  }
  quads.sort((a, b) => a.depth - b.depth);
  const color = (v: number) => viridis(1 - (v - vLo) / (vHi - vLo));
  for (const q of quads) {
    doc.polygon(q.pts, color(q.v), "#444");
  }
  doc.text(width / 2, height - 12,
    `log10 ${opts.metric} over (omega_i, K); omega_i ${omega[0]}..${omega[nI - 1]}, K ${gain[0]}..${gain[nJ - 1]}`,
    11);

  return {
    svg: doc.toString(),
    meta: { kind: "sweep_surface", metric: opts.metric, quads: quads.length,
            colorLimits: [vLo, vHi] },
  };
}

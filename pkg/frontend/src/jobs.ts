/**
 * Figure jobs: a declarative description of one rendered image, dispatched to
 * the per-kind renderers.  Jobs come in as a JSON list (see cli.ts).
 *
 * Beyond log10 transforms, histogram binning and the first differences that
 * define the phase_diff kind, no numbers are computed here — everything
 * scientific comes from the simulation CSVs.
 */

import { mkdirSync, writeFileSync } from "node:fs";
import { dirname } from "node:path";

import { readCsv } from "./csv.js";
import { BodeMeta, renderBode } from "./figures/bode.js";
import { HistogramMeta, renderMcHistogram } from "./figures/histogram.js";
import { LissajousMeta, renderLissajous } from "./figures/lissajous.js";
import {
  renderSweepSurface,
  renderSweepTopview,
  SurfaceMeta,
  TopviewMeta,
} from "./figures/sweep.js";
import { renderTimeseries, TimeseriesMeta } from "./figures/timeseries.js";

export const FIGURE_KINDS = [
  "bode",
  "timeseries",
  "lissajous",
  "phase_diff",
  "sweep_surface",
  "sweep_topview",
  "mc_histogram",
] as const;

export type FigureKind = (typeof FIGURE_KINDS)[number];

export interface FigureJob {
  kind: FigureKind;
  /** main input CSV */
  input: string;
  /** mc_ref.csv, required for mc_histogram */
  reference?: string;
  /** metric column for sweep and histogram kinds */
  metric?: "f" | "e_max" | "m" | "s";
  /** output image path (.svg) */
  output: string;
  logScale?: boolean;
  colorLimits?: [number, number];
  bins?: number;
  columns?: string[];
  tMin?: number;
  tMax?: number;
}

export type FigureMeta =
  | BodeMeta
  | TimeseriesMeta
  | LissajousMeta
  | TopviewMeta
  | SurfaceMeta
  | HistogramMeta;

export interface RenderResult {
  svg: string;
  meta: FigureMeta;
}

const SWEEP_METRICS = new Set(["f", "m", "s"]);

export function validateJob(job: FigureJob): void {
  if (!FIGURE_KINDS.includes(job.kind)) {
    throw new Error(`unknown figure kind ${JSON.stringify(job.kind)}`);
  }
  if (!job.input) throw new Error("job needs an input CSV path");
  if (!job.output) throw new Error("job needs an output image path");
  if (job.kind === "sweep_surface" || job.kind === "sweep_topview") {
    if (!job.metric || !SWEEP_METRICS.has(job.metric)) {
      throw new Error(`sweep figures need metric one of f, m, s; got ${job.metric}`);
    }
  }
  if (job.kind === "mc_histogram") {
    if (!job.metric) throw new Error("mc_histogram needs a metric column");
    if (!job.reference) throw new Error("mc_histogram needs the reference CSV");
  }
}

export function renderToString(job: FigureJob): RenderResult {
  validateJob(job);
  const table = readCsv(job.input);
  switch (job.kind) {
    case "bode":
      return renderBode(table);
    case "timeseries":
      return renderTimeseries(table, { columns: job.columns, tMin: job.tMin, tMax: job.tMax });
    case "phase_diff":
      return renderTimeseries(table, {
        columns: job.columns ?? ["e"], tMin: job.tMin, tMax: job.tMax,
        firstDifference: true,
      });
    case "lissajous":
      return renderLissajous(table, { tMin: job.tMin, tMax: job.tMax });
    case "sweep_topview":
      return renderSweepTopview(table, { metric: job.metric as "f" | "m" | "s", colorLimits: job.colorLimits });
    case "sweep_surface":
      return renderSweepSurface(table, { metric: job.metric as "f" | "m" | "s", colorLimits: job.colorLimits });
    case "mc_histogram":
      return renderMcHistogram(table, readCsv(job.reference!), {
        metric: job.metric!, bins: job.bins, logScale: job.logScale,
      });
  }
}

/** Render one job and write its SVG; returns the renderer metadata. */
export function render(job: FigureJob): RenderResult {
  const result = renderToString(job);
  mkdirSync(dirname(job.output), { recursive: true });
  writeFileSync(job.output, result.svg, "utf8");
  return result;
}

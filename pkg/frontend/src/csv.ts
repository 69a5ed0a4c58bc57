/**
 * Reader for the simulation CSV bundles. All files are plain comma-separated
 * tables with a single header row; values are numbers (possibly inf/-inf/nan)
 * or the booleans true/false.
 */

import { readFileSync } from "node:fs";

export type Cell = number | boolean;

export interface Table {
  columns: string[];
  rows: Cell[][];
}

function parseCell(raw: string): Cell {
  if (raw === "true") return true;
  if (raw === "false") return false;
  if (raw === "inf") return Infinity;
  if (raw === "-inf") return -Infinity;
  if (raw === "nan") return NaN;
  const value = Number(raw);
  if (Number.isNaN(value) && raw !== "nan") {
    throw new Error(`unparseable cell ${JSON.stringify(raw)}`);
  }
  return value;
}

export function parseCsv(text: string): Table {
  const lines = text.split("\n").filter((line) => line.length > 0);
  if (lines.length < 2) {
    throw new Error("CSV needs a header row and at least one data row");
  }
  const columns = lines[0].split(",");
  const rows = lines.slice(1).map((line, i) => {
    const parts = line.split(",");
    if (parts.length !== columns.length) {
      throw new Error(`row ${i + 1} has ${parts.length} fields, expected ${columns.length}`);
    }
    return parts.map(parseCell);
  });
  return { columns, rows };
}

export function readCsv(path: string): Table {
  return parseCsv(readFileSync(path, "utf8"));
}

/** Numeric column by name; booleans coerce to 0/1. */
export function column(table: Table, name: string): number[] {
  const idx = table.columns.indexOf(name);
  if (idx < 0) {
    throw new Error(`missing column ${JSON.stringify(name)}; have ${table.columns.join(", ")}`);
  }
  return table.rows.map((row) => Number(row[idx]));
}

export function requireColumns(table: Table, names: string[]): void {
  for (const name of names) {
    if (!table.columns.includes(name)) {
      throw new Error(`missing column ${JSON.stringify(name)}; have ${table.columns.join(", ")}`);
    }
  }
}

export interface Grid {
  /** ascending unique omega_i values (rows) */
  omega: number[];
  /** ascending unique gain values (columns) */
  gain: number[];
  /** values[i][j] for (omega[i], gain[j]) */
  values: number[][];
}

/**
 * Reshape a sweep table into a complete rectangular grid of one metric.
 * Throws if any (omega_i, gain) combination is missing or duplicated.
 */
export function sweepGrid(table: Table, metric: string): Grid {
  requireColumns(table, ["omega_i", "gain", metric]);
  const omegaCol = column(table, "omega_i");
  const gainCol = column(table, "gain");
  const valueCol = column(table, metric);

  const omega = [...new Set(omegaCol)].sort((a, b) => a - b);
  const gain = [...new Set(gainCol)].sort((a, b) => a - b);
  if (omega.length * gain.length !== table.rows.length) {
    throw new Error(
      `ragged grid: ${table.rows.length} rows != ${omega.length} x ${gain.length}`,
    );
  }
  const oIndex = new Map(omega.map((v, i) => [v, i]));
  const gIndex = new Map(gain.map((v, i) => [v, i]));
  const values: (number | undefined)[][] = omega.map(() => gain.map(() => undefined));
  for (let r = 0; r < table.rows.length; r++) {
    const i = oIndex.get(omegaCol[r])!;
    const j = gIndex.get(gainCol[r])!;
    if (values[i][j] !== undefined) {
      throw new Error(`duplicate grid cell at omega_i=${omegaCol[r]}, gain=${gainCol[r]}`);
    }
    values[i][j] = valueCol[r];
  }
  for (let i = 0; i < omega.length; i++) {
    for (let j = 0; j < gain.length; j++) {
      if (values[i][j] === undefined) {
        throw new Error(`ragged grid: missing cell at omega_i=${omega[i]}, gain=${gain[j]}`);
      }
    }
  }
  return { omega, gain, values: values as number[][] };
}

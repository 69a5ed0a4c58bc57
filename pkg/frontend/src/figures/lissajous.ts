import { column, requireColumns, Table } from "../csv.js";
import { extent, linearScale, ticks } from "../scale.js";
import { drawFrame, SvgDoc } from "../svg.js";
import { TimeseriesOptions, windowed } from "./timeseries.js";

export interface LissajousMeta {
  kind: "lissajous";
  points: number;
}

/** Parametric plot of the node output z1 against the input u. */
export function renderLissajous(
  table: Table,
  opts: TimeseriesOptions = {},
): { svg: string; meta: LissajousMeta } {
  requireColumns(table, ["t", "u", "z1"]);
  const { series } = windowed(column(table, "t"),
    [column(table, "u"), column(table, "z1")], { maxPoints: 20000, ...opts });
  const [u, z1] = series;

  const size = 420;
  const margin = { top: 20, right: 20, bottom: 45, left: 60 };
  const plot = size - margin.top - margin.bottom;
  const doc = new SvgDoc(size + margin.left - margin.top, size);

  const [uLo, uHi] = extent(u);
  const [zLo, zHi] = extent(z1);
  const x = linearScale([uLo, uHi], [margin.left, margin.left + plot]);
  const y = linearScale([zLo, zHi], [margin.top + plot, margin.top]);

  doc.polyline(u.map((uv, i) => [x(uv), y(z1[i])] as [number, number]), "#1f77b4", 0.6);
  drawFrame(doc, margin, plot, plot,
    ticks(uLo, uHi, 4).map((v) => ({ value: v, label: v.toFixed(2) })),
    ticks(zLo, zHi, 4).map((v) => ({ value: v, label: v.toFixed(2) })),
    x, y, "u", "z1");

  return { svg: doc.toString(), meta: { kind: "lissajous", points: u.length } };
}

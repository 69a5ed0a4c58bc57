import { column, requireColumns, Table } from "../csv.js";
import { linearScale, logScale, ticks } from "../scale.js";
import { drawFrame, SvgDoc } from "../svg.js";

export interface BodeMeta {
  kind: "bode";
  points: number;
}

/** Two stacked panels: |F| on a log-log grid, arg F on a semilog grid. */
export function renderBode(table: Table): { svg: string; meta: BodeMeta } {
  requireColumns(table, ["omega", "magnitude", "phase"]);
  const omega = column(table, "omega");
  const mag = column(table, "magnitude");
  const phase = column(table, "phase");

  const width = 560;
  const panelH = 200;
  const margin = { top: 20, right: 20, bottom: 45, left: 60 };
  const plotW = width - margin.left - margin.right;
  const doc = new SvgDoc(width, margin.top + 2 * panelH + 70 + margin.bottom);

  const x = logScale([omega[0], omega[omega.length - 1]], [margin.left, margin.left + plotW]);
  const decades: { value: number; label: string }[] = [];
  for (let e = Math.ceil(Math.log10(omega[0])); e <= Math.floor(Math.log10(omega[omega.length - 1])); e++) {
    decades.push({ value: 10 ** e, label: `1e${e}` });
  }

  // magnitude panel (log10 of magnitude on a linear pixel scale)
  const magLog = mag.map((v) => Math.log10(v));
  const magLo = Math.min(...magLog);
  const magHi = Math.max(...magLog);
  const yMag = linearScale([magLo, magHi], [margin.top + panelH, margin.top]);
  doc.polyline(omega.map((w, i) => [x(w), yMag(magLog[i])] as [number, number]));
  drawFrame(doc, margin, plotW, panelH,
    decades, ticks(magLo, magHi, 4).map((v) => ({ value: v, label: v.toFixed(1) })),
    x, yMag, "", "log10 |F|");

  // phase panel
  const phTop = margin.top + panelH + 70;
  const phLo = Math.min(...phase);
  const phHi = Math.max(...phase);
  const yPh = linearScale([phLo, phHi], [phTop + panelH, phTop]);
  doc.polyline(omega.map((w, i) => [x(w), yPh(phase[i])] as [number, number]), "#d62728");
  drawFrame(doc, { ...margin, top: phTop }, plotW, panelH,
    decades, ticks(phLo, phHi, 4).map((v) => ({ value: v, label: v.toFixed(1) })),
    x, yPh, "omega (rad/s)", "arg F (rad)");

  return { svg: doc.toString(), meta: { kind: "bode", points: omega.length } };
}

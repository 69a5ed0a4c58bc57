/** Minimal SVG document builder; everything renders to a string. */

export interface Margin {
  top: number;
  right: number;
  bottom: number;
  left: number;
}

const esc = (s: string) =>
  s.replace(/&/g, "&amp;").replace(/</g, "&lt;").replace(/>/g, "&gt;");

const fmt = (x: number) => (Number.isInteger(x) ? String(x) : x.toFixed(2));

export class SvgDoc {
  private parts: string[] = [];

  constructor(readonly width: number, readonly height: number) {}

  rect(x: number, y: number, w: number, h: number, fill: string, extra = ""): void {
    this.parts.push(
      `<rect x="${fmt(x)}" y="${fmt(y)}" width="${fmt(w)}" height="${fmt(h)}" fill="${fill}" ${extra}/>`,
    );
  }

  line(x1: number, y1: number, x2: number, y2: number, stroke = "#333", width = 1): void {
    this.parts.push(
      `<line x1="${fmt(x1)}" y1="${fmt(y1)}" x2="${fmt(x2)}" y2="${fmt(y2)}" stroke="${stroke}" stroke-width="${width}"/>`,
    );
  }

  polyline(points: [number, number][], stroke = "#1f77b4", width = 1): void {
    const attr = points.map(([x, y]) => `${fmt(x)},${fmt(y)}`).join(" ");
    this.parts.push(
      `<polyline points="${attr}" fill="none" stroke="${stroke}" stroke-width="${width}"/>`,
    );
  }

  polygon(points: [number, number][], fill: string, stroke = "none"): void {
    const attr = points.map(([x, y]) => `${fmt(x)},${fmt(y)}`).join(" ");
    this.parts.push(`<polygon points="${attr}" fill="${fill}" stroke="${stroke}" stroke-width="0.3"/>`);
  }

  text(x: number, y: number, content: string, size = 11, anchor = "middle", extra = ""): void {
    this.parts.push(
      `<text x="${fmt(x)}" y="${fmt(y)}" font-size="${size}" text-anchor="${anchor}" ` +
        `font-family="sans-serif" ${extra}>${esc(content)}</text>`,
    );
  }

  toString(): string {
    return (
      `<svg xmlns="http://www.w3.org/2000/svg" width="${this.width}" height="${this.height}" ` +
      `viewBox="0 0 ${this.width} ${this.height}">\n<rect width="100%" height="100%" fill="white"/>\n` +
      this.parts.join("\n") +
      "\n</svg>\n"
    );
  }
}

/** Thin x/y axes with tick labels along the plot frame. */
export function drawFrame(
  doc: SvgDoc,
  margin: Margin,
  plotW: number,
  plotH: number,
  xTicks: { value: number; label: string }[],
  yTicks: { value: number; label: string }[],
  xScale: (v: number) => number,
  yScale: (v: number) => number,
  xLabel: string,
  yLabel: string,
): void {
  const x0 = margin.left;
  const y0 = margin.top + plotH;
  doc.line(x0, y0, x0 + plotW, y0);
  doc.line(x0, margin.top, x0, y0);
  for (const t of xTicks) {
    const px = xScale(t.value);
    doc.line(px, y0, px, y0 + 4);
    doc.text(px, y0 + 16, t.label, 10);
  }
  for (const t of yTicks) {
    const py = yScale(t.value);
    doc.line(x0 - 4, py, x0, py);
    doc.text(x0 - 6, py + 3, t.label, 10, "end");
  }
  doc.text(x0 + plotW / 2, y0 + 32, xLabel, 12);
  doc.text(12, margin.top + plotH / 2, yLabel, 12, "middle",
    `transform="rotate(-90 12 ${margin.top + plotH / 2})"`);
}

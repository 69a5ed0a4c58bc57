import { describe, expect, it } from "vitest";

import { column, parseCsv, requireColumns, sweepGrid } from "../src/csv.js";

describe("parseCsv", () => {
  it("parses numbers, booleans and specials", () => {
    const table = parseCsv("a,b,c\n1.5,true,inf\n-2,false,nan\n");
    expect(table.columns).toEqual(["a", "b", "c"]);
    expect(table.rows[0]).toEqual([1.5, true, Infinity]);
    expect(table.rows[1][0]).toBe(-2);
    expect(table.rows[1][1]).toBe(false);
    expect(Number.isNaN(table.rows[1][2])).toBe(true);
  });

  it("round-trips 17-digit floats exactly", () => {
    const value = "4.2705487227734373e-05";
    const table = parseCsv(`f\n${value}\n`);
    expect(table.rows[0][0]).toBe(Number(value));
  });

  it("rejects ragged rows", () => {
    expect(() => parseCsv("a,b\n1,2\n3\n")).toThrow(/row 2/);
  });

  it("rejects garbage cells", () => {
    expect(() => parseCsv("a\nhello\n")).toThrow(/unparseable/);
  });

  it("rejects empty input", () => {
    expect(() => parseCsv("a,b\n")).toThrow(/header/);
  });
});

describe("column access", () => {
  const table = parseCsv("x,flag\n1,true\n2,false\n");

  it("extracts numeric columns", () => {
    expect(column(table, "x")).toEqual([1, 2]);
  });

  it("coerces booleans to 0/1", () => {
    expect(column(table, "flag")).toEqual([1, 0]);
  });

  it("names the missing column", () => {
    expect(() => column(table, "nope")).toThrow(/missing column "nope"/);
    expect(() => requireColumns(table, ["x", "nope"])).toThrow(/nope/);
  });
});

describe("sweepGrid", () => {
  const text = [
    "omega_i,gain,f",
    "0.5,1.0,0.1",
    "0.5,2.0,0.2",
    "1.0,1.0,0.3",
    "1.0,2.0,0.4",
  ].join("\n");

  it("reshapes a complete grid", () => {
    const grid = sweepGrid(parseCsv(text), "f");
    expect(grid.omega).toEqual([0.5, 1.0]);
    expect(grid.gain).toEqual([1.0, 2.0]);
    expect(grid.values).toEqual([[0.1, 0.2], [0.3, 0.4]]);
  });

  it("rejects a ragged grid", () => {
    const short = text.split("\n").slice(0, 4).join("\n");
    expect(() => sweepGrid(parseCsv(short), "f")).toThrow(/ragged/);
  });

  it("rejects duplicate cells", () => {
    const dup = text + "\n1.0,2.0,0.9";
    expect(() => sweepGrid(parseCsv(dup), "f")).toThrow(/ragged|duplicate/);
  });
});

import { mkdtempSync, writeFileSync } from "fs";
import { tmpdir } from "os";
import path from "path";
import { describe, expect, it } from "vitest";

import { buildChart, niceTicks } from "../src/chart.js";
import { numericColumn, parseCsv } from "../src/csv.js";
import { renderConvergence, renderCrossSection } from "../src/figures.js";

function tmpCsv(name: string, body: string): string {
  const dir = mkdtempSync(path.join(tmpdir(), "bressim-plots-"));
  const p = path.join(dir, name);
  writeFileSync(p, body);
  return p;
}

describe("csv", () => {
  it("parses headers, floats and empty cells", () => {
    const t = parseCsv("t,a,b\n0.0,1.5,\n0.1,2.5,3.0\n");
    expect(t.rows).toBe(2);
    expect(numericColumn(t, "a")).toEqual([1.5, 2.5]);
    expect(t.columns.get("b")![0]).toBeNull();
  });

  it("parses quoted cells", () => {
    const t = parseCsv('t,"a,b"\n0.0,1.0\n');
    expect(t.header).toEqual(["t", "a,b"]);
  });

  it("rejects ragged rows and missing columns", () => {
    expect(() => parseCsv("t,a\n0.0\n")).toThrow(/ragged/);
    const t = parseCsv("t,a\n0.0,1.0\n");
    expect(() => numericColumn(t, "nope")).toThrow(/MissingInput/);
  });
});

describe("chart", () => {
  const series = [{ label: "s", x: [0, 1, 2], y: [0, 1, 0.5] }];

  it("renders one polyline per series with a legend", () => {
    const svg = buildChart({ title: "T", xLabel: "t", yLabel: "v", series });
    expect(svg).toContain("<svg");
    expect(svg.match(/<polyline/g)!.length).toBe(1);
    expect(svg).toContain(">s</text>");
  });

  it("is deterministic", () => {
    const a = buildChart({ title: "T", xLabel: "t", yLabel: "v", series });
    const b = buildChart({ title: "T", xLabel: "t", yLabel: "v", series });
    expect(a).toBe(b);
  });

  it("refuses empty input", () => {
    expect(() => buildChart({ title: "T", xLabel: "t", yLabel: "v", series: [] }))
      .toThrow(/MissingInput/);
  });

  it("nice ticks cover the range", () => {
    const ticks = niceTicks(0, 10, 5);
    expect(ticks[0]).toBe(0);
    expect(ticks[ticks.length - 1]).toBe(10);
  });
});

describe("cross-section figures", () => {
  const mk = (tEnd: number) =>
    tmpCsv("probe.csv", `t,transversal\n0.0,0.0\n0.5,0.3\n${tEnd},0.1\n`);

  it("overlays several runs", () => {
    const paths = [mk(1.0), mk(1.0), mk(1.0), mk(1.0)];
    const svg = renderCrossSection({
      csvPaths: paths,
      labels: ["l=0.1", "l=0.01", "l=0.001", "l=0"],
      probeLabel: "x=2",
      fieldLabel: "transversal",
    });
    expect(svg.match(/<polyline/g)!.length).toBe(4);
    expect(svg).toContain("Transversal displacement, cross section x=2");
  });

  it("renders a single curve from one CSV", () => {
    const svg = renderCrossSection({
      csvPaths: [mk(1.0)],
      labels: ["run"],
      probeLabel: "x=6",
      fieldLabel: "shear",
    });
    expect(svg.match(/<polyline/g)!.length).toBe(1);
  });

  it("refuses mixed time ranges", () => {
    expect(() =>
      renderCrossSection({
        csvPaths: [mk(1.0), mk(2.0)],
        labels: ["a", "b"],
        probeLabel: "x=2",
        fieldLabel: "transversal",
      })).toThrow(/MixedTimeRanges/);
  });

  it("refuses empty inputs", () => {
    expect(() =>
      renderCrossSection({ csvPaths: [], labels: [], probeLabel: "x=2", fieldLabel: "t" }))
      .toThrow(/MissingInput/);
  });
});

describe("convergence figures", () => {
  it("plots a table on log-log axes", () => {
    const p = tmpCsv("table.csv",
      "l,x=2:transversal,x=6:transversal\n0.1,0.4,0.3\n0.01,0.05,0.04\n0.001,0.006,0.004\n");
    const svg = renderConvergence(p);
    expect(svg.match(/<polyline/g)!.length).toBe(2);
    expect(svg).toContain("Convergence vs l");
  });

  it("renders markers only for a single-row table", () => {
    const p = tmpCsv("table.csv", "chi,a\n10,0.5\n");
    const svg = renderConvergence(p);
    expect(svg).not.toContain("<polyline");
    expect(svg).toContain("<circle");
  });

  it("refuses an empty table", () => {
    const p = tmpCsv("table.csv", "l,a\n");
    expect(() => renderConvergence(p)).toThrow(/MissingInput/);
  });
});

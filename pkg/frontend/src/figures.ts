/**
 * Figure assembly from the simulator's CSV outputs.
 *
 * Cross-section figures overlay one probe's time series across runs
 * (e.g. curvature values l, or scale factors chi, plus the limit run);
 * convergence figures are log-log plots of a scan table.
 */

import { readFileSync } from "fs";
import { buildChart, Series } from "./chart.js";
import { numericColumn, parseCsv } from "./csv.js";

export interface CrossSectionSpec {
  csvPaths: string[];
  labels: string[];
  probeLabel: string;   // e.g. "x=2"
  fieldLabel: string;   // e.g. "transversal"
  title?: string;
}

const FIELD_TITLES: Record<string, string> = {
  transversal: "Transversal displacement",
  shear: "Shear angle variation",
  longitudinal: "Longitudinal displacement",
  temp_longitudinal: "Temperature deviation (longitudinal direction)",
  temp_vertical: "Temperature deviation (vertical direction)",
};

export function renderCrossSection(spec: CrossSectionSpec): string {
  if (spec.csvPaths.length === 0) {
    throw new Error("MissingInput: no CSV inputs");
  }
  if (spec.labels.length !== spec.csvPaths.length) {
    throw new Error(`need one label per CSV (${spec.csvPaths.length} files, ${spec.labels.length} labels)`);
  }
  const series: Series[] = [];
  let tRange: [number, number] | null = null;
  for (let i = 0; i < spec.csvPaths.length; i++) {
    const table = parseCsv(readFileSync(spec.csvPaths[i], "utf-8"));
    const t = numericColumn(table, "t");
    const valueCol = table.header.find((h) => h !== "t");
    if (valueCol === undefined) throw new Error(`MissingInput: ${spec.csvPaths[i]} has no value column`);
    const y = numericColumn(table, valueCol);
    const range: [number, number] = [t[0], t[t.length - 1]];
    if (tRange === null) {
      tRange = range;
    } else if (Math.abs(tRange[0] - range[0]) > 1e-12 || Math.abs(tRange[1] - range[1]) > 1e-12) {
      throw new Error(
        `MixedTimeRanges: ${spec.csvPaths[i]} spans [${range}], expected [${tRange}]`);
    }
    series.push({ label: spec.labels[i], x: t, y });
  }
  const base = FIELD_TITLES[spec.fieldLabel] ?? spec.fieldLabel;
  return buildChart({
    title: spec.title ?? `${base}, cross section ${spec.probeLabel}`,
    xLabel: "t",
    yLabel: spec.fieldLabel,
    series,
  });
}

export function renderConvergence(tablePath: string, title?: string): string {
  const table = parseCsv(readFileSync(tablePath, "utf-8"));
  if (table.rows === 0) {
    throw new Error("MissingInput: convergence table has no rows");
  }
  const paramName = table.header[0];
  const x = numericColumn(table, paramName).map(Math.abs);
  const series: Series[] = [];
  for (const name of table.header.slice(1)) {
    const y = numericColumn(table, name);
    if (y.some((v) => v <= 0) || x.some((v) => v <= 0)) {
      // log-log needs positive data; zero rows (self-comparison) are skipped
      continue;
    }
    series.push({ label: name, x, y });
  }
  if (series.length === 0) {
    throw new Error("MissingInput: no positive columns to plot on log-log axes");
  }
  return buildChart({
    title: title ?? `Convergence vs ${paramName}`,
    xLabel: paramName,
    yLabel: "sup-over-t difference",
    series,
    logX: true,
    logY: true,
    markers: true,
  });
}

#!/usr/bin/env node
/**
 * plot — render SVG figures from bressim CSV outputs.
 *
 * Usage:
 *   plot cross-section --csv a.csv b.csv ... --labels "l=0.1" "l=0.01" ...
 *        --probe x=2 --field transversal --out fig.svg
 *   plot convergence --table l_scan_table.csv --out fig.svg [--title T]
 *
 * Output is SVG only: rasterizing to PNG needs a native canvas, which this
 * toolchain deliberately avoids; .png output paths are refused.
 */

import { mkdirSync, writeFileSync } from "fs";
import path from "path";
import { renderConvergence, renderCrossSection } from "./figures.js";

interface Args {
  positional: string[];
  flags: Map<string, string[]>;
}

function parseArgs(argv: string[]): Args {
  const positional: string[] = [];
  const flags = new Map<string, string[]>();
  let current: string | null = null;
  for (const tok of argv) {
    if (tok.startsWith("--")) {
      current = tok.slice(2);
      if (!flags.has(current)) flags.set(current, []);
    } else if (current !== null) {
      flags.get(current)!.push(tok);
    } else {
      positional.push(tok);
    }
  }
  return { positional, flags };
}

function one(args: Args, name: string): string {
  const vals = args.flags.get(name);
  if (vals === undefined || vals.length !== 1) {
    throw new Error(`--${name} requires exactly one value`);
  }
  return vals[0];
}

function writeFigure(outPath: string, svg: string): void {
  if (path.extname(outPath).toLowerCase() === ".png") {
    throw new Error("PNG output is not supported in this build; use an .svg path");
  }
  mkdirSync(path.dirname(path.resolve(outPath)), { recursive: true });
  writeFileSync(outPath, svg);
  console.log(`wrote ${outPath}`);
}

export function main(argv: string[]): number {
  const args = parseArgs(argv);
  const cmd = args.positional[0];
  try {
    if (cmd === "cross-section") {
      const csv = args.flags.get("csv") ?? [];
      const labels = args.flags.get("labels") ?? [];
      const svg = renderCrossSection({
        csvPaths: csv,
        labels,
        probeLabel: one(args, "probe"),
        fieldLabel: one(args, "field"),
        title: args.flags.get("title")?.[0],
      });
      writeFigure(one(args, "out"), svg);
      return 0;
    }
    if (cmd === "convergence") {
      const svg = renderConvergence(one(args, "table"), args.flags.get("title")?.[0]);
      writeFigure(one(args, "out"), svg);
      return 0;
    }
    console.error("usage: plot <cross-section|convergence> [options]");
    return 2;
  } catch (err) {
    console.error(String(err instanceof Error ? err.message : err));
    return 1;
  }
}

const isDirect = process.argv[1] !== undefined &&
  import.meta.url.endsWith(path.basename(process.argv[1]));
if (isDirect) {
  process.exit(main(process.argv.slice(2)));
}

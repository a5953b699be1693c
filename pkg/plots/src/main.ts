#!/usr/bin/env node
/**
 * CLI: render a log-log convergence figure from ftdft sweep CSV files.
 *
 * Usage:
 *   ftdft-plots --csv table1_22.csv --csv table1_23.csv \
 *       --slope -0.75 --slope -0.9375 --out fig.svg [--meta fig.meta.json]
 *
 * Each --slope pairs with the series in order; pass none for a plain data
 * figure. --label overrides legend entries, --x-min/--x-max/--y-min/--y-max
 * pin axis ranges.
 */

import { readFileSync, writeFileSync } from "fs";

import { FigureSpec, buildFigure } from "./figure";
import { assertSvgPath, renderSvg } from "./render";

const USAGE =
  "usage: ftdft-plots --csv FILE [--csv FILE ...] [--slope S ...] " +
  "[--label L ...] --out FIG.svg [--meta META.json] " +
  "[--x-min V] [--x-max V] [--y-min V] [--y-max V]";

interface CliArgs {
  spec: FigureSpec;
  metaPath?: string;
}

function parseNumber(flag: string, raw: string | undefined): number {
  if (raw === undefined) {
    throw new Error(`${flag} needs a value`);
  }
  const v = Number(raw);
  if (!Number.isFinite(v)) {
    throw new Error(`${flag}: not a finite number: ${JSON.stringify(raw)}`);
  }
  return v;
}

export function parseArgs(argv: string[]): CliArgs {
  const csvPaths: string[] = [];
  const slopes: number[] = [];
  const labels: string[] = [];
  let outPath: string | undefined;
  let metaPath: string | undefined;
  let xMin: number | undefined;
  let xMax: number | undefined;
  let yMin: number | undefined;
  let yMax: number | undefined;

  for (let i = 0; i < argv.length; i++) {
    const flag = argv[i];
    const value = argv[i + 1];
    switch (flag) {
      case "--csv":
        if (value === undefined) throw new Error("--csv needs a value");
        csvPaths.push(value);
        i++;
        break;
      case "--slope":
        slopes.push(parseNumber("--slope", value));
        i++;
        break;
      case "--label":
        if (value === undefined) throw new Error("--label needs a value");
        labels.push(value);
        i++;
        break;
      case "--out":
        if (value === undefined) throw new Error("--out needs a value");
        outPath = value;
        i++;
        break;
      case "--meta":
        if (value === undefined) throw new Error("--meta needs a value");
        metaPath = value;
        i++;
        break;
      case "--x-min":
        xMin = parseNumber(flag, value);
        i++;
        break;
      case "--x-max":
        xMax = parseNumber(flag, value);
        i++;
        break;
      case "--y-min":
        yMin = parseNumber(flag, value);
        i++;
        break;
      case "--y-max":
        yMax = parseNumber(flag, value);
        i++;
        break;
      case "--help":
      case "-h":
        throw new Error(USAGE);
      default:
        throw new Error(`unknown flag ${JSON.stringify(flag)}\n${USAGE}`);
    }
  }

  if (csvPaths.length === 0) {
    throw new Error(`at least one --csv is required\n${USAGE}`);
  }
  if (outPath === undefined) {
    throw new Error(`--out is required\n${USAGE}`);
  }
  if ((xMin === undefined) !== (xMax === undefined)) {
    throw new Error("--x-min and --x-max must be given together");
  }
  if ((yMin === undefined) !== (yMax === undefined)) {
    throw new Error("--y-min and --y-max must be given together");
  }

  const spec: FigureSpec = {
    csvPaths,
    referenceSlopes: slopes,
    outPath,
  };
  if (labels.length > 0) spec.seriesLabels = labels;
  if (xMin !== undefined && xMax !== undefined) spec.xRange = [xMin, xMax];
  if (yMin !== undefined && yMax !== undefined) spec.yRange = [yMin, yMax];
  return { spec, metaPath };
}

export function run(argv: string[]): number {
  let args: CliArgs;
  try {
    args = parseArgs(argv);
  } catch (err) {
    process.stderr.write(`error: ${(err as Error).message}\n`);
    return 1;
  }
  try {
    assertSvgPath(args.spec.outPath);
    const texts = args.spec.csvPaths.map((p) => readFileSync(p, "utf-8"));
    const { model, metadata } = buildFigure(args.spec, texts);
    const svg = renderSvg(model);
    writeFileSync(args.spec.outPath, svg);
    process.stdout.write(`wrote ${args.spec.outPath}\n`);
    if (args.metaPath !== undefined) {
      writeFileSync(args.metaPath, JSON.stringify(metadata, null, 2) + "\n");
      process.stdout.write(`wrote ${args.metaPath}\n`);
    }
    return 0;
  } catch (err) {
    process.stderr.write(`error: ${(err as Error).message}\n`);
    return 1;
  }
}

if (require.main === module) {
  process.exit(run(process.argv.slice(2)));
}

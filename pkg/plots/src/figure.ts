/**
 * Figure assembly: turns parsed sweep series plus reference slopes into a
 * deterministic model (points, reference lines, axis ranges, legend order)
 * that the SVG renderer consumes and the golden test snapshots.
 */

import { Series, SweepRow, groupSeries, parseSweepCsv } from "./csv";

export interface FigureSpec {
  /** One or more harness CSV files; series are grouped by label per file. */
  csvPaths: string[];
  /** Optional legend override, one entry per series. */
  seriesLabels?: string[];
  /** Reference slopes, one per series, or empty for no reference lines. */
  referenceSlopes: number[];
  /** Output image path; .svg is the supported extension. */
  outPath: string;
  xRange?: [number, number];
  yRange?: [number, number];
}

export interface RefLine {
  slope: number;
  /** Data-space endpoints; the second endpoint is the anchor (largest n). */
  x0: number;
  y0: number;
  x1: number;
  y1: number;
}

export interface FigureSeries {
  label: string;
  points: Array<{ x: number; y: number }>;
}

export interface FigureModel {
  series: FigureSeries[];
  refLines: RefLine[];
  xRange: [number, number];
  yRange: [number, number];
}

export interface FigureMetadata {
  seriesCount: number;
  legend: string[];
  referenceSlopes: number[];
  pointCounts: number[];
  anchors: Array<{ n: number; eL2: number }>;
  xRange: [number, number];
  yRange: [number, number];
}

const X_PAD = Math.SQRT2; // half an octave each side
const Y_PAD = Math.pow(10.0, 0.15);

export function buildFigure(spec: FigureSpec, csvTexts: string[]): {
  model: FigureModel;
  metadata: FigureMetadata;
} {
  if (csvTexts.length !== spec.csvPaths.length) {
    throw new Error("internal: one CSV text per path required");
  }
  for (const s of spec.referenceSlopes) {
    if (!Number.isFinite(s)) {
      throw new Error(`reference slope must be finite, got ${s}`);
    }
  }

  const series: Series[] = [];
  csvTexts.forEach((text, i) => {
    try {
      series.push(...groupSeries(parseSweepCsv(text)));
    } catch (err) {
      throw new Error(`${spec.csvPaths[i]}: ${(err as Error).message}`);
    }
  });
  if (series.length === 0) {
    throw new Error("empty data: no series found");
  }

  if (spec.seriesLabels !== undefined && spec.seriesLabels.length !== series.length) {
    throw new Error(
      `series labels: expected ${series.length} entries, got ${spec.seriesLabels.length}`
    );
  }
  if (spec.referenceSlopes.length > 0 && spec.referenceSlopes.length !== series.length) {
    throw new Error(
      `reference slopes: expected 0 or ${series.length} entries, got ${spec.referenceSlopes.length}`
    );
  }

  const figSeries: FigureSeries[] = series.map((s, i) => {
    const usable = s.rows.filter((r) => r.eL2 > 0.0);
    if (usable.length === 0) {
      throw new Error(`series ${JSON.stringify(s.label)}: no positive e_l2 values to plot`);
    }
    return {
      label: spec.seriesLabels !== undefined ? spec.seriesLabels[i] : s.label,
      points: usable.map((r) => ({ x: r.n, y: r.eL2 })),
    };
  });

  const refLines: RefLine[] = spec.referenceSlopes.map((slope, i) => {
    const pts = figSeries[i].points;
    const first = pts[0];
    const anchor = pts[pts.length - 1];
    // line through the anchor with the given log-log slope, drawn back to
    // the smallest plotted n of the same series
    const y0 = anchor.y * Math.pow(first.x / anchor.x, slope);
    return { slope, x0: first.x, y0, x1: anchor.x, y1: anchor.y };
  });

  const xs: number[] = [];
  const ys: number[] = [];
  for (const s of figSeries) {
    for (const p of s.points) {
      xs.push(p.x);
      ys.push(p.y);
    }
  }
  for (const r of refLines) {
    ys.push(r.y0, r.y1);
  }
  const xRange: [number, number] =
    spec.xRange ?? [Math.min(...xs) / X_PAD, Math.max(...xs) * X_PAD];
  const yRange: [number, number] =
    spec.yRange ?? [Math.min(...ys) / Y_PAD, Math.max(...ys) * Y_PAD];
  if (!(xRange[0] > 0.0) || !(yRange[0] > 0.0)) {
    throw new Error("log-log axes need strictly positive ranges");
  }
  if (!(xRange[0] < xRange[1]) || !(yRange[0] < yRange[1])) {
    throw new Error("axis range must have min < max");
  }

  const model: FigureModel = { series: figSeries, refLines, xRange, yRange };
  const metadata: FigureMetadata = {
    seriesCount: figSeries.length,
    legend: figSeries.map((s) => s.label),
    referenceSlopes: refLines.map((r) => r.slope),
    pointCounts: figSeries.map((s) => s.points.length),
    anchors: figSeries.map((s) => {
      const a = s.points[s.points.length - 1];
      return { n: a.x, eL2: a.y };
    }),
    xRange,
    yRange,
  };
  return { model, metadata };
}

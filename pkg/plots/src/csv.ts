/**
 * Reader for the sweep CSV emitted by the ftdft harness.
 *
 * Expected header:
 *   label,n,h,p,e_l2,e_sup,bound_total,predicted_rate,fitted_slope
 *
 * The label field is quoted when it contains commas ("fab:2,2, PaperOptimal"),
 * predicted_rate is empty for pairs without a finite predicted rate, and
 * fitted_slope may be nan on rows where no fit was possible.
 */

import Papa from "papaparse";

export interface SweepRow {
  label: string;
  n: number;
  h: number;
  p: number;
  eL2: number;
  eSup: number;
  boundTotal: number;
  predictedRate: number | null;
  fittedSlope: number;
}

export interface Series {
  label: string;
  rows: SweepRow[];
}

export const REQUIRED_COLUMNS = [
  "label",
  "n",
  "h",
  "p",
  "e_l2",
  "e_sup",
  "bound_total",
  "predicted_rate",
  "fitted_slope",
] as const;

function numberField(raw: string, column: string, line: number): number {
  const v = Number(raw);
  if (raw.trim() === "" || Number.isNaN(v)) {
    // "nan" parses to NaN through Number(); keep it for fitted_slope only
    if (raw.trim().toLowerCase() === "nan") return NaN;
    throw new Error(`line ${line}: column ${column} is not a number: ${JSON.stringify(raw)}`);
  }
  return v;
}

export function parseSweepCsv(text: string): SweepRow[] {
  const parsed = Papa.parse<Record<string, string>>(text.trim(), {
    header: true,
    skipEmptyLines: true,
  });
  if (parsed.errors.length > 0) {
    const e = parsed.errors[0];
    throw new Error(`CSV parse error at row ${e.row ?? "?"}: ${e.message}`);
  }
  const fields = parsed.meta.fields ?? [];
  const missing = REQUIRED_COLUMNS.filter((c) => !fields.includes(c));
  if (missing.length > 0) {
    throw new Error(`missing columns: ${missing.join(", ")}`);
  }
  if (parsed.data.length === 0) {
    throw new Error("empty data: CSV has a header but no rows");
  }
  return parsed.data.map((rec, i) => {
    const line = i + 2; // header is line 1
    const rate = (rec["predicted_rate"] ?? "").trim();
    return {
      label: rec["label"] ?? "",
      n: numberField(rec["n"], "n", line),
      h: numberField(rec["h"], "h", line),
      p: numberField(rec["p"], "p", line),
      eL2: numberField(rec["e_l2"], "e_l2", line),
      eSup: numberField(rec["e_sup"], "e_sup", line),
      boundTotal: numberField(rec["bound_total"], "bound_total", line),
      predictedRate: rate === "" ? null : numberField(rate, "predicted_rate", line),
      fittedSlope: numberField(rec["fitted_slope"], "fitted_slope", line),
    };
  });
}

/** Group rows into series by label, first appearance order, sorted by n. */
export function groupSeries(rows: SweepRow[]): Series[] {
  const byLabel = new Map<string, SweepRow[]>();
  for (const row of rows) {
    const bucket = byLabel.get(row.label);
    if (bucket === undefined) {
      byLabel.set(row.label, [row]);
    } else {
      bucket.push(row);
    }
  }
  return Array.from(byLabel.entries()).map(([label, bucket]) => ({
    label,
    rows: bucket.slice().sort((a, b) => a.n - b.n),
  }));
}

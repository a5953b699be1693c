"""Experiment runner: sweep n, apply a step rule, fit slopes, emit CSV/JSON.

Rules come in three kinds: the decay-balanced step from the planner
("PaperOptimal"), a prescribed step h = c*n^e ("FixedH"), or a prescribed
period p = c*n^e ("FixedP").  A sweep runs one row per n = 2^l over a
range of exponents, each row being exactly a standalone error_l2 call, and
fits the log-log slope of e_l2 against n.

Rows with e_l2 below FIT_FLOOR sit at the rounding floor of the double
format and are excluded from the fit (they still appear in the output).

Output columns are stable: label,n,h,p,e_l2,e_sup,bound_total,
predicted_rate,fitted_slope with floats at 17 significant digits, so the
CSV round-trips to the exact same doubles.
"""

from __future__ import annotations

import csv
import io
import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Optional, Sequence, Tuple

from .corpus import FunctionPair, PolyDecay, corpus_get
from .dft import SamplingPlan, error_l2
from .planner import PlanRequest, plan_step
from .planner import predicted_rate as _balanced_rate

FIT_FLOOR = 1e-12

CSV_COLUMNS = (
    "label",
    "n",
    "h",
    "p",
    "e_l2",
    "e_sup",
    "bound_total",
    "predicted_rate",
    "fitted_slope",
)


@dataclass(frozen=True)
class PlanRule:
    """kind "PaperOptimal" ignores (c, e); "FixedH": h = c*n^e; "FixedP": p = c*n^e."""

    kind: str
    c: float = 1.0
    e: float = 0.0

    def __post_init__(self):
        if self.kind not in ("PaperOptimal", "FixedH", "FixedP"):
            raise ValueError("rule kind must be PaperOptimal, FixedH, or FixedP")
        if not (self.c > 0.0 and math.isfinite(self.c) and math.isfinite(self.e)):
            raise ValueError("rule parameters must be finite with c > 0")

    def describe(self) -> str:
        if self.kind == "PaperOptimal":
            return "PaperOptimal"
        lhs = "h" if self.kind == "FixedH" else "p"
        return f"{lhs}={self.c:g}*n^{self.e:g}"


@dataclass(frozen=True)
class ExperimentConfig:
    function: str
    rule: PlanRule
    l_min: int
    l_max: int
    out: Optional[str] = None
    fmt: str = "csv"

    def __post_init__(self):
        if self.l_min > self.l_max:
            raise ValueError("empty n range: l_min must be <= l_max")
        if self.l_min < 1:
            raise ValueError("l_min must be >= 1")
        if self.fmt not in ("csv", "json"):
            raise ValueError("format must be csv or json")


@dataclass(frozen=True)
class SweepRow:
    n: int
    h: float
    p: float
    e_l2: float
    e_sup: float
    bound_total: float


@dataclass(frozen=True)
class ConvergenceRun:
    label: str
    rows: Tuple[SweepRow, ...]
    predicted_rate: Optional[float]
    fitted_slope: float
    slope_stderr: float


def make_plan(fp: FunctionPair, rule: PlanRule, n: int) -> SamplingPlan:
    if rule.kind == "PaperOptimal":
        return plan_step(PlanRequest(fp.time_decay, fp.freq_decay, n))
    if rule.kind == "FixedH":
        return SamplingPlan(n, rule.c * float(n) ** rule.e)
    return SamplingPlan(n, rule.c * float(n) ** (rule.e - 1.0))


def _side_exponent(decay, growth: float) -> float:
    """n-exponent of one bound term when its argument grows like n^growth.

    Polynomial decay a (weight exponent a - 1/2) gives (a - 1/2) * growth;
    sub-exponential decay decays faster than any power when the argument
    grows (inf), and contributes a constant floor when it does not (also
    treated as inf: the floor sits below FIT_FLOOR in every stated setup).
    """
    if isinstance(decay, PolyDecay):
        return (decay.exponent - 0.5) * growth
    return math.inf if growth >= 0.0 else -math.inf


def rule_predicted_rate(fp: FunctionPair, rule: PlanRule) -> Optional[float]:
    """Expected log-log slope magnitude of e_l2 against n under the rule.

    None when no polynomial-rate prediction applies (both terms
    super-polynomial, as for a balanced sub-exponential pair).
    """
    if rule.kind == "PaperOptimal":
        r = _balanced_rate(fp.time_decay, fp.freq_decay)
        return None if math.isinf(r) else r
    if rule.kind == "FixedH":
        growth_p, growth_invh = 1.0 + rule.e, -rule.e
    else:
        growth_p, growth_invh = rule.e, 1.0 - rule.e
    t = _side_exponent(fp.time_decay, growth_p)
    f = _side_exponent(fp.freq_decay, growth_invh)
    rate = min(t, f)
    return None if math.isinf(rate) else rate


def fit_slope(points: Sequence[Tuple[float, float]]) -> Tuple[float, float]:
    """Ordinary least squares slope of ln y against ln x, with its standard error."""
    if len(points) < 3:
        raise ValueError("fit_slope needs at least 3 points")
    if any(x <= 0.0 or y <= 0.0 for x, y in points):
        raise ValueError("fit_slope needs positive coordinates")
    xs = [math.log(x) for x, _ in points]
    ys = [math.log(y) for _, y in points]
    m = len(xs)
    xbar = sum(xs) / m
    ybar = sum(ys) / m
    sxx = sum((x - xbar) ** 2 for x in xs)
    if sxx == 0.0:
        raise ValueError("fit_slope needs at least two distinct x values")
    sxy = sum((x - xbar) * (y - ybar) for x, y in zip(xs, ys))
    slope = sxy / sxx
    intercept = ybar - slope * xbar
    ssr = sum((y - (intercept + slope * x)) ** 2 for x, y in zip(xs, ys))
    stderr = math.sqrt(max(ssr, 0.0) / (m - 2) / sxx) if m > 2 else 0.0
    return slope, stderr


def _run_row(fp: FunctionPair, rule: PlanRule, n: int) -> SweepRow:
    plan = make_plan(fp, rule, n)
    rep = error_l2(fp, plan)
    return SweepRow(
        n, plan.h, plan.p, rep.e_l2, rep.e_sup, rep.bound_time + rep.bound_freq
    )


def sweep(cfg: ExperimentConfig) -> ConvergenceRun:
    """One error_l2 row per n = 2^l, l = l_min..l_max; deterministic.

    FTDFT_THREADS > 1 runs rows concurrently; output order stays sorted
    by n and values are bit-identical either way.
    """
    fp = corpus_get(cfg.function)
    ns = [2 ** l for l in range(cfg.l_min, cfg.l_max + 1)]
    threads = int(os.environ.get("FTDFT_THREADS", "1") or "1")
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            rows = list(pool.map(lambda n: _run_row(fp, cfg.rule, n), ns))
    else:
        rows = [_run_row(fp, cfg.rule, n) for n in ns]
    fit_points = [(float(r.n), r.e_l2) for r in rows if r.e_l2 >= FIT_FLOOR]
    if len(fit_points) >= 3:
        slope, stderr = fit_slope(fit_points)
    else:
        slope, stderr = math.nan, math.nan
    label = f"{cfg.function}, {cfg.rule.describe()}"
    return ConvergenceRun(
        label, tuple(rows), rule_predicted_rate(fp, cfg.rule), slope, stderr
    )


# --- serialization ----------------------------------------------------------

def _f17(x: float) -> str:
    """17-significant-digit float text: parses back to the identical double."""
    return "%.17g" % x


def _csv_cell_float(x: Optional[float]) -> str:
    if x is None:
        return ""
    return _f17(x)


def emit_csv_text(run: ConvergenceRun) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_COLUMNS)
    for r in run.rows:
        w.writerow(
            [
                run.label,
                str(r.n),
                _f17(r.h),
                _f17(r.p),
                _f17(r.e_l2),
                _f17(r.e_sup),
                _f17(r.bound_total),
                _csv_cell_float(run.predicted_rate),
                _f17(run.fitted_slope),
            ]
        )
    return buf.getvalue()


def _json_escape(s: str) -> str:
    out = []
    for ch in s:
        if ch in ('"', "\\"):
            out.append("\\" + ch)
        elif ord(ch) < 0x20:
            out.append("\\u%04x" % ord(ch))
        else:
            out.append(ch)
    return "".join(out)


def _json_num(x: Optional[float]) -> str:
    if x is None or not math.isfinite(x):
        return "null"
    return _f17(x)


def emit_json_text(run: ConvergenceRun) -> str:
    rows = []
    for r in run.rows:
        rows.append(
            "    {"
            + f'"n": {r.n}, "h": {_f17(r.h)}, "p": {_f17(r.p)}, '
            + f'"e_l2": {_f17(r.e_l2)}, "e_sup": {_f17(r.e_sup)}, '
            + f'"bound_total": {_f17(r.bound_total)}'
            + "}"
        )
    body = ",\n".join(rows)
    return (
        "{\n"
        + f'  "label": "{_json_escape(run.label)}",\n'
        + f'  "predicted_rate": {_json_num(run.predicted_rate)},\n'
        + f'  "fitted_slope": {_json_num(run.fitted_slope)},\n'
        + f'  "slope_stderr": {_json_num(run.slope_stderr)},\n'
        + '  "rows": [\n'
        + body
        + "\n  ]\n}\n"
    )


RUN_JSON_SCHEMA = {
    "type": "object",
    "required": ["label", "predicted_rate", "fitted_slope", "slope_stderr", "rows"],
    "additionalProperties": False,
    "properties": {
        "label": {"type": "string"},
        "predicted_rate": {"type": ["number", "null"]},
        "fitted_slope": {"type": ["number", "null"]},
        "slope_stderr": {"type": ["number", "null"]},
        "rows": {
            "type": "array",
            "minItems": 1,
            "items": {
                "type": "object",
                "required": ["n", "h", "p", "e_l2", "e_sup", "bound_total"],
                "additionalProperties": False,
                "properties": {
                    "n": {"type": "integer", "minimum": 2},
                    "h": {"type": "number"},
                    "p": {"type": "number"},
                    "e_l2": {"type": "number"},
                    "e_sup": {"type": "number"},
                    "bound_total": {"type": "number"},
                },
            },
        },
    },
}


def emit(run: ConvergenceRun, fmt: str, path: str) -> None:
    """Write the run to path; fmt "csv" or "json", floats at 17 digits."""
    if fmt == "csv":
        text = emit_csv_text(run)
    elif fmt == "json":
        text = emit_json_text(run)
    else:
        raise ValueError("format must be csv or json")
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(text)


def _parse_float(cell: str) -> float:
    return float(cell)


def parse_csv_text(text: str) -> ConvergenceRun:
    """Inverse of emit_csv_text up to slope_stderr, which CSV does not carry."""
    rdr = csv.reader(io.StringIO(text))
    header = next(rdr, None)
    if header is None or tuple(header) != CSV_COLUMNS:
        raise ValueError("unexpected CSV header")
    rows = []
    label = None
    pred: Optional[float] = None
    slope = math.nan
    for rec in rdr:
        if not rec:
            continue
        if len(rec) != len(CSV_COLUMNS):
            raise ValueError("malformed CSV row")
        label = rec[0]
        rows.append(
            SweepRow(
                int(rec[1]),
                _parse_float(rec[2]),
                _parse_float(rec[3]),
                _parse_float(rec[4]),
                _parse_float(rec[5]),
                _parse_float(rec[6]),
            )
        )
        pred = _parse_float(rec[7]) if rec[7] != "" else None
        slope = _parse_float(rec[8])
    if label is None:
        raise ValueError("CSV contains no data rows")
    return ConvergenceRun(label, tuple(rows), pred, slope, math.nan)


def parse_json_text(text: str) -> ConvergenceRun:
    """Inverse of emit_json_text (via the standard parser; floats round-trip)."""
    import json

    obj = json.loads(text)
    rows = tuple(
        SweepRow(r["n"], r["h"], r["p"], r["e_l2"], r["e_sup"], r["bound_total"])
        for r in obj["rows"]
    )
    def _num(v):
        return math.nan if v is None else float(v)
    pred = obj["predicted_rate"]
    return ConvergenceRun(
        obj["label"],
        rows,
        None if pred is None else float(pred),
        _num(obj["fitted_slope"]),
        _num(obj["slope_stderr"]),
    )

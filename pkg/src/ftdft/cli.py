"""Command line front end: plan, run, sweep, interp, corpus.

Flags override values from an optional JSON config file (--config), which
mirrors ExperimentConfig: {"function", "rule", "c", "e", "l_min", "l_max",
"n", "kernel", "out", "format"}.

Exit codes: 0 success, 1 validation error, 2 numerical failure (a
truncation or iteration that could not reach its tolerance).
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from typing import List, Optional

from .corpus import corpus_get, corpus_list
from .dft import error_l2
from .errors import ConvergenceError
from .harness import (
    ConvergenceRun,
    ExperimentConfig,
    PlanRule,
    emit_csv_text,
    emit_json_text,
    fit_slope,
    make_plan,
    rule_predicted_rate,
    sweep,
)
from .interp import Kernel, interp_l2_error


class CliError(ValueError):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise CliError(message)


_KERNELS = {"sinc": Kernel.SINC, "b1": Kernel.B1, "b2": Kernel.B2}

_F17 = "%.17g"


def _build_parser() -> _Parser:
    p = _Parser(prog="ftdft", description=__doc__, add_help=True)
    sub = p.add_subparsers(dest="command")
    for name, needs in (
        ("plan", ("function", "n", "rule")),
        ("run", ("function", "n", "rule")),
        ("sweep", ("function", "rule", "range", "output")),
        ("interp", ("function", "rule", "range", "kernel", "output")),
        ("corpus", ()),
    ):
        sp = sub.add_parser(name, add_help=True)
        sp.add_argument("--config", default=None, help="JSON config file")
        if "function" in needs:
            sp.add_argument("--function", default=None)
        if "n" in needs:
            sp.add_argument("--n", type=int, default=None)
        if "rule" in needs:
            sp.add_argument(
                "--rule", choices=("PaperOptimal", "FixedH", "FixedP"), default=None
            )
            sp.add_argument("--c", type=float, default=None)
            sp.add_argument("--e", type=float, default=None)
        if "range" in needs:
            sp.add_argument("--l-min", type=int, default=None, dest="l_min")
            sp.add_argument("--l-max", type=int, default=None, dest="l_max")
        if "kernel" in needs:
            sp.add_argument("--kernel", choices=tuple(_KERNELS), default=None)
        if "output" in needs:
            sp.add_argument("--out", default=None)
            sp.add_argument("--format", choices=("csv", "json"), default=None)
    return p


def _load_config(path: Optional[str]) -> dict:
    if path is None:
        return {}
    try:
        with open(path, "r", encoding="utf-8") as fh:
            obj = json.load(fh)
    except OSError as exc:
        raise CliError(f"cannot read config {path}: {exc}")
    except json.JSONDecodeError as exc:
        raise CliError(f"config {path} is not valid JSON: {exc}")
    if not isinstance(obj, dict):
        raise CliError("config must be a JSON object")
    return obj


def _pick(args, cfg: dict, key: str, default=None):
    v = getattr(args, key, None)
    if v is not None:
        return v
    if key in cfg and cfg[key] is not None:
        return cfg[key]
    return default


def _rule_from(args, cfg: dict) -> PlanRule:
    kind = _pick(args, cfg, "rule", "PaperOptimal")
    c = _pick(args, cfg, "c", 1.0)
    e = _pick(args, cfg, "e", 0.0)
    return PlanRule(str(kind), float(c), float(e))


def _require_function(args, cfg: dict) -> str:
    fn = _pick(args, cfg, "function")
    if fn is None:
        raise CliError("--function is required (see `ftdft corpus` for names)")
    return str(fn)


def _cmd_plan(args, cfg, out) -> int:
    fn = _require_function(args, cfg)
    n = _pick(args, cfg, "n")
    if n is None:
        raise CliError("--n is required for plan")
    fp = corpus_get(fn)
    rule = _rule_from(args, cfg)
    plan = make_plan(fp, rule, int(n))
    rate = rule_predicted_rate(fp, rule)
    out.write(f"function={fn}\n")
    out.write(f"rule={rule.describe()}\n")
    out.write(f"n={plan.n}\nh={_F17 % plan.h}\np={_F17 % plan.p}\n")
    out.write(
        "predicted_rate=none\n" if rate is None else f"predicted_rate={_F17 % rate}\n"
    )
    return 0


def _cmd_run(args, cfg, out) -> int:
    fn = _require_function(args, cfg)
    n = _pick(args, cfg, "n")
    if n is None:
        raise CliError("--n is required for run")
    fp = corpus_get(fn)
    rule = _rule_from(args, cfg)
    plan = make_plan(fp, rule, int(n))
    rep = error_l2(fp, plan)
    out.write(f"label={rep.label}\n")
    out.write(f"n={plan.n}\nh={_F17 % plan.h}\np={_F17 % plan.p}\n")
    out.write(f"e_l2={_F17 % rep.e_l2}\ne_sup={_F17 % rep.e_sup}\n")
    out.write(
        f"bound_time={_F17 % rep.bound_time}\nbound_freq={_F17 % rep.bound_freq}\n"
    )
    out.write(f"bound_total={_F17 % (rep.bound_time + rep.bound_freq)}\n")
    out.write(f"bounds_valid={'true' if rep.bounds_valid else 'false'}\n")
    return 0


def _write_output(text: str, path: Optional[str], out) -> None:
    if path is None:
        out.write(text)
    else:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)


def _cmd_sweep(args, cfg, out) -> int:
    run_cfg = ExperimentConfig(
        function=_require_function(args, cfg),
        rule=_rule_from(args, cfg),
        l_min=int(_pick(args, cfg, "l_min", 10)),
        l_max=int(_pick(args, cfg, "l_max", 18)),
        out=_pick(args, cfg, "out"),
        fmt=str(_pick(args, cfg, "format", "csv")),
    )
    run = sweep(run_cfg)
    text = emit_csv_text(run) if run_cfg.fmt == "csv" else emit_json_text(run)
    _write_output(text, run_cfg.out, out)
    return 0


INTERP_CSV_COLUMNS = (
    "label",
    "n",
    "h",
    "p",
    "kernel",
    "l2_main",
    "l2_tail_bound",
    "l2_total",
    "fitted_slope",
)


def _cmd_interp(args, cfg, out) -> int:
    fn = _require_function(args, cfg)
    fp = corpus_get(fn)
    rule = _rule_from(args, cfg)
    kname = str(_pick(args, cfg, "kernel", "sinc"))
    kernel = _KERNELS[kname]
    l_min = int(_pick(args, cfg, "l_min", 8))
    l_max = int(_pick(args, cfg, "l_max", 12))
    if l_min > l_max:
        raise CliError("empty n range: l_min must be <= l_max")
    rows = []
    for l in range(l_min, l_max + 1):
        n = 2 ** l
        plan = make_plan(fp, rule, n)
        res = interp_l2_error(fp, plan, kernel)
        rows.append((n, plan.h, plan.p, res.main, res.tail_bound))
    totals = [(float(n), m + t) for n, _, _, m, t in rows]
    if len(totals) >= 3 and all(y > 0 for _, y in totals):
        slope, _ = fit_slope(totals)
    else:
        slope = math.nan
    label = f"{fn}, {rule.describe()}, {kname}"
    fmt = str(_pick(args, cfg, "format", "csv"))
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(INTERP_CSV_COLUMNS)
        for n, h, p, m, t in rows:
            w.writerow(
                [
                    label,
                    str(n),
                    _F17 % h,
                    _F17 % p,
                    kname,
                    _F17 % m,
                    _F17 % t,
                    _F17 % (m + t),
                    _F17 % slope,
                ]
            )
        text = buf.getvalue()
    elif fmt == "json":
        items = ",\n".join(
            "    {"
            + f'"n": {n}, "h": {_F17 % h}, "p": {_F17 % p}, '
            + f'"l2_main": {_F17 % m}, "l2_tail_bound": {_F17 % t}, '
            + f'"l2_total": {_F17 % (m + t)}'
            + "}"
            for n, h, p, m, t in rows
        )
        slope_txt = "null" if not math.isfinite(slope) else _F17 % slope
        text = (
            "{\n"
            + f'  "label": "{label}",\n  "kernel": "{kname}",\n'
            + f'  "fitted_slope": {slope_txt},\n  "rows": [\n{items}\n  ]\n}}\n'
        )
    else:
        raise CliError("format must be csv or json")
    _write_output(text, _pick(args, cfg, "out"), out)
    return 0


def _cmd_corpus(args, cfg, out) -> int:
    for name in corpus_list():
        out.write(name + "\n")
    return 0


_COMMANDS = {
    "plan": _cmd_plan,
    "run": _cmd_run,
    "sweep": _cmd_sweep,
    "interp": _cmd_interp,
    "corpus": _cmd_corpus,
}


def main(argv: Optional[List[str]] = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
        if args.command is None:
            raise CliError("a subcommand is required: " + ", ".join(_COMMANDS))
        cfg = _load_config(getattr(args, "config", None))
        return _COMMANDS[args.command](args, cfg, sys.stdout)
    except ConvergenceError as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return 2
    except (CliError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())

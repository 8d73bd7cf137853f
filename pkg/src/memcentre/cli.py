"""Command-line front end.

Reports are written as ``section.field = value`` lines in a fixed order, or
as nested JSON with ``--json``.  Floats are printed with ``repr`` so every
value round-trips exactly.
"""

import argparse
import csv
import io
import json
import math
import sys

import numpy as np

from . import __version__
from .coder import CodeLengthMode, mean_code_length
from .density import Bandwidth, Sample, rule_bandwidth
from .errors import DegenerateSampleError, MemcentreError
from .experiments import (DEFAULT_GRID_POINTS, GENERATOR, NORMAL_METHOD, PAPER_MODELS,
                          MixtureModel, grid_argmin, run_table1, sample_mixture, summarize)
from .irls import DEFAULT_EPSILON, DEFAULT_MAX_ITERATIONS, IrlsConfig, solve
from .objective import ObjectiveKind, m_bar_s, m_f_uniform, m_s
from .special import l_bar, l_exact

#: Default coding accuracy, as a fraction of the KDE bandwidth.
ACCURACY_FRACTION = 0.01

PLOT_COLUMNS = {
    "L": ("a", "L"),
    "L_bar": ("a", "L_bar"),
    "L_both": ("a", "L", "L_bar"),
    "M_f_uniform": ("a", "M_f"),
    "objective": ("a", "M_S", "M_bar_S"),
}


class CliError(MemcentreError):
    pass


def read_values(path):
    """Read one number per line; blank lines, ``#`` comments and a header are skipped."""
    values = []
    try:
        with open(path, newline="") as fh:
            lines = fh.read().splitlines()
    except OSError as exc:
        raise CliError(f"cannot read {path}: {exc.strerror or exc}") from None
    seen_data = False
    for lineno, raw in enumerate(lines, 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        fields = [f.strip() for f in next(csv.reader([line]))]
        if len(fields) != 1:
            raise CliError(f"{path}:{lineno}: expected a single column, got {len(fields)}")
        token = fields[0]
        try:
            value = float(token)
        except ValueError:
            if not seen_data and not values:
                seen_data = True  # header row
                continue
            raise CliError(f"{path}:{lineno}: cannot parse {token!r} as a number") from None
        if not math.isfinite(value):
            raise CliError(f"{path}:{lineno}: non-finite value {token!r}")
        seen_data = True
        values.append(value)
    if not values:
        raise CliError("no data")
    return values


def load_sample(path):
    values = read_values(path)
    if len(values) < 2:
        raise DegenerateSampleError("need at least two observations")
    return Sample(values)


def resolve_bandwidth(sample, value):
    if value is None:
        return rule_bandwidth(sample)
    return Bandwidth(value, "user")


def parse_init(text):
    if text == "mean":
        return "mean"
    try:
        value = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"--init must be 'mean' or a number, got {text!r}")
    if not math.isfinite(value):
        raise argparse.ArgumentTypeError("--init must be finite")
    return value


def input_summary(sample, h):
    return {
        "n": sample.n,
        "mean": sample.mean,
        "std": sample.std,
        "h_used": h.h,
        "bandwidth_source": h.source,
    }


def format_report(report, as_json=False):
    if as_json:
        return json.dumps(report, indent=2) + "\n"
    lines = []
    for section, fields in report.items():
        for key, value in fields.items():
            if isinstance(value, list):
                value = ",".join(repr(v) for v in value)
            elif isinstance(value, float):
                value = repr(value)
            lines.append(f"{section}.{key} = {value}")
    return "\n".join(lines) + "\n"


def _check_finite(report):
    for fields in report.values():
        for key, value in fields.items():
            items = value if isinstance(value, list) else [value]
            for v in items:
                if isinstance(v, float) and not math.isfinite(v):
                    raise CliError(f"report field {key} is not finite")


def build_centre_report(sample, args):
    h = resolve_bandwidth(sample, args.bandwidth)
    config = IrlsConfig(epsilon=args.epsilon, max_iterations=args.max_iter,
                        initial_point=args.init, bandwidth=h)
    trace = solve(sample, config)
    a_r = trace.result
    report = {
        "input": input_summary(sample, h),
        "result": {
            "a_r": a_r,
            "iterations": trace.iterations,
            "stop_reason": trace.stop_reason,
            "m_bar_s": trace.objective_values[-1],
        },
    }
    if args.oracle:
        a_m, v_m = grid_argmin(sample, h, ObjectiveKind.EXACT_L, args.grid_points)
        ms_r = m_s(sample, h, a_r)
        ms_mean = m_s(sample, h, sample.mean)
        report["comparison"] = {
            "a_m": a_m,
            "m_s_a_m": v_m,
            "m_s_a_r": ms_r,
            "m_s_mean": ms_mean,
            "gap_solver": ms_r - v_m,
            "gap_mean": ms_mean - v_m,
        }
    if args.bits:
        acc = args.accuracy if args.accuracy is not None else ACCURACY_FRACTION * h.h
        bits = {"accuracy": acc}
        for mode in CodeLengthMode:
            bits[f"{mode.value}_at_a_r"] = mean_code_length(sample, acc, a_r, mode)
            bits[f"{mode.value}_at_mean"] = mean_code_length(sample, acc, sample.mean, mode)
        report["bits"] = bits
    if args.trace:
        report["trace"] = {"iterates": list(trace.iterates),
                           "objective_values": list(trace.objective_values)}
    _check_finite(report)
    return report


def cmd_centre(args, out):
    sample = load_sample(args.input)
    out.write(format_report(build_centre_report(sample, args), args.json))


def cmd_oracle(args, out):
    sample = load_sample(args.input)
    h = resolve_bandwidth(sample, args.bandwidth)
    kind = ObjectiveKind(args.kind)
    a_m, value = grid_argmin(sample, h, kind, args.grid_points)
    report = {
        "input": input_summary(sample, h),
        "oracle": {"kind": kind.value, "grid_points": args.grid_points,
                   "a_m": a_m, "value": value},
    }
    _check_finite(report)
    out.write(format_report(report, args.json))


ROW_FIELDS = ("model", "seed", "n", "h", "a_r", "a_m", "gap_solver", "gap_mean",
              "iterations", "stop_reason")


def cmd_table1(args, out):
    models = [MixtureModel.parse(m) for m in args.model] if args.model else PAPER_MODELS
    seeds = range(args.first_seed, args.first_seed + args.seeds)
    rows = run_table1(models, args.n, seeds, args.grid_points, args.workers)
    out.write(f"# generator: {GENERATOR}; normal draws: {NORMAL_METHOD}\n")
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(ROW_FIELDS)
    for r in rows:
        writer.writerow([str(r.model), r.seed, r.n, repr(r.h), repr(r.a_r), repr(r.a_m),
                         repr(r.gap_solver), repr(r.gap_mean), r.iterations, r.stop_reason])
    for s in summarize(rows):
        out.write(f"# median {s['model']}: seeds={s['seeds']} "
                  f"gap_solver={s['median_gap_solver']!r} gap_mean={s['median_gap_mean']!r}\n")


def plot_series(kind, lo, hi, points, sample=None, h=None):
    """Abscissae and value columns for ``plot-data``."""
    if not (math.isfinite(lo) and math.isfinite(hi)) or lo >= hi:
        raise CliError(f"invalid range: lo={lo!r} must be below hi={hi!r}")
    if points < 2:
        raise CliError("need at least two points")
    a = np.linspace(lo, hi, points)
    if kind == "L":
        cols = [l_exact(a)]
    elif kind == "L_bar":
        cols = [l_bar(a)]
    elif kind == "L_both":
        cols = [l_exact(a), l_bar(a)]
    elif kind == "M_f_uniform":
        cols = [m_f_uniform(a)]
    elif kind == "objective":
        if sample is None:
            raise CliError("plot-data objective requires --input")
        cols = [m_s(sample, h, a), m_bar_s(sample, h, a)]
    else:
        raise CliError(f"unknown plot kind {kind!r}")
    return a, cols


def cmd_plot_data(args, out):
    sample = h = None
    if args.kind == "objective":
        if args.input is None:
            raise CliError("plot-data objective requires --input")
        sample = load_sample(args.input)
        h = resolve_bandwidth(sample, args.bandwidth)
    lo = args.lo
    hi = args.hi
    if args.kind == "objective" and args.lo is None and args.hi is None:
        lo, hi = sample.min - h.h, sample.max + h.h
    lo = -5.0 if lo is None else lo
    hi = 5.0 if hi is None else hi
    a, cols = plot_series(args.kind, lo, hi, args.points, sample, h)
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(PLOT_COLUMNS[args.kind])
    for i in range(a.size):
        writer.writerow([repr(float(a[i]))] + [repr(float(c[i])) for c in cols])
    _emit(buf.getvalue(), args.output, out)


def cmd_sample(args, out):
    model = MixtureModel.parse(args.model)
    if args.n < 1:
        raise CliError("--n must be positive")
    sample = sample_mixture(model, args.n, args.seed)
    text = f"# {model} n={args.n} seed={args.seed} generator={GENERATOR}\n"
    text += "".join(f"{float(v)!r}\n" for v in sample.values)
    _emit(text, args.output, out)


def _emit(text, path, out):
    if path is None or path == "-":
        out.write(text)
        return
    try:
        with open(path, "w", newline="") as fh:
            fh.write(text)
    except OSError as exc:
        raise CliError(f"cannot write {path}: {exc.strerror or exc}") from None


def _positive_int(text):
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return value


def build_parser():
    parser = argparse.ArgumentParser(
        prog="memcentre",
        description="Find the origin that minimises the mean binary code length of 1-D data.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def data_flags(p):
        p.add_argument("input", help="one number per line, or a single-column CSV")
        p.add_argument("--bandwidth", type=float, default=None,
                       help="KDE bandwidth h (default: 2.35 s N^-1/5 rule)")
        p.add_argument("--grid-points", type=int, default=DEFAULT_GRID_POINTS)
        p.add_argument("--json", action="store_true", help="emit a JSON report")

    p = sub.add_parser("centre", help="run the IRLS solver")
    data_flags(p)
    p.add_argument("--epsilon", type=float, default=DEFAULT_EPSILON)
    p.add_argument("--max-iter", type=int, default=DEFAULT_MAX_ITERATIONS)
    p.add_argument("--init", type=parse_init, default="mean",
                   help="'mean' or a starting value")
    p.add_argument("--oracle", action="store_true", help="compare with the grid oracle")
    p.add_argument("--bits", action="store_true", help="report mean code lengths")
    p.add_argument("--accuracy", type=float, default=None,
                   help="coding accuracy for --bits (default: h/100)")
    p.add_argument("--trace", action="store_true", help="include the iterate history")
    p.set_defaults(func=cmd_centre)

    p = sub.add_parser("oracle", help="global minimum by grid search")
    data_flags(p)
    p.add_argument("--kind", choices=[k.value for k in ObjectiveKind], default="exact")
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("table1", help="solver vs oracle on synthetic mixtures")
    p.add_argument("--model", action="append", help="mixture such as 0.4N(-6,1)+0.6N(6,1)")
    p.add_argument("--n", type=_positive_int, default=500)
    p.add_argument("--seeds", type=_positive_int, default=10, help="number of seeds")
    p.add_argument("--first-seed", type=int, default=0)
    p.add_argument("--grid-points", type=int, default=DEFAULT_GRID_POINTS)
    p.add_argument("--workers", type=int, default=None)
    p.set_defaults(func=cmd_table1)

    p = sub.add_parser("plot-data", help="write curves as CSV")
    p.add_argument("--kind", choices=sorted(PLOT_COLUMNS), required=True)
    p.add_argument("--lo", type=float, default=None)
    p.add_argument("--hi", type=float, default=None)
    p.add_argument("--points", type=int, default=1001)
    p.add_argument("--input", default=None, help="data file for --kind objective")
    p.add_argument("--bandwidth", type=float, default=None)
    p.add_argument("--output", "-o", default=None)
    p.set_defaults(func=cmd_plot_data)

    p = sub.add_parser("sample", help="draw from a mixture model")
    p.add_argument("--model", required=True)
    p.add_argument("--n", type=int, default=500)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--output", "-o", default=None)
    p.set_defaults(func=cmd_sample)
    return parser


def main(argv=None, out=None, err=None):
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        args.func(args, out)
    except (MemcentreError, OverflowError) as exc:
        err.write(f"memcentre: error: {exc}\n")
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())

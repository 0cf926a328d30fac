"""Command-line front end.

    schneidermf digits --p 2 --num 2 --den 3 --n 10
    schneidermf dimension --p 2 --q 2 --beta 2.449489742783178
    schneidermf spectrum --p 3 --q 0 --beta-min 1 --beta-max 4 --steps 50
    schneidermf haar --p 5 --q -1 0 1 2
    schneidermf montecarlo --p 3 --q 2 --mode orbit --samples 1000 --orbit-length 200
    schneidermf validate

Exit status: 0 success, 1 numerical failure, 2 usage or domain error.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys

import numpy as np

from . import montecarlo as mc
from .errors import DomainError, NumericalFailure, PrecisionExhausted, SchneiderError
from .padic import DEFAULT_PRECISION, check_prime, from_rational
from .schneider import digits
from .spectrum import SpectrumPoint, dimension, haar_mean
from .validation import run_all

SPECTRUM_COLUMNS = ("q", "beta", "lambda", "mean_digit", "s_alpha", "dimension")

EXIT_OK, EXIT_NUMERIC, EXIT_USAGE = 0, 1, 2


def fmt(x) -> str:
    """Locale-independent text for CSV cells; floats keep 17 significant digits."""
    if isinstance(x, bool):
        return "true" if x else "false"
    if isinstance(x, (float, np.floating)):
        return format(float(x), ".17g")
    return str(x)


def _json_value(x):
    if isinstance(x, (float, np.floating)):
        x = float(x)
        return x if math.isfinite(x) else None
    if isinstance(x, (np.integer,)):
        return int(x)
    return x


def write_table(rows: list[dict], columns, fmt_name: str, out, meta: dict | None = None):
    if fmt_name == "json":
        doc = {k: _json_value(v) for k, v in (meta or {}).items()}
        doc["rows"] = [{c: _json_value(r[c]) for c in columns} for r in rows]
        out.write(json.dumps(doc, indent=2) + "\n")
        return
    w = csv.writer(out, lineterminator="\n")
    w.writerow(columns)
    for r in rows:
        w.writerow([fmt(r[c]) for c in columns])


def write_record(rec: dict, fmt_name: str, out):
    if fmt_name == "json":
        out.write(json.dumps({k: _json_value(v) for k, v in rec.items()}, indent=2) + "\n")
        return
    write_table([rec], list(rec), "csv", out)


def _point_row(pt: SpectrumPoint) -> dict:
    d = pt.as_dict()
    return {c: d[c] for c in SPECTRUM_COLUMNS}


# ----------------------------------------------------------------- commands

def cmd_digits(args, out):
    x = from_rational(args.num, args.den, args.p, args.precision)
    seq = digits(x, args.n)
    rows = [{"i": i + 1, "a": a, "b": b, "trusted": i < seq.trusted_count,
             "terminated": seq.terminated.value}
            for i, (a, b) in enumerate(seq.pairs)]
    write_table(rows, ("i", "a", "b", "trusted", "terminated"), args.format, out,
                meta={"p": args.p, "num": args.num, "den": args.den,
                      "terminated": seq.terminated.value,
                      "trusted_count": seq.trusted_count})


def cmd_dimension(args, out):
    pt = dimension(args.q, args.beta, args.p)
    rec = _point_row(pt)
    rec["p"] = args.p
    write_record(rec, args.format, out)


def cmd_spectrum(args, out):
    if args.steps < 2:
        raise DomainError("--steps must be at least 2")
    if not 1 <= args.beta_min < args.beta_max:
        raise DomainError("need 1 <= beta-min < beta-max")
    rows = [_point_row(dimension(args.q, float(b), args.p))
            for b in np.linspace(args.beta_min, args.beta_max, args.steps)]
    write_table(rows, SPECTRUM_COLUMNS, args.format, out, meta={"p": args.p, "q": args.q})


def cmd_haar(args, out):
    rows = []
    for q in args.q:
        h = haar_mean(q, args.p)
        rows.append({"q": float(q), "p": args.p, "haar_mean": h,
                     "dimension": dimension(q, h, args.p).dimension})
    write_table(rows, ("q", "p", "haar_mean", "dimension"), args.format, out,
                meta={"p": args.p})


def cmd_montecarlo(args, out):
    est = mc.estimate_mean(args.q, args.p, args.mode, args.samples, args.orbit_length,
                           args.seed, args.precision, args.workers)
    rec = est.as_dict()
    h = haar_mean(args.q, args.p)
    rec["haar_mean"] = h
    rec["z_score"] = (est.mean - h) / est.stderr if est.stderr > 0 else math.nan
    write_record(rec, args.format, out)


def cmd_validate(args, out):
    results = run_all(quick=args.quick)
    for r in results:
        print(r.line(), file=sys.stderr)
    rows = [r.as_dict() for r in results]
    write_table(rows, ("name", "passed", "worst", "tolerance", "seconds", "budget"),
                args.format, out, meta={"passed": all(r["passed"] for r in rows)})
    return EXIT_OK if all(r["passed"] for r in rows) else EXIT_NUMERIC


# ------------------------------------------------------------------ parsing

def _prime(text: str) -> int:
    try:
        return check_prime(int(text))
    except (ValueError, DomainError):
        raise argparse.ArgumentTypeError(f"{text!r} is not a prime") from None


def _positive_int(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError(f"{text!r} must be a positive integer")
    return v


def _finite(text: str) -> float:
    v = float(text)
    if not math.isfinite(v):
        raise argparse.ArgumentTypeError(f"{text!r} must be finite")
    return v


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="schneidermf",
        description="Multifractal spectrum of digit power means for the Schneider map on pZ_p.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(sp, p=True):
        if p:
            sp.add_argument("--p", type=_prime, required=True, help="prime p")
        sp.add_argument("--format", choices=("csv", "json"), default="csv")
        sp.add_argument("--output", default="-", help="output path ('-' for stdout)")

    sp = sub.add_parser("digits", help="Schneider digits of num/den")
    common(sp)
    sp.add_argument("--num", type=int, required=True)
    sp.add_argument("--den", type=int, default=1)
    sp.add_argument("--n", type=_positive_int, default=20, help="maximum number of pairs")
    sp.add_argument("--precision", type=_positive_int, default=DEFAULT_PRECISION)
    sp.set_defaults(func=cmd_digits)

    sp = sub.add_parser("dimension", help="dimension of one level set")
    common(sp)
    sp.add_argument("--q", type=_finite, required=True)
    sp.add_argument("--beta", type=_finite, required=True)
    sp.set_defaults(func=cmd_dimension)

    sp = sub.add_parser("spectrum", help="dimension over a beta grid")
    common(sp)
    sp.add_argument("--q", type=_finite, required=True)
    sp.add_argument("--beta-min", type=_finite, default=1.0)
    sp.add_argument("--beta-max", type=_finite, required=True)
    sp.add_argument("--steps", type=int, default=50)
    sp.set_defaults(func=cmd_spectrum)

    sp = sub.add_parser("haar", help="Haar-typical power means")
    common(sp)
    sp.add_argument("--q", type=_finite, nargs="+", default=[-1.0, 0.0, 1.0, 2.0])
    sp.set_defaults(func=cmd_haar)

    sp = sub.add_parser("montecarlo", help="Monte Carlo estimate of a Haar power mean")
    common(sp)
    sp.add_argument("--q", type=_finite, required=True)
    sp.add_argument("--mode", choices=[m.value for m in mc.SamplerMode],
                    default=mc.SamplerMode.DIGIT_MODEL.value)
    sp.add_argument("--samples", type=_positive_int, default=1000)
    sp.add_argument("--orbit-length", type=_positive_int, default=1000)
    sp.add_argument("--seed", type=int, default=mc.DEFAULT_SEED)
    sp.add_argument("--precision", type=int, default=mc.ORBIT_PRECISION)
    sp.add_argument("--workers", type=_positive_int, default=1)
    sp.set_defaults(func=cmd_montecarlo)

    sp = sub.add_parser("validate", help="run the validation suite")
    common(sp, p=False)
    sp.add_argument("--quick", action="store_true", help="smaller Monte Carlo samples")
    sp.set_defaults(func=cmd_validate)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "seed", 0) < 0:
        parser.error("--seed must be nonnegative")
    if getattr(args, "precision", 8) < 8 and args.command == "montecarlo":
        parser.error("--precision must be at least 8")
    buf = io.StringIO()
    try:
        status = args.func(args, buf)
    except (NumericalFailure, PrecisionExhausted) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except (DomainError, SchneiderError, ZeroDivisionError, ValueError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    text = buf.getvalue()
    if args.output == "-":
        sys.stdout.write(text)
    else:
        with open(args.output, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    return status or EXIT_OK


if __name__ == "__main__":
    sys.exit(main())

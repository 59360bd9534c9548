"""Command-line front end.

Quiver descriptors:

  K[m=3]                       Kronecker quiver with 3 arrows
  Q[m=1;a=2;b=3]               2 sources, 3 sinks, m arrows per pair
  BIP[m=1;src=2^1,1^2;snk=1^3] weighted bipartite quiver; a partition is a
                               comma list of weight^multiplicity terms

``--dim`` is a comma list such as ``1,2``; bipartite quivers default to the
all-ones vector.
"""
from __future__ import annotations

import argparse
import contextlib
import csv
import io
import json
import logging
import math
import sys
from fractions import Fraction

from . import closed_forms as cf
from . import reineke_engine
from .cache import ENV_VAR, DiskCache, resolve_cache_dir
from .errors import ComputationError
from .mps_formula import compare_poincare, euler_polynomial_in_m, mps_euler
from .quiver_model import all_ones, kronecker, parse_descriptor, parse_dimension_vector
from .suites import SUITE_NAMES, run_suite

log = logging.getLogger("kronecker_moduli")


class UsageError(Exception):
    pass


def _int_list(values: list[str]) -> list[int]:
    out = []
    for v in values:
        out.extend(int(x) for x in v.split(",") if x)
    return out


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json", "csv"), default="text")
    common.add_argument("--cache-dir", help=f"record cache directory (default: ${ENV_VAR} or ~/.cache/kronecker-moduli)")
    common.add_argument("--no-cache", action="store_true", help="neither read nor write the record cache")
    common.add_argument("--jobs", type=int, default=1, help="worker processes")

    parser = argparse.ArgumentParser(
        prog="kronecker-moduli",
        description="Exact Poincare polynomials and Euler characteristics of Kronecker and bipartite quiver moduli.",
        epilog=__doc__,
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    sub = parser.add_subparsers(dest="command", required=True)

    for name, help_ in (("poincare", "Poincare polynomial and Euler characteristic"), ("euler", "Euler characteristic")):
        p = sub.add_parser(name, parents=[common], help=help_)
        p.add_argument("--quiver", required=True, help="quiver descriptor, e.g. K[m=3]")
        p.add_argument("--dim", help="dimension vector, e.g. 1,2")

    p = sub.add_parser("mps", parents=[common], help="compare the MPS sum with the Reineke engine")
    p.add_argument("--a", type=int, required=True)
    p.add_argument("--b", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--level", choices=("poincare", "euler"), default="poincare")

    p = sub.add_parser("poly-in-m", parents=[common], help="chi(K^m(a,b)) as a polynomial in m")
    p.add_argument("--a", type=int, required=True)
    p.add_argument("--b", type=int, required=True)

    p = sub.add_parser("verify", parents=[common], help="run verification suites")
    p.add_argument("--suite", choices=SUITE_NAMES, default="all")

    p = sub.add_parser("table", parents=[common], help="asymptotic quantities over a list of m")
    p.add_argument("--quantity", choices=("ratio", "log-ratio", "douglas"), required=True)
    p.add_argument("--a", type=int, required=True)
    p.add_argument("--b", type=int, required=True)
    p.add_argument("--m-list", nargs="+", default=[], help="values of m, space or comma separated")
    return parser


# -- rendering -----------------------------------------------------------------

def _render(fmt: str, payload: dict, text: str, columns: list[str], rows: list[dict]) -> str:
    if fmt == "json":
        return json.dumps(payload, sort_keys=True, indent=2)
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.DictWriter(buf, fieldnames=columns, lineterminator="\n")
        writer.writeheader()
        for row in rows:
            writer.writerow({k: row.get(k, "") for k in columns})
        return buf.getvalue().rstrip("\n")
    return text


def _quiver_and_dim(args):
    try:
        Q = parse_descriptor(args.quiver)
        d = parse_dimension_vector(args.dim) if args.dim else None
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    if d is None:
        if Q.descriptor.startswith("K["):
            raise UsageError("--dim is required for Kronecker quivers")
        d = all_ones(Q)
    try:
        d = Q.check(d)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    return Q, d


def cmd_poincare(args) -> tuple[int, str]:
    Q, d = _quiver_and_dim(args)
    rec = reineke_engine.invariant_record(Q, d)
    payload = rec.to_json()
    text = f"P(q) = {rec.poincare.to_text('q')}\nchi = {rec.euler}"
    row = {"descriptor": rec.descriptor, "dim": ",".join(map(str, d)), "poincare": payload["poincare"], "euler": rec.euler}
    return 0, _render(args.format, payload, text, list(row), [row])


def cmd_euler(args) -> tuple[int, str]:
    Q, d = _quiver_and_dim(args)
    rec = reineke_engine.invariant_record(Q, d)
    row = {"descriptor": rec.descriptor, "dim": ",".join(map(str, d)), "euler": rec.euler}
    return 0, _render(args.format, rec.to_json(), str(rec.euler), list(row), [row])


def _check_coprime(a: int, b: int) -> None:
    if a < 1 or b < 1 or math.gcd(a, b) != 1:
        raise UsageError(f"(a, b) = ({a}, {b}) must be coprime positive integers")


def cmd_mps(args) -> tuple[int, str]:
    _check_coprime(args.a, args.b)
    if args.m < 1:
        raise UsageError("--m must be positive")
    if args.level == "euler":
        mps = mps_euler(args.a, args.b, args.m, jobs=args.jobs)
        reineke = reineke_engine.euler_characteristic(kronecker(args.m), (args.a, args.b))
        payload = {
            "a": args.a, "b": args.b, "m": args.m, "level": "euler",
            "mps": str(mps), "reineke": str(reineke), "agree": mps == reineke, "shift": None,
        }
    else:
        c = compare_poincare(args.a, args.b, args.m, jobs=args.jobs)
        payload = {
            "a": args.a, "b": args.b, "m": args.m, "level": "poincare",
            "mps": c.mps.to_text("y"), "reineke": c.reineke.to_text("y"),
            "agree": c.agree, "shift": c.shift,
            "mps_euler": str(c.mps_euler), "limit_matches_euler": c.limit_matches_euler,
        }
    text = "\n".join(
        f"{k}: {json.dumps(v) if isinstance(v, bool) or v is None else v}"
        for k, v in payload.items()
        if k not in ("a", "b", "m", "level")
    )
    code = 0 if payload["agree"] else 1
    return code, _render(args.format, payload, text, list(payload), [payload])


def cmd_poly_in_m(args) -> tuple[int, str]:
    _check_coprime(args.a, args.b)
    poly = euler_polynomial_in_m(args.a, args.b, jobs=args.jobs)
    n = poly.degree
    lead = Fraction(poly.coefficient(n))
    expected = Fraction(cf.chi_q1(args.a, args.b), math.factorial(args.a) * math.factorial(args.b))
    coefficients = [str(poly.coefficient(k)) for k in range(n + 1)]
    payload = {
        "a": args.a,
        "b": args.b,
        "polynomial": poly.to_text("m"),
        "coefficients": coefficients,
        "degree": n,
        "leading": str(lead),
        "expected_leading": str(expected),
        "leading_matches": lead == expected,
    }
    text = (
        f"chi(K^m({args.a},{args.b})) = {poly.to_text('m')}\n"
        f"leading coefficient {lead}, chi(Q1)/(a!b!) = {expected}: {'ok' if lead == expected else 'MISMATCH'}"
    )
    rows = [{"power": k, "coefficient": c} for k, c in enumerate(coefficients)]
    return (0 if lead == expected else 1), _render(args.format, payload, text, ["power", "coefficient"], rows)


def cmd_verify(args) -> tuple[int, str]:
    result = run_suite(args.suite, jobs=args.jobs)
    lines = [
        f"{'PASS' if c['passed'] else 'FAIL'}  [{c['criterion']}] {c['name']}" for c in result["checks"]
    ]
    lines.append(f"suite {args.suite}: {'passed' if result['passed'] else 'FAILED'}")
    rows = [{"name": c["name"], "criterion": c["criterion"], "passed": c["passed"]} for c in result["checks"]]
    return (0 if result["passed"] else 1), _render(args.format, result, "\n".join(lines), ["name", "criterion", "passed"], rows)


def cmd_table(args) -> tuple[int, str]:
    _check_coprime(args.a, args.b)
    if args.a + args.b < 2:
        raise UsageError("need a + b >= 2")
    try:
        ms = _int_list(args.m_list)
    except ValueError:
        raise UsageError(f"bad --m-list {args.m_list!r}") from None
    rows = []
    if args.quantity == "douglas":
        columns = ["a", "b", "douglas"]
        rows.append({"a": args.a, "b": args.b, "douglas": repr(cf.douglas_estimate(args.a, args.b))})
    else:
        if not ms:
            raise UsageError("--m-list is required for this quantity")
        if any(m < 1 for m in ms) or (args.quantity == "log-ratio" and any(m < 2 for m in ms)):
            raise UsageError("m out of range")
        if args.quantity == "ratio":
            columns = ["a", "b", "m", "ratio", "ratio_float"]
            for m in ms:
                r = cf.asymptotic_ratio(args.a, args.b, m)
                rows.append({"a": args.a, "b": args.b, "m": m, "ratio": str(r), "ratio_float": repr(float(r))})
        else:
            columns = ["a", "b", "m", "log_ratio"]
            for m in ms:
                rows.append({"a": args.a, "b": args.b, "m": m, "log_ratio": repr(cf.log_ratio(args.a, args.b, m))})
    text = "\n".join([" ".join(columns)] + [" ".join(str(r[c]) for c in columns) for r in rows])
    return 0, _render(args.format, {"quantity": args.quantity, "rows": rows}, text, columns, rows)


COMMANDS = {
    "poincare": cmd_poincare,
    "euler": cmd_euler,
    "mps": cmd_mps,
    "poly-in-m": cmd_poly_in_m,
    "verify": cmd_verify,
    "table": cmd_table,
}


def run(argv: list[str] | None = None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        with contextlib.redirect_stdout(stdout), contextlib.redirect_stderr(stderr):
            args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if args.jobs < 1:
        print("error: --jobs must be at least 1", file=stderr)
        return 2
    previous = reineke_engine._store
    reineke_engine.set_store(None if args.no_cache else DiskCache(resolve_cache_dir(args.cache_dir)))
    try:
        code, out = COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=stderr)
        return 2
    except ComputationError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=stderr)
        return 1
    finally:
        reineke_engine.set_store(previous)
    print(out, file=stdout)
    return code


def main() -> None:
    logging.basicConfig(level=logging.WARNING, format="%(levelname)s: %(message)s")
    sys.exit(run())


if __name__ == "__main__":
    main()

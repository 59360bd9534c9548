"""Verification suites run by ``kronecker-moduli verify``.

Each check is a module-level function returning a JSON-ready dict of details
and a pass flag.  Details only contain exact values rendered as strings, so
the suite output is byte-stable across runs, cache states and ``--jobs``.
"""
from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from typing import Callable

from . import closed_forms as cf
from . import reineke_engine
from .errors import StructureViolation
from .exact_arith import LaurentPolynomial, q_integer
from .mps_formula import (
    bipartite_chi,
    compare_poincare,
    euler_polynomial_in_m,
    mps_euler,
    scaled_bipartite_poincare,
)
from .quiver_model import Partition, all_ones, bipartite, kronecker, partition_pairs
from .reineke_engine import euler_characteristic, invariant_record, poincare_polynomial

Check = Callable[[], tuple[bool, dict]]


def check_sanity_family():
    rows = {}
    ok = True
    for m in range(1, 7):
        K = kronecker(m)
        p = poincare_polynomial(K, (1, 1))
        chi = euler_characteristic(K, (1, 1))
        point = poincare_polynomial(K, (1, 0))
        good = p == q_integer(m) and chi == m and point == 1
        ok &= good
        rows[f"m={m}"] = {"P(1,1)": p.to_text("q"), "chi(1,1)": str(chi), "P(1,0)": point.to_text("q"), "ok": good}
    return ok, rows


def check_routes_agree():
    cases = [
        (kronecker(1), (1, 1)),
        (kronecker(3), (1, 2)),
        (kronecker(2), (2, 3)),
        (kronecker(3), (2, 3)),
        (bipartite(Partition.trivial(2), Partition.trivial(3), 1), None),
        (bipartite(Partition.trivial(1), Partition.from_parts([2, 1]), 2), None),
    ]
    rows = {}
    ok = True
    for Q, d in cases:
        d = d or all_ones(Q)
        results = {meth: poincare_polynomial(Q, d, meth) for meth in ("prefix", "enumerate", "rational")}
        good = len(set(results.values())) == 1
        ok &= good
        rows[f"{Q.descriptor} d={','.join(map(str, d))}"] = {"P": results["prefix"].to_text("q"), "ok": good}
    return ok, rows


def structure_cases():
    cases = [(kronecker(m), (1, 1)) for m in range(1, 7)]
    cases += [(kronecker(m), (a, a + 1)) for a in (1, 2, 3) for m in (1, 2, 3, 4)]
    cases += [(kronecker(m), (a, b)) for a, b in ((1, 3), (3, 4)) for m in (1, 2, 3, 4)]
    for a, b in scaling_targets():
        for pair in partition_pairs(a, b):
            for m in (1, 2, 3, 4):
                Q = bipartite(pair.source, pair.sink, m)
                cases.append((Q, all_ones(Q)))
    for a, b in ((3, 4), (2, 5)):
        for pair in partition_pairs(a, b):
            Q = bipartite(pair.source, pair.sink, 1)
            cases.append((Q, all_ones(Q)))
    return cases


def check_structure():
    failures = []
    nonempty = 0
    for Q, d in structure_cases():
        rec = invariant_record(Q, d)
        try:
            reineke_engine.validate_record(Q, rec)
        except StructureViolation as exc:
            failures.append(str(exc))
        nonempty += not rec.poincare.is_zero
    return not failures, {"cases": str(len(structure_cases())), "nonempty": str(nonempty), "failures": failures}


MPS_POINCARE_CASES = ((1, 1, 1), (1, 1, 3), (1, 2, 2), (2, 3, 2))


def check_mps_poincare():
    rows = {}
    ok = True
    for a, b, m in MPS_POINCARE_CASES:
        c = compare_poincare(a, b, m)
        good = c.agree and c.limit_matches_euler
        ok &= good
        rows[f"({a},{b},{m})"] = {
            "mps": c.mps.to_text("y"),
            "reineke": c.reineke.to_text("y"),
            "shift": None if c.shift is None else str(c.shift),
            "y->1": str(c.mps.evaluate_at_one()),
            "mps_euler": str(c.mps_euler),
            "ok": good,
        }
    return ok, rows


def check_mps_euler():
    rows = {}
    ok = True
    for a, b in ((1, 1), (1, 2), (1, 3), (2, 3)):
        for m in range(1, 5):
            lhs = mps_euler(a, b, m)
            rhs = euler_characteristic(kronecker(m), (a, b))
            ok &= lhs == rhs
            rows[f"({a},{b},{m})"] = {"mps": str(lhs), "reineke": str(rhs), "ok": lhs == rhs}
    poly = euler_polynomial_in_m(1, 2)
    expected = LaurentPolynomial({2: Fraction(1, 2), 1: Fraction(-1, 2)})
    ok &= poly == expected
    rows["poly(1,2)"] = {"value": poly.to_text("m"), "ok": poly == expected}
    return ok, rows


def scaling_targets():
    return [(a, b) for a in range(1, 5) for b in range(1, 5) if a + b <= 5 and math.gcd(a, b) == 1]


def check_scaling():
    rows = {}
    ok = True
    for a, b in scaling_targets():
        for pair in partition_pairs(a, b):
            for m in (2, 3, 4):
                direct = bipartite_chi(pair, m, route="direct")
                scaled = m ** (pair.part_count - 1) * bipartite_chi(pair, 1, route="direct")
                Q = bipartite(pair.source, pair.sink, m)
                poly_ok = poincare_polynomial(Q, all_ones(Q)) == scaled_bipartite_poincare(pair, m)
                good = direct == scaled and poly_ok
                ok &= good
                rows[f"{Q.descriptor}"] = {"direct": str(direct), "scaled": str(scaled), "poincare_ok": poly_ok, "ok": good}
    return ok, rows


def check_weist():
    rows = {}
    ok = True
    for a in (1, 2, 3):
        for m in (1, 2, 3, 4):
            lhs = euler_characteristic(kronecker(m), (a, a + 1))
            rhs = cf.weist_chi(a, m)
            ok &= lhs == rhs
            rows[f"a={a},m={m}"] = {"reineke": str(lhs), "weist": str(rhs), "ok": lhs == rhs}
    return ok, rows


def check_staircase_two_row():
    rows = {}
    ok = True
    expected_staircase = {1: 1, 2: 6, 3: 96}
    for a, want in expected_staircase.items():
        direct = cf.chi_q1(a, a + 1)
        closed = cf.chi_q1_staircase(a)
        limit = cf.staircase_limit(a)
        good = direct == closed == want == limit
        ok &= good
        rows[f"Q1({a},{a + 1})"] = {"reineke": str(direct), "closed": str(closed), "limit": str(limit), "ok": good}
    direct = cf.chi_q1(2, 5)
    good = direct == cf.chi_q1_two_row(2) == 30
    ok &= good
    rows["Q1(2,5)"] = {"reineke": str(direct), "closed": str(cf.chi_q1_two_row(2)), "ok": good}
    shared = cf.chi_q1_staircase(2) == cf.chi_q1_two_row(1) == cf.chi_q1(2, 3)
    ok &= shared
    rows["Q1(2,3) shared"] = {"ok": shared}
    return ok, rows


def check_leading_coefficient():
    rows = {}
    ok = True
    for a, b in ((1, 2), (2, 3), (3, 4)):
        poly = euler_polynomial_in_m(a, b)
        n = a + b - 1
        lead = Fraction(poly.coefficient(n))
        want = Fraction(cf.chi_q1(a, b), math.factorial(a) * math.factorial(b))
        r50 = cf.asymptotic_ratio(a, b, 50)
        r100 = cf.asymptotic_ratio(a, b, 100)
        good = (
            poly.degree == n
            and lead == want
            and abs(r100 - 1) < Fraction(1, 10)
            and abs(r100 - 1) < abs(r50 - 1)
        )
        ok &= good
        rows[f"({a},{b})"] = {
            "polynomial": poly.to_text("m"),
            "leading": str(lead),
            "expected_leading": str(want),
            "ratio_50": str(r50),
            "ratio_100": str(r100),
            "ok": good,
        }
    return ok, rows


def check_error_bound():
    rows = {}
    ok = True
    for a, b in ((1, 2), (2, 3), (3, 4)):
        C = cf.asymptotic_error_constant(a, b)
        good = all(abs(cf.asymptotic_ratio(a, b, m) - 1) <= C / m for m in range(1, 201))
        ok &= good
        rows[f"({a},{b})"] = {"C": str(C), "ok": good}
    return ok, rows


DOUGLAS_EXPECTED = {(1, 2): -0.3466, (2, 3): -0.1733, (3, 4): -0.0676}


def check_log_asymptotics():
    rows = {}
    unit = all(cf.log_ratio(1, 1, m) == 1.0 for m in range(2, 51))
    big = cf.log_ratio(2, 3, 10**6)
    rows["log_ratio(1,1,m)==1"] = {"ok": unit}
    rows["log_ratio(2,3,10^6)"] = {"value": repr(big), "ok": abs(big - 1) < 0.05}
    ok = unit and abs(big - 1) < 0.05
    for (a, b), want in DOUGLAS_EXPECTED.items():
        got = cf.douglas_estimate(a, b)
        good = round(got, 4) == want
        ok &= good
        rows[f"douglas({a},{b})"] = {"value": repr(got), "expected": repr(want), "ok": good}
    return ok, rows


SUITES: dict[str, list[tuple[str, str, Check]]] = {
    "reineke": [
        ("sanity-family", "1", check_sanity_family),
        ("routes-agree", "-", check_routes_agree),
        ("structural-invariants", "9", check_structure),
    ],
    "mps": [
        ("mps-poincare", "3", check_mps_poincare),
        ("mps-euler", "4", check_mps_euler),
    ],
    "scaling": [
        ("scaling-in-m", "5", check_scaling),
    ],
    "closed-forms": [
        ("weist", "2", check_weist),
        ("staircase-two-row", "7", check_staircase_two_row),
    ],
    "asymptotics": [
        ("leading-coefficient", "6", check_leading_coefficient),
        ("error-bound", "-", check_error_bound),
        ("log-asymptotics", "8", check_log_asymptotics),
    ],
}
SUITE_NAMES = tuple(SUITES) + ("all",)


def checks_for(suite: str) -> list[tuple[str, str, Check]]:
    if suite == "all":
        return [c for name in SUITES for c in SUITES[name]]
    if suite not in SUITES:
        raise ValueError(f"unknown suite {suite!r}")
    return list(SUITES[suite])


def _run_one(index_suite: tuple[str, int]) -> dict:
    suite, index = index_suite
    name, criterion, fn = checks_for(suite)[index]
    try:
        passed, detail = fn()
    except Exception as exc:  # a failing check must not take the suite down
        passed, detail = False, {"error": f"{type(exc).__name__}: {exc}"}
    return {"name": name, "criterion": criterion, "passed": bool(passed), "detail": detail}


def run_suite(suite: str, jobs: int = 1) -> dict:
    checks = checks_for(suite)
    tasks = [(suite, i) for i in range(len(checks))]
    if jobs <= 1 or len(tasks) <= 1:
        results = [_run_one(t) for t in tasks]
    else:
        with ProcessPoolExecutor(
            max_workers=min(jobs, len(tasks)),
            initializer=reineke_engine.set_store,
            initargs=(reineke_engine._store,),
        ) as pool:
            results = list(pool.map(_run_one, tasks))
    return {"suite": suite, "passed": all(r["passed"] for r in results), "checks": results}

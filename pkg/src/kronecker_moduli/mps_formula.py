"""Kronecker invariants as weighted sums of bipartite-quiver invariants.

The Kronecker moduli ``K^m(a, b)`` is compared against a sum over pairs of
partitions ``(abar, bbar)`` of ``(a, b)``.  Each pair contributes the invariant
of the weighted bipartite quiver ``Q^m(abar, bbar)`` at the all-ones dimension
vector, times a weight that only depends on the partitions.

Poincare polynomials here are in ``y``; the Reineke engine works in
``q = y**2`` and results are mapped across with ``substitute_power(p, 2)``.
The bipartite invariants scale in ``m``: ``P_m(q) = P_1(q**m) * [m]_q**(S-1)``
with ``S`` the number of vertices, hence ``chi_m = m**(S-1) * chi_1``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import NonIntegerResult
from .exact_arith import (
    ONE,
    LaurentPolynomial,
    RationalFunction,
    exact_divide,
    q_integer,
    ratfun_to_laurent,
    substitute_power,
)
from .quiver_model import (
    Partition,
    PartitionPair,
    all_ones,
    bipartite,
    euler_form,
    kronecker,
    partition_pairs,
)
from .reineke_engine import invariant_records, poincare_polynomial

__all__ = [
    "MpsTerm",
    "PoincareComparison",
    "weight_factor_poincare",
    "weight_factor_euler",
    "bipartite_chi",
    "bipartite_records",
    "scaled_bipartite_poincare",
    "mps_terms",
    "mps_poincare",
    "mps_euler",
    "euler_polynomial_in_m",
    "compare_poincare",
]

Y = LaurentPolynomial.monomial(1)


def _require_coprime(a: int, b: int) -> None:
    if a < 1 or b < 1:
        raise ValueError("a and b must be positive")
    if math.gcd(a, b) != 1:
        raise ValueError(f"({a}, {b}) is not coprime")


def _symmetric_q_integer(l: int) -> LaurentPolynomial:
    """``(y**l - y**-l) / (y - y**-1)``, computed by exact division."""
    return exact_divide(Y ** l - Y ** -l, Y - Y ** -1)


def weight_factor_poincare(partition: Partition) -> RationalFunction:
    """``prod_l 1/a_l! * ((y - 1/y) / (l (y**l - y**-l)) * (-1)**(l-1))**a_l``.

    The factor ``y - 1/y`` is cancelled symbolically, leaving ``1 / (l [l]_y)``.
    """
    out = RationalFunction(ONE)
    for l, a in partition.parts:
        base = RationalFunction((-1) ** (l - 1), _symmetric_q_integer(l) * l)
        out = out * base ** a * Fraction(1, math.factorial(a))
    return out


def weight_factor_euler(partition: Partition) -> Fraction:
    """``prod_l 1/a_l! * (-1)**(a_l (l-1)) / l**(2 a_l)``."""
    out = Fraction(1)
    for l, a in partition.parts:
        out *= Fraction((-1) ** (a * (l - 1)), math.factorial(a) * l ** (2 * a))
    return out


def _pair_quiver(pair: PartitionPair, m: int):
    return bipartite(pair.source, pair.sink, m)


def bipartite_records(pairs: Sequence[PartitionPair], m: int, jobs: int = 1):
    quivers = [_pair_quiver(p, m) for p in pairs]
    return invariant_records([(Q, all_ones(Q)) for Q in quivers], jobs=jobs)


def bipartite_chi(pair: PartitionPair, m: int, route: str = "scaled") -> int:
    """Euler characteristic of ``Q^m(abar, bbar)``.

    ``route="scaled"`` scales the ``m = 1`` value by ``m**(S-1)``; ``route="direct"``
    runs the Reineke engine on the ``m``-quiver itself.
    """
    if route == "scaled":
        (rec,) = bipartite_records([pair], 1)
        return m ** (pair.part_count - 1) * rec.euler
    if route == "direct":
        (rec,) = bipartite_records([pair], m)
        return rec.euler
    raise ValueError(f"unknown route {route!r}")


def scaled_bipartite_poincare(pair: PartitionPair, m: int) -> LaurentPolynomial:
    """``P(Q^m, q)`` obtained from ``P(Q^1, q)`` by ``q -> q**m`` and the factor ``[m]_q**(S-1)``."""
    Q1 = _pair_quiver(pair, 1)
    p1 = poincare_polynomial(Q1, all_ones(Q1))
    return substitute_power(p1, m) * q_integer(m) ** (pair.part_count - 1)


@dataclass(frozen=True)
class MpsTerm:
    pair: PartitionPair
    quiver_invariant: object  # LaurentPolynomial (poincare level) or int (euler level)
    weight_factor: object  # RationalFunction or Fraction
    y_exponent: int = 0  # <(abar,bbar),(abar,bbar)>, poincare level only

    def value(self):
        if isinstance(self.quiver_invariant, LaurentPolynomial):
            return RationalFunction(self.quiver_invariant.shift(self.y_exponent)) * self.weight_factor
        return self.quiver_invariant * self.weight_factor


def mps_terms(a: int, b: int, m: int, level: str = "euler", route: str = "scaled", jobs: int = 1) -> list[MpsTerm]:
    _require_coprime(a, b)
    if m < 1:
        raise ValueError("m must be positive")
    pairs = partition_pairs(a, b)
    if level == "euler":
        if route == "scaled":
            recs = bipartite_records(pairs, 1, jobs=jobs)
            chis = [m ** (p.part_count - 1) * r.euler for p, r in zip(pairs, recs)]
        elif route == "direct":
            chis = [r.euler for r in bipartite_records(pairs, m, jobs=jobs)]
        else:
            raise ValueError(f"unknown route {route!r}")
        return [
            MpsTerm(p, chi, weight_factor_euler(p.source) * weight_factor_euler(p.sink))
            for p, chi in zip(pairs, chis)
        ]
    if level == "poincare":
        recs = bipartite_records(pairs, m, jobs=jobs)
        terms = []
        for p, rec in zip(pairs, recs):
            Q = _pair_quiver(p, m)
            d = all_ones(Q)
            terms.append(
                MpsTerm(
                    p,
                    substitute_power(rec.poincare, 2),
                    weight_factor_poincare(p.source) * weight_factor_poincare(p.sink),
                    euler_form(Q, d, d),
                )
            )
        return terms
    raise ValueError(f"unknown level {level!r}")


def mps_poincare(a: int, b: int, m: int, jobs: int = 1) -> LaurentPolynomial:
    """Right-hand side of the MPS identity as a Laurent polynomial in ``y``."""
    total = RationalFunction()
    for term in mps_terms(a, b, m, level="poincare", jobs=jobs):
        total = total + term.value()
    prefactor = -euler_form(kronecker(m), (a, b), (a, b))
    return ratfun_to_laurent(total).shift(prefactor)


def mps_euler(a: int, b: int, m: int, route: str = "scaled", jobs: int = 1) -> int:
    """Euler characteristic of ``K^m(a, b)`` from the Euler-level MPS sum."""
    total = sum((t.value() for t in mps_terms(a, b, m, "euler", route, jobs)), Fraction(0))
    if total.denominator != 1:
        raise NonIntegerResult(f"MPS Euler sum for ({a}, {b}, {m}) is {total}")
    return int(total)


def euler_polynomial_in_m(a: int, b: int, jobs: int = 1) -> LaurentPolynomial:
    """``chi(K^m(a, b))`` as an exact polynomial in ``m`` (the variable of the result)."""
    _require_coprime(a, b)
    pairs = partition_pairs(a, b)
    recs = bipartite_records(pairs, 1, jobs=jobs)
    poly: dict[int, Fraction] = {}
    for p, rec in zip(pairs, recs):
        k = p.part_count - 1
        w = weight_factor_euler(p.source) * weight_factor_euler(p.sink)
        poly[k] = poly.get(k, 0) + rec.euler * w
    return LaurentPolynomial(poly)


@dataclass(frozen=True)
class PoincareComparison:
    a: int
    b: int
    m: int
    mps: LaurentPolynomial
    reineke: LaurentPolynomial  # in y
    shift: int | None  # mps == reineke * y**shift, None if no monomial relates them
    mps_euler: int

    @property
    def agree(self) -> bool:
        return self.shift is not None

    @property
    def limit_matches_euler(self) -> bool:
        return self.mps.evaluate_at_one() == self.mps_euler


def monomial_shift(p: LaurentPolynomial, r: LaurentPolynomial) -> int | None:
    """The ``k`` with ``p == r * y**k``, or None."""
    if p.is_zero or r.is_zero:
        return 0 if p == r else None
    k = p.valuation - r.valuation
    return k if p == r.shift(k) else None


def compare_poincare(a: int, b: int, m: int, jobs: int = 1) -> PoincareComparison:
    mps = mps_poincare(a, b, m, jobs=jobs)
    reineke = substitute_power(poincare_polynomial(kronecker(m), (a, b)), 2)
    return PoincareComparison(a, b, m, mps, reineke, monomial_shift(mps, reineke), mps_euler(a, b, m, jobs=jobs))

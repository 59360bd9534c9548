"""Closed-form Euler characteristics and the large-``m`` asymptotics.

Everything is exact except :func:`log_ratio` and :func:`douglas_estimate`,
which return floats.  Python's ``math.log`` accepts arbitrarily large ints
(it splits off the binary exponent internally), so logarithms of huge Euler
characteristics never overflow.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .errors import DomainError, NonIntegerResult, ZeroDenominator
from .exact_arith import LaurentPolynomial, interpolate
from .quiver_model import Partition, all_ones, bipartite, kronecker
from .reineke_engine import euler_characteristic

__all__ = [
    "AsymptoticSample",
    "weist_chi",
    "weist_polynomial_in_m",
    "staircase_limit",
    "chi_q1_staircase",
    "chi_q1_two_row",
    "chi_q1",
    "kronecker_chi",
    "asymptotic_ratio",
    "asymptotic_error_constant",
    "log_ratio",
    "douglas_estimate",
    "sample",
]


def weist_chi(a: int, m: int) -> int:
    """``chi(K^m(a, a+1)) = m / ((a+1)((m-1)a + m)) * binom((m-1)**2 a + (m-1) m, a)``."""
    if a < 1 or m < 1:
        raise ValueError("a and m must be positive")
    n = (m - 1) ** 2 * a + (m - 1) * m
    value = Fraction(m * math.comb(n, a), (a + 1) * ((m - 1) * a + m))
    if value.denominator != 1:
        raise NonIntegerResult(f"Weist formula gave {value} at a={a}, m={m}")
    return int(value)


def weist_polynomial_in_m(a: int) -> LaurentPolynomial:
    """``weist_chi(a, m)`` as an exact polynomial in ``m`` of degree ``2a``."""
    xs = list(range(1, 2 * a + 2))
    return interpolate(xs, [weist_chi(a, m) for m in xs])


def staircase_limit(a: int) -> Fraction:
    """``lim a! (a+1)! chi(K^m(a, a+1)) / m**(2a)``, from the leading coefficient."""
    poly = weist_polynomial_in_m(a)
    if poly.degree != 2 * a:
        raise ArithmeticError(f"Weist polynomial for a={a} has degree {poly.degree}")
    return Fraction(poly.coefficient(2 * a)) * math.factorial(a) * math.factorial(a + 1)


def chi_q1_staircase(a: int) -> int:
    """``(a+1)! (a+1)**(a-2)``."""
    if a < 1:
        raise ValueError("a must be positive")
    value = Fraction(math.factorial(a + 1)) * Fraction(a + 1) ** (a - 2)
    if value.denominator != 1:
        raise NonIntegerResult(f"staircase formula gave {value} at a={a}")
    return int(value)


def chi_q1_two_row(a: int) -> int:
    """``chi(Q^1(2, 2a+1)) = (2a+1)! / a!**2``."""
    if a < 1:
        raise ValueError("a must be positive")
    q, r = divmod(math.factorial(2 * a + 1), math.factorial(a) ** 2)
    if r:
        raise NonIntegerResult(f"two-row formula is not integral at a={a}")
    return q


@lru_cache(maxsize=None)
def chi_q1(a: int, b: int) -> int:
    """Euler characteristic of the unweighted bipartite quiver ``Q^1(a, b)`` (Reineke engine)."""
    Q = bipartite(Partition.trivial(a), Partition.trivial(b), 1)
    return euler_characteristic(Q, all_ones(Q))


@lru_cache(maxsize=None)
def _kronecker_poly(a: int, b: int) -> LaurentPolynomial:
    from .mps_formula import euler_polynomial_in_m

    return euler_polynomial_in_m(a, b)


def kronecker_chi(a: int, b: int, m: int, route: str = "polynomial") -> int:
    """``chi(K^m(a, b))`` via the polynomial in ``m`` or directly via Reineke."""
    if route == "reineke":
        return euler_characteristic(kronecker(m), (a, b))
    if route != "polynomial":
        raise ValueError(f"unknown route {route!r}")
    value = _kronecker_poly(a, b).evaluate(m)
    if Fraction(value).denominator != 1:
        raise NonIntegerResult(f"chi(K^{m}({a},{b})) evaluated to {value}")
    return int(value)


def asymptotic_ratio(a: int, b: int, m: int) -> Fraction:
    """``a! b! chi(K^m(a, b)) / (m**(a+b-1) chi(Q^1(a, b)))``, exactly."""
    if a + b < 2:
        raise ValueError("need a + b >= 2")
    denom = m ** (a + b - 1) * chi_q1(a, b)
    if denom == 0:
        raise ZeroDenominator(f"chi(Q^1({a},{b})) = 0")
    return Fraction(math.factorial(a) * math.factorial(b) * kronecker_chi(a, b, m), denom)


def asymptotic_error_constant(a: int, b: int) -> Fraction:
    """``C`` with ``|asymptotic_ratio(a, b, m) - 1| <= C / m`` for every ``m >= 1``.

    Writing ``chi(K^m) = sum_i c_i m**i`` with top degree ``n``, the error is
    ``sum_{i<n} (c_i / c_n) m**(i-n)``, bounded by ``sum_{i<n} |c_i / c_n| / m``.
    """
    poly = _kronecker_poly(a, b)
    n = poly.degree
    lead = Fraction(poly.coefficient(n))
    return sum((abs(Fraction(c) / lead) for e, c in poly.terms.items() if e < n), Fraction(0))


def _log(x) -> float:
    x = Fraction(x)
    if x <= 0:
        raise DomainError(f"logarithm of non-positive value {x}")
    return math.log(x.numerator) - math.log(x.denominator)


def log_ratio(a: int, b: int, m: int) -> float:
    """``ln(chi(K^m(a, b))) / ((a+b-1) ln m)``."""
    if a + b < 2:
        raise ValueError("need a + b >= 2")
    if m < 2:
        raise ValueError("need m >= 2")
    chi = kronecker_chi(a, b, m)
    if chi <= 0:
        raise DomainError(f"chi(K^{m}({a},{b})) = {chi} is not positive")
    return _log(chi) / ((a + b - 1) * math.log(m))


def douglas_estimate(a: int, b: int) -> float:
    """``ln(chi(Q^1(a, b)) / (a! b!)) / (a + b - 1)``."""
    if a + b < 2:
        raise ValueError("need a + b >= 2")
    return _log(Fraction(chi_q1(a, b), math.factorial(a) * math.factorial(b))) / (a + b - 1)


@dataclass(frozen=True)
class AsymptoticSample:
    a: int
    b: int
    m: int
    ratio: Fraction
    log_ratio: float | None  # undefined for m = 1


def clear_caches() -> None:
    chi_q1.cache_clear()
    _kronecker_poly.cache_clear()


def sample(a: int, b: int, m: int) -> AsymptoticSample:
    return AsymptoticSample(a, b, m, asymptotic_ratio(a, b, m), log_ratio(a, b, m) if m >= 2 else None)

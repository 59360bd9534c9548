"""Poincare polynomials of stable moduli via Reineke's resolution of the HN recursion.

For a coprime-type dimension vector ``d`` the point count of the stable moduli
space, which is the Poincare polynomial in ``q = y**2``, is

    P(q) = (q - 1) * sum_{d^1 + ... + d^s = d admissible} (-1)**(s-1)
           * q**(-sum_{k <= l} <d^l, d^k>) * prod_k prod_v prod_{j=1}^{d^k_v} (1 - q**-j)**-1

Every term has a denominator dividing ``D = prod_v prod_{j=1}^{d_v} (1 - q**-j)``,
so all routes below sum numerators over ``D`` and divide once at the end.

Three routes compute the same sum:

``prefix`` (default)
    Dynamic programming over prefix sums.  Appending a part ``p`` to a prefix
    ``e`` multiplies by ``-q**-(<p,p> + <p,e>)`` and by the Gaussian binomials
    ``[e_v + p_v choose p_v]`` in ``q**-1``; these telescope to the q-multinomial
    ``D / prod_k (...)``.
``enumerate``
    Explicit depth-first enumeration of admissible decompositions, one term each.
``rational``
    Literal :class:`RationalFunction` summation.  Slow, kept as an oracle.
"""
from __future__ import annotations

import threading
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, Protocol, Sequence

from .errors import CoprimalityViolation, StructureViolation
from .exact_arith import (
    ONE,
    ZERO,
    LaurentPolynomial,
    RationalFunction,
    exact_divide,
    laurent_sum,
    ratfun_to_laurent,
)
from .quiver_model import Quiver, euler_form, is_coprime_type, sub_vectors, symplectic_form

__all__ = [
    "InvariantRecord",
    "admissible_decompositions",
    "iter_admissible_decompositions",
    "poincare_polynomial",
    "euler_characteristic",
    "invariant_record",
    "invariant_records",
    "validate_record",
    "set_store",
    "clear_memory_cache",
    "computed_records",
    "expected_dimension",
]

SCHEMA_VERSION = 1

Q_VAR = LaurentPolynomial.monomial(1)


@dataclass(frozen=True)
class InvariantRecord:
    descriptor: str
    dim: tuple
    poincare: LaurentPolynomial
    euler: int

    @property
    def key(self) -> str:
        return record_key(self.descriptor, self.dim)

    def to_json(self) -> dict:
        return {
            "descriptor": self.descriptor,
            "dim": list(self.dim),
            "poincare": self.poincare.to_text("q"),
            "euler": str(self.euler),
            "schema_version": SCHEMA_VERSION,
        }

    @classmethod
    def from_json(cls, data: dict) -> InvariantRecord:
        from .exact_arith import parse_laurent

        if data.get("schema_version") != SCHEMA_VERSION:
            raise ValueError(f"unsupported schema_version {data.get('schema_version')!r}")
        return cls(
            descriptor=data["descriptor"],
            dim=tuple(int(x) for x in data["dim"]),
            poincare=parse_laurent(data["poincare"], "q"),
            euler=int(data["euler"]),
        )


def record_key(descriptor: str, dim: Sequence[int]) -> str:
    return f"{descriptor}|{','.join(str(x) for x in dim)}"


class RecordStore(Protocol):
    def get(self, key: str) -> InvariantRecord | None: ...

    def put(self, key: str, record: InvariantRecord) -> None: ...


_memory: dict[str, InvariantRecord] = {}
_memory_lock = threading.Lock()
_store: RecordStore | None = None


def set_store(store: RecordStore | None) -> None:
    """Install (or remove) a persistent record store consulted after the in-memory cache."""
    global _store
    _store = store


def clear_memory_cache() -> None:
    with _memory_lock:
        _memory.clear()


def computed_records() -> list[InvariantRecord]:
    with _memory_lock:
        return list(_memory.values())


# -- enumeration ----------------------------------------------------------------

def iter_admissible_decompositions(Q: Quiver, d: Sequence[int]) -> Iterator[tuple]:
    """Depth-first, pruned: a prefix is only extended while it pairs positively with ``d``."""
    d = Q.check(d)
    if not any(d):
        raise ValueError("the zero dimension vector has no moduli space")

    def extend(prefix: tuple, parts: tuple):
        remaining = tuple(x - y for x, y in zip(d, prefix))
        for p in sub_vectors(remaining):
            if not any(p):
                continue
            new = tuple(x + y for x, y in zip(prefix, p))
            if new == d:
                yield parts + (p,)
            elif symplectic_form(Q, new, d) > 0:
                yield from extend(new, parts + (p,))

    yield from extend((0,) * len(d), ())


def admissible_decompositions(Q: Quiver, d: Sequence[int]) -> list[tuple]:
    return list(iter_admissible_decompositions(Q, d))


# -- q-analogue building blocks (all in q**-1) -----------------------------------

@lru_cache(maxsize=None)
def _qfactorial_inv(n: int) -> LaurentPolynomial:
    """``prod_{j=1}^{n} (1 - q**-j)``."""
    out = ONE
    for j in range(1, n + 1):
        out = out * LaurentPolynomial({0: 1, -j: -1})
    return out


@lru_cache(maxsize=None)
def _gaussian(n: int, k: int) -> LaurentPolynomial:
    """Gaussian binomial ``[n choose k]`` in the variable ``q**-1``."""
    if k == 0 or k == n:
        return ONE
    return exact_divide(_qfactorial_inv(n), _qfactorial_inv(k) * _qfactorial_inv(n - k))


def _common_denominator(d: Sequence[int]) -> LaurentPolynomial:
    out = ONE
    for x in d:
        out = out * _qfactorial_inv(x)
    return out


def expected_dimension(Q: Quiver, d: Sequence[int]) -> int:
    return 1 - euler_form(Q, d, d)


# -- the three routes ------------------------------------------------------------

def _prefix_numerator(Q: Quiver, d: tuple) -> LaurentPolynomial:
    n = len(d)
    zero = (0,) * n
    acc: dict[tuple, LaurentPolynomial] = {zero: ONE}
    for e in sub_vectors(d):
        g = acc.get(e)
        if g is None or e == d:
            continue
        del acc[e]
        if e != zero and symplectic_form(Q, e, d) <= 0:
            continue
        g = -g
        for p in sub_vectors(tuple(x - y for x, y in zip(d, e))):
            if not any(p):
                continue
            new = tuple(x + y for x, y in zip(e, p))
            factor = ONE
            for ev, pv in zip(e, p):
                if ev and pv:
                    factor = factor * _gaussian(ev + pv, pv)
            exponent = euler_form(Q, p, p) + euler_form(Q, p, e)
            term = (g * factor).shift(-exponent) if factor is not ONE else g.shift(-exponent)
            prev = acc.get(new)
            acc[new] = term if prev is None else prev + term
    # acc[d] carries (-1)**s; the formula wants (-1)**(s-1)
    return -acc.get(d, ZERO)


def _decomposition_exponent(Q: Quiver, parts: Sequence[Sequence[int]]) -> int:
    total = 0
    for l, dl in enumerate(parts):
        for dk in parts[: l + 1]:
            total += euler_form(Q, dl, dk)
    return total


def _enumerate_numerator(Q: Quiver, d: tuple) -> LaurentPolynomial:
    D = _common_denominator(d)
    multinomials: dict[tuple, LaurentPolynomial] = {}
    terms = []
    for parts in iter_admissible_decompositions(Q, d):
        key = tuple(sorted(parts))
        mult = multinomials.get(key)
        if mult is None:
            part_den = ONE
            for part in parts:
                part_den = part_den * _common_denominator(part)
            mult = multinomials[key] = exact_divide(D, part_den)
        sign = 1 if len(parts) % 2 else -1
        terms.append((mult * sign).shift(-_decomposition_exponent(Q, parts)))
    return laurent_sum(terms)


def _rational_sum(Q: Quiver, d: tuple) -> LaurentPolynomial:
    total = RationalFunction(ZERO)
    for parts in iter_admissible_decompositions(Q, d):
        sign = 1 if len(parts) % 2 else -1
        den = ONE
        for part in parts:
            den = den * _common_denominator(part)
        mono = LaurentPolynomial.monomial(-_decomposition_exponent(Q, parts), sign)
        total = total + RationalFunction(mono, den)
    return ratfun_to_laurent(total * (Q_VAR - 1))


def _compute(Q: Quiver, d: tuple, method: str) -> LaurentPolynomial:
    if method == "rational":
        return _rational_sum(Q, d)
    if method == "prefix":
        numerator = _prefix_numerator(Q, d)
    elif method == "enumerate":
        numerator = _enumerate_numerator(Q, d)
    else:
        raise ValueError(f"unknown method {method!r}")
    return exact_divide(numerator * (Q_VAR - 1), _common_denominator(d))


def _check_input(Q: Quiver, d: Sequence[int]) -> tuple:
    d = Q.check(d)
    if not any(d):
        raise ValueError("the zero dimension vector has no moduli space")
    if not is_coprime_type(Q, d):
        raise CoprimalityViolation(f"{Q.descriptor} dimension vector {d}: a proper sub-vector pairs to zero")
    return d


def validate_record(Q: Quiver, record: InvariantRecord) -> None:
    """Raise :class:`StructureViolation` unless the record looks like a smooth projective moduli space.

    An empty moduli space (zero polynomial) is accepted only when its expected
    dimension is negative.
    """
    p = record.poincare
    dim = expected_dimension(Q, record.dim)
    where = f"{record.descriptor} d={record.dim}"
    if record.euler != p.evaluate_at_one():
        raise StructureViolation(f"{where}: euler {record.euler} != P(1)")
    if p.is_zero:
        if dim >= 0:
            raise StructureViolation(f"{where}: empty moduli with expected dimension {dim}")
        return
    if not p.has_integer_coefficients() or any(c < 0 for c in p.terms.values()):
        raise StructureViolation(f"{where}: coefficients must be nonnegative integers, got {p}")
    if p.valuation != 0 or p.coefficient(0) != 1:
        raise StructureViolation(f"{where}: constant term must be 1, got {p}")
    if p.degree != dim:
        raise StructureViolation(f"{where}: degree {p.degree} != expected dimension {dim}")
    if not p.is_palindromic():
        raise StructureViolation(f"{where}: not palindromic: {p}")


def invariant_record(Q: Quiver, d: Sequence[int], method: str = "prefix") -> InvariantRecord:
    """Cached Poincare polynomial and Euler characteristic of the stable moduli of ``(Q, d)``.

    Only the default ``prefix`` route is cached; the other routes always recompute
    so they can serve as independent oracles.
    """
    d = _check_input(Q, d)
    key = record_key(Q.descriptor, d)
    if method == "prefix":
        with _memory_lock:
            hit = _memory.get(key)
        if hit is not None:
            return hit
        store = _store
        if store is not None:
            hit = store.get(key)
            if hit is not None:
                validate_record(Q, hit)
                with _memory_lock:
                    _memory.setdefault(key, hit)
                return hit
    poly = _compute(Q, d, method)
    record = InvariantRecord(Q.descriptor, d, poly, int(poly.evaluate_at_one()))
    validate_record(Q, record)
    if method == "prefix":
        with _memory_lock:
            record = _memory.setdefault(key, record)
        if _store is not None:
            _store.put(key, record)
    return record


def poincare_polynomial(Q: Quiver, d: Sequence[int], method: str = "prefix") -> LaurentPolynomial:
    """Poincare polynomial of the stable moduli space, as a polynomial in ``q = y**2``."""
    return invariant_record(Q, d, method).poincare


def euler_characteristic(Q: Quiver, d: Sequence[int], method: str = "prefix") -> int:
    return invariant_record(Q, d, method).euler


def _record_task(item) -> InvariantRecord:
    Q, d = item
    return invariant_record(Q, d)


def invariant_records(items: Sequence[tuple[Quiver, Sequence[int]]], jobs: int = 1) -> list[InvariantRecord]:
    """Records for many ``(Q, d)`` pairs, in input order.

    With ``jobs > 1`` the cache misses are computed in a process pool; results are
    exact, so the output does not depend on ``jobs``.
    """
    items = [(Q, Q.check(d)) for Q, d in items]
    results: list[InvariantRecord | None] = [None] * len(items)
    todo = []
    for i, (Q, d) in enumerate(items):
        with _memory_lock:
            results[i] = _memory.get(record_key(Q.descriptor, d))
        if results[i] is None:
            todo.append(i)
    if jobs <= 1 or len(todo) <= 1:
        for i in todo:
            results[i] = invariant_record(*items[i])
        return results
    with ProcessPoolExecutor(max_workers=min(jobs, len(todo)), initializer=set_store, initargs=(_store,)) as pool:
        computed = list(pool.map(_record_task, [items[i] for i in todo]))
    for i, rec in zip(todo, computed):
        with _memory_lock:
            results[i] = _memory.setdefault(rec.key, rec)
    return results

import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from kronecker_moduli import reineke_engine as re
from kronecker_moduli.errors import CoprimalityViolation, StructureViolation
from kronecker_moduli.exact_arith import ONE, ZERO, LaurentPolynomial, exact_divide, parse_laurent, q_integer
from kronecker_moduli.quiver_model import (
    Partition,
    all_ones,
    bipartite,
    is_admissible,
    kronecker,
    partition_pairs,
)

q = LaurentPolynomial.monomial(1)
METHODS = ("prefix", "enumerate", "rational")


def gaussian_binomial(n, k):
    """[n choose k]_q straight from the product formula."""
    if k < 0 or k > n:
        return ZERO
    num, den = ONE, ONE
    for i in range(k):
        num *= 1 - q ** (n - i)
        den *= 1 - q ** (i + 1)
    return exact_divide(num, den)


def brute_decompositions(Q, d):
    """Every ordered decomposition into nonzero parts, filtered by admissibility."""
    subs = [e for e in itertools.product(*(range(x + 1) for x in d)) if any(e)]
    out = []

    def grow(parts, rest):
        if not any(rest):
            if is_admissible(Q, d, parts):
                out.append(tuple(parts))
            return
        for e in subs:
            if all(x <= r for x, r in zip(e, rest)):
                grow(parts + [e], tuple(r - x for r, x in zip(rest, e)))

    grow([], tuple(d))
    return sorted(out)


@pytest.mark.parametrize(
    "Q,d",
    [
        (kronecker(1), (1, 1)),
        (kronecker(2), (1, 2)),
        (kronecker(3), (2, 3)),
        (bipartite(Partition.trivial(2), Partition.trivial(1), 1), (1, 1, 1)),
        (bipartite(Partition.trivial(1), Partition.from_parts([2, 1]), 2), (1, 1, 1)),
    ],
)
def test_decompositions_match_brute_force(Q, d):
    assert sorted(re.admissible_decompositions(Q, d)) == brute_decompositions(Q, d)


def test_small_examples():
    assert re.poincare_polynomial(kronecker(1), (1, 1)) == ONE
    assert re.euler_characteristic(kronecker(1), (1, 1)) == 1
    assert re.poincare_polynomial(kronecker(2), (1, 1)) == 1 + q
    assert re.euler_characteristic(kronecker(2), (1, 1)) == 2
    for m in range(1, 6):
        assert re.poincare_polynomial(kronecker(m), (1, 0)) == ONE
        assert re.poincare_polynomial(kronecker(m), (1, 1)) == q_integer(m)


def test_q1_two_three():
    Q = bipartite(Partition.trivial(2), Partition.trivial(3), 1)
    rec = re.invariant_record(Q, all_ones(Q))
    assert rec.euler == 6
    assert rec.poincare.degree == re.expected_dimension(Q, all_ones(Q)) == 2
    assert rec.poincare.evaluate_at_one() == 6


@pytest.mark.parametrize("m,k", [(m, k) for m in range(1, 6) for k in range(1, 7)])
def test_grassmannian_oracle(m, k):
    # K^m(1, k) parametrizes k-dimensional subspaces of an m-dimensional space
    assert re.poincare_polynomial(kronecker(m), (1, k)) == gaussian_binomial(m, k)


@pytest.mark.parametrize("m", range(2, 7))
def test_projective_spaces(m):
    assert re.poincare_polynomial(kronecker(m), (1, 1)) == gaussian_binomial(m, 1)
    assert re.euler_characteristic(kronecker(m), (1, m - 1)) == m


@pytest.mark.parametrize(
    "Q,d",
    [(kronecker(m), (a, b)) for m in (1, 2, 3) for a, b in ((1, 2), (2, 1), (2, 3), (3, 2), (1, 3))]
    + [(bipartite(p.source, p.sink, m), None) for p in partition_pairs(2, 3) for m in (1, 2)],
)
def test_routes_agree(Q, d):
    d = d or all_ones(Q)
    results = [re.poincare_polynomial(Q, d, method) for method in METHODS]
    assert results[0] == results[1] == results[2]


def test_records_satisfy_structure():
    for a, b in ((1, 2), (2, 3), (3, 4), (2, 5)):
        for pair in partition_pairs(a, b):
            Q = bipartite(pair.source, pair.sink, 1)
            rec = re.invariant_record(Q, all_ones(Q))
            re.validate_record(Q, rec)
            if not rec.poincare.is_zero:
                assert rec.poincare.is_palindromic()
                assert rec.poincare.coefficient(0) == 1


def test_empty_moduli_only_when_dimension_negative():
    Q = kronecker(1)
    rec = re.invariant_record(Q, (2, 3))
    assert rec.poincare.is_zero and re.expected_dimension(Q, (2, 3)) < 0


def test_validate_record_rejects_bad_records():
    Q = kronecker(2)
    good = re.invariant_record(Q, (1, 1))
    for poly in (q, 1 + 2 * q, 1 + q + q**2, ZERO, 1 - q + q**2):
        bad = re.InvariantRecord(good.descriptor, good.dim, poly, int(poly.evaluate_at_one()))
        with pytest.raises(StructureViolation):
            re.validate_record(Q, bad)
    with pytest.raises(StructureViolation):
        re.validate_record(Q, re.InvariantRecord(good.descriptor, good.dim, good.poincare, 3))


def test_non_coprime_rejected():
    with pytest.raises(CoprimalityViolation):
        re.poincare_polynomial(kronecker(3), (2, 2))
    Q = bipartite(Partition.trivial(2), Partition.trivial(2), 1)
    with pytest.raises(CoprimalityViolation):
        re.invariant_record(Q, all_ones(Q))


def test_bad_inputs_rejected():
    with pytest.raises(ValueError):
        re.poincare_polynomial(kronecker(2), (0, 0))
    with pytest.raises(ValueError):
        re.poincare_polynomial(kronecker(2), (1, -1))
    with pytest.raises(ValueError):
        re.poincare_polynomial(kronecker(2), (1, 1), method="nope")


def test_record_json_round_trip():
    rec = re.invariant_record(kronecker(3), (2, 3))
    data = rec.to_json()
    assert data["schema_version"] == re.SCHEMA_VERSION
    assert data["dim"] == [2, 3]
    assert parse_laurent(data["poincare"], "q") == rec.poincare
    assert re.InvariantRecord.from_json(data) == rec
    with pytest.raises(ValueError):
        re.InvariantRecord.from_json({**data, "schema_version": 99})


class _CountingStore:
    def __init__(self):
        self.data, self.gets, self.puts = {}, 0, 0

    def get(self, key):
        self.gets += 1
        return self.data.get(key)

    def put(self, key, record):
        self.puts += 1
        self.data[key] = record


def test_store_is_consulted_and_filled():
    store = _CountingStore()
    re.clear_memory_cache()
    re.set_store(store)
    try:
        first = re.invariant_record(kronecker(3), (1, 2))
        assert store.puts == 1
        re.clear_memory_cache()
        second = re.invariant_record(kronecker(3), (1, 2))
        assert second == first and store.puts == 1 and store.gets == 2
    finally:
        re.set_store(None)


def test_parallel_records_match_serial():
    items = [(bipartite(p.source, p.sink, 2), None) for p in partition_pairs(2, 3)]
    items = [(Q, all_ones(Q)) for Q, _ in items]
    re.clear_memory_cache()
    parallel = re.invariant_records(items, jobs=3)
    re.clear_memory_cache()
    serial = re.invariant_records(items, jobs=1)
    assert parallel == serial


@settings(max_examples=30, deadline=None)
@given(st.integers(1, 4), st.integers(1, 4), st.integers(1, 4))
def test_duality_and_palindromy(m, a, b):
    # swapping the dimension vector reverses arrows; the moduli are isomorphic
    K = kronecker(m)
    try:
        p = re.poincare_polynomial(K, (a, b))
    except CoprimalityViolation:
        return
    assert p == re.poincare_polynomial(K, (b, a))
    assert p.is_zero or p.is_palindromic()

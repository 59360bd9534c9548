import itertools
import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from kronecker_moduli.quiver_model import (
    Partition,
    Quiver,
    Vertex,
    all_ones,
    bipartite,
    euler_form,
    is_admissible,
    is_coprime_type,
    kronecker,
    parse_descriptor,
    parse_partition,
    partition_pairs,
    partitions,
    sub_vectors,
    symplectic_form,
)


def test_kronecker_shapes():
    K1 = kronecker(1)
    assert K1.num_vertices == 2 and K1.arrows == {(0, 1): 1}
    K3 = kronecker(3)
    assert K3.arrows == {(0, 1): 3}
    assert K3.weights == (1, 1)
    assert K3.descriptor == "K[m=3]"
    with pytest.raises(ValueError):
        kronecker(0)


def test_bipartite_reduces_to_kronecker():
    Q = bipartite(Partition.trivial(1), Partition.trivial(1), 5)
    assert Q.arrows == kronecker(5).arrows


def test_bipartite_weighted_sink():
    Q = bipartite(Partition.trivial(1), Partition.from_parts([2]), 1)
    assert Q.weights == (1, 2)
    assert Q.arrows == {(0, 1): 2}


def test_bipartite_complete_two_by_three():
    Q = bipartite(Partition.trivial(2), Partition.trivial(3), 1)
    assert Q.num_vertices == 5
    assert Q.arrows == {(i, j): 1 for i in range(2) for j in range(2, 5)}
    assert Q.descriptor == "BIP[m=1;src=1^2;snk=1^3]"


def test_bipartite_vertex_order_descending_weight():
    Q = bipartite(Partition.from_parts([1, 3, 1]), Partition.from_parts([2, 1]), 2)
    assert [v.side for v in Q.vertices] == ["source"] * 3 + ["sink"] * 2
    assert Q.weights == (3, 1, 1, 2, 1)
    assert Q.arrows[(0, 3)] == 2 * 3 * 2


def test_bipartite_arrows_must_point_to_sinks():
    with pytest.raises(ValueError):
        Quiver((Vertex(0, 1, "sink"), Vertex(1, 1, "source")), {(0, 1): 1})


def test_euler_form_examples():
    K2 = kronecker(2)
    assert euler_form(K2, (1, 1), (1, 1)) == 0
    for m in range(1, 5):
        for a, b in itertools.product(range(4), repeat=2):
            assert euler_form(kronecker(m), (a, b), (a, b)) == a * a + b * b - m * a * b
    Q = bipartite(Partition.trivial(2), Partition.trivial(3), 1)
    assert euler_form(Q, all_ones(Q), (0,) * 5) == 0
    with pytest.raises(ValueError):
        euler_form(K2, (1,), (1, 1))


def test_symplectic_form_examples():
    for m in range(1, 5):
        assert symplectic_form(kronecker(m), (1, 0), (0, 1)) == m
    K = kronecker(3)
    assert symplectic_form(K, (2, 5), (2, 5)) == 0
    Q = bipartite(Partition.trivial(2), Partition.trivial(3), 1)
    assert symplectic_form(Q, (1, 0, 1, 0, 0), all_ones(Q)) == 1


def _brute_partitions(n):
    found = set()
    for k in range(1, n + 1):
        for combo in itertools.combinations_with_replacement(range(1, n + 1), k):
            if sum(combo) == n:
                found.add(tuple(sorted(combo, reverse=True)))
    return found


def test_partitions_examples():
    assert partitions(1) == [Partition.from_parts([1])]
    assert partitions(2) == [Partition.from_parts([2]), Partition.from_parts([1, 1])]
    assert len(partitions(4)) == 5


@pytest.mark.parametrize("n", range(1, 10))
def test_partitions_match_brute_force(n):
    got = [tuple(p.weights()) for p in partitions(n)]
    assert set(got) == _brute_partitions(n)
    assert got == sorted(got, reverse=True)
    assert all(p.total == n for p in partitions(n))


def test_partition_fields():
    p = Partition.from_multiplicities({2: 1, 1: 3})
    assert p.total == 5 and p.part_count == 4
    assert str(p) == "2^1,1^3"
    assert parse_partition("1^3, 2") == p
    with pytest.raises(ValueError):
        Partition(((0, 1),))


def test_is_admissible_examples():
    K1 = kronecker(1)
    assert is_admissible(K1, (1, 1), [(1, 0), (0, 1)])
    assert not is_admissible(K1, (1, 1), [(0, 1), (1, 0)])
    assert is_admissible(kronecker(4), (3, 2), [(3, 2)])
    assert not is_admissible(K1, (1, 1), [(1, 0)])


@pytest.mark.parametrize("a,b", [(a, b) for a in range(1, 9) for b in range(1, 9) if a + b <= 9 and math.gcd(a, b) == 1])
def test_coprime_all_ones_has_no_zero_pairing(a, b):
    # exhaustive over 0/1 sub-vectors, every partition pair
    for pair in partition_pairs(a, b):
        Q = bipartite(pair.source, pair.sink, 1)
        d = all_ones(Q)
        for e in itertools.product((0, 1), repeat=Q.num_vertices):
            if any(e) and e != d:
                assert symplectic_form(Q, e, d) != 0
        assert is_coprime_type(Q, d)


def test_non_coprime_detected():
    assert not is_coprime_type(kronecker(3), (2, 2))
    Q = bipartite(Partition.trivial(2), Partition.trivial(2), 1)
    assert not is_coprime_type(Q, all_ones(Q))


def test_admissibility_is_independent_of_m():
    pair = partition_pairs(2, 3)[3]
    quivers = [bipartite(pair.source, pair.sink, m) for m in (1, 2, 3)]
    d = all_ones(quivers[0])
    n = len(d)
    subsets = [e for e in itertools.product((0, 1), repeat=n) if any(e)]
    for first in subsets:
        rest = tuple(x - y for x, y in zip(d, first))
        if not any(rest):
            continue
        decomposition = [first, rest]
        verdicts = {is_admissible(Q, d, decomposition) for Q in quivers}
        assert len(verdicts) == 1


vectors = st.lists(st.integers(0, 4), min_size=5, max_size=5).map(tuple)
quivers = st.sampled_from(
    [kronecker(2)]
    + [bipartite(p.source, p.sink, m) for p in partition_pairs(2, 3) if p.part_count == 5 for m in (1, 3)]
)


@given(vectors, vectors, vectors, st.integers(-3, 3))
def test_forms_are_bilinear(d, e, f, k):
    Q = bipartite(Partition.trivial(2), Partition.trivial(3), 2)
    de = tuple(x + y for x, y in zip(d, e))
    assert euler_form(Q, de, f) == euler_form(Q, d, f) + euler_form(Q, e, f)
    assert euler_form(Q, f, de) == euler_form(Q, f, d) + euler_form(Q, f, e)
    assert symplectic_form(Q, de, f) == symplectic_form(Q, d, f) + symplectic_form(Q, e, f)
    kd = tuple(k * x for x in d)
    assert symplectic_form(Q, kd, e) == k * symplectic_form(Q, d, e)


@given(quivers, vectors, vectors)
def test_symplectic_antisymmetric(Q, d, e):
    d, e = d[: Q.num_vertices], e[: Q.num_vertices]
    assert symplectic_form(Q, d, e) == -symplectic_form(Q, e, d)
    assert symplectic_form(Q, d, d) == 0
    assert symplectic_form(Q, d, e) == euler_form(Q, e, d) - euler_form(Q, d, e)


def test_sub_vectors_lexicographic():
    assert list(sub_vectors((1, 2))) == [(0, 0), (0, 1), (0, 2), (1, 0), (1, 1), (1, 2)]


def test_descriptor_round_trip():
    for text in ("K[m=3]", "BIP[m=1;src=1^2;snk=1^3]", "BIP[m=2;src=2^1,1^1;snk=3^1]"):
        assert parse_descriptor(text).descriptor == text
    assert parse_descriptor("Q[m=1;a=2;b=3]") == bipartite(Partition.trivial(2), Partition.trivial(3), 1)
    assert parse_descriptor("BIP[m=1;src=1,1;snk=1^3]").descriptor == "BIP[m=1;src=1^2;snk=1^3]"
    for bad in ("K[m=0]", "K3", "BIP[m=1;src=;snk=1]", "Q[m=1;a=0;b=1]"):
        with pytest.raises(ValueError):
            parse_descriptor(bad)

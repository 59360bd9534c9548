"""Quivers, dimension vectors, partitions and the weighted bipartite construction.

Dimension vectors are plain tuples of nonnegative ints, one entry per vertex in
the quiver's vertex order.  Denef stability never appears numerically: a
sub-vector ``e`` is destabilizing-side or not according to the sign of
``symplectic_form(Q, e, d)``.
"""
from __future__ import annotations

import itertools
import re
from dataclasses import dataclass, field
from typing import Iterator, Mapping, Sequence

__all__ = [
    "Vertex",
    "Quiver",
    "Partition",
    "PartitionPair",
    "kronecker",
    "bipartite",
    "euler_form",
    "symplectic_form",
    "partitions",
    "partition_pairs",
    "is_admissible",
    "is_coprime_type",
    "sub_vectors",
    "all_ones",
    "parse_descriptor",
    "parse_partition",
    "parse_dimension_vector",
]

DimensionVector = tuple


@dataclass(frozen=True)
class Vertex:
    id: int
    weight: int = 1
    side: str = "plain"  # "source", "sink" or "plain"


@dataclass(frozen=True)
class Partition:
    """Multiplicity vector: ``parts[l] = a_l`` copies of the part ``l``.

    Stored as a tuple of ``(l, a_l)`` pairs sorted by descending ``l``.
    """

    parts: tuple[tuple[int, int], ...]

    def __post_init__(self):
        merged: dict[int, int] = {}
        for l, a in self.parts:
            if l < 1 or a < 1:
                raise ValueError(f"part sizes and multiplicities must be positive, got {l}^{a}")
            merged[l] = merged.get(l, 0) + a
        object.__setattr__(self, "parts", tuple(sorted(merged.items(), reverse=True)))

    @classmethod
    def from_multiplicities(cls, mult: Mapping[int, int]) -> Partition:
        return cls(tuple((l, a) for l, a in mult.items() if a))

    @classmethod
    def from_parts(cls, parts: Sequence[int]) -> Partition:
        counts: dict[int, int] = {}
        for p in parts:
            counts[p] = counts.get(p, 0) + 1
        return cls(tuple(counts.items()))

    @classmethod
    def trivial(cls, n: int) -> Partition:
        """``n`` parts of size one."""
        return cls(((1, n),))

    @property
    def multiplicities(self) -> dict[int, int]:
        return dict(self.parts)

    @property
    def total(self) -> int:
        return sum(l * a for l, a in self.parts)

    @property
    def part_count(self) -> int:
        return sum(a for _, a in self.parts)

    def weights(self) -> list[int]:
        """Part sizes in descending order, repeated by multiplicity."""
        return [l for l, a in self.parts for _ in range(a)]

    def __str__(self):
        return ",".join(f"{l}^{a}" for l, a in self.parts)


@dataclass(frozen=True)
class PartitionPair:
    source: Partition
    sink: Partition

    @property
    def part_count(self) -> int:
        return self.source.part_count + self.sink.part_count

    def __str__(self):
        return f"({self.source};{self.sink})"


@dataclass(frozen=True)
class Quiver:
    """Acyclic quiver with weighted vertices and arrow multiplicities.

    ``arrows`` maps a pair of vertex indices ``(i, j)`` to the number of arrows
    from vertex ``i`` to vertex ``j``.
    """

    vertices: tuple[Vertex, ...]
    arrows: Mapping[tuple[int, int], int]
    descriptor: str = ""
    _arrow_items: tuple = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        n = len(self.vertices)
        clean = {}
        for (i, j), k in dict(self.arrows).items():
            if not (0 <= i < n and 0 <= j < n):
                raise ValueError(f"arrow ({i}, {j}) references a missing vertex")
            if k < 0:
                raise ValueError("arrow multiplicities must be nonnegative")
            if i == j and k:
                raise ValueError("loops are not supported")
            if k:
                clean[(i, j)] = k
        sides = [v.side for v in self.vertices]
        for i, j in clean:
            if "plain" not in (sides[i], sides[j]) and (sides[i], sides[j]) != ("source", "sink"):
                raise ValueError("bipartite arrows must run from source to sink")
        object.__setattr__(self, "arrows", dict(sorted(clean.items())))
        object.__setattr__(self, "_arrow_items", tuple(sorted(clean.items())))
        if not self.descriptor:
            object.__setattr__(self, "descriptor", _generic_descriptor(self))

    @property
    def num_vertices(self) -> int:
        return len(self.vertices)

    @property
    def weights(self) -> tuple[int, ...]:
        return tuple(v.weight for v in self.vertices)

    def arrow_items(self) -> tuple:
        return self._arrow_items

    def check(self, d: Sequence[int]) -> DimensionVector:
        d = tuple(int(x) for x in d)
        if len(d) != self.num_vertices:
            raise ValueError(f"dimension vector {d} has {len(d)} entries, quiver has {self.num_vertices} vertices")
        if any(x < 0 for x in d):
            raise ValueError(f"dimension vector {d} has a negative entry")
        return d

    def __hash__(self):
        return hash((self.vertices, self._arrow_items))

    def __eq__(self, other):
        if not isinstance(other, Quiver):
            return NotImplemented
        return self.vertices == other.vertices and self._arrow_items == other._arrow_items


def _generic_descriptor(Q: Quiver) -> str:
    arrows = ";".join(f"{i}>{j}:{k}" for (i, j), k in sorted(Q.arrows.items()))
    weights = ",".join(str(v.weight) for v in Q.vertices)
    return f"GEN[n={Q.num_vertices};w={weights};{arrows}]"


def kronecker(m: int) -> Quiver:
    """The ``m``-Kronecker quiver: vertex 0 (source) with ``m`` arrows to vertex 1 (sink)."""
    if m < 1:
        raise ValueError("the Kronecker quiver needs m >= 1 arrows")
    return Quiver(
        vertices=(Vertex(0, 1, "source"), Vertex(1, 1, "sink")),
        arrows={(0, 1): m},
        descriptor=f"K[m={m}]",
    )


def bipartite(source: Partition, sink: Partition, m: int) -> Quiver:
    """Weighted bipartite quiver with ``m * w(v) * w(v')`` arrows from each source to each sink.

    Sources come first, then sinks; each block lists weights in descending order.
    """
    if m < 1:
        raise ValueError("m must be a positive integer")
    src = source.weights()
    snk = sink.weights()
    vertices = tuple(Vertex(i, w, "source") for i, w in enumerate(src)) + tuple(
        Vertex(len(src) + j, w, "sink") for j, w in enumerate(snk)
    )
    arrows = {
        (i, len(src) + j): m * wi * wj
        for i, wi in enumerate(src)
        for j, wj in enumerate(snk)
    }
    return Quiver(vertices, arrows, descriptor=f"BIP[m={m};src={source};snk={sink}]")


def all_ones(Q: Quiver) -> DimensionVector:
    return (1,) * Q.num_vertices


def euler_form(Q: Quiver, d: Sequence[int], e: Sequence[int]) -> int:
    """``sum_v d_v e_v - sum_{i->j} mult * d_i e_j``."""
    n = Q.num_vertices
    if len(d) != n or len(e) != n:
        raise ValueError("dimension vectors must match the quiver's vertex count")
    value = sum(x * y for x, y in zip(d, e))
    for (i, j), k in Q._arrow_items:
        value -= k * d[i] * e[j]
    return value


def symplectic_form(Q: Quiver, d: Sequence[int], e: Sequence[int]) -> int:
    """``<e, d> - <d, e>``; positive exactly when ``d`` has the larger slope."""
    n = Q.num_vertices
    if len(d) != n or len(e) != n:
        raise ValueError("dimension vectors must match the quiver's vertex count")
    value = 0
    for (i, j), k in Q._arrow_items:
        value += k * (d[i] * e[j] - e[i] * d[j])
    return value


def partitions(n: int) -> list[Partition]:
    """All partitions of ``n`` in descending-lexicographic order of their parts."""
    if n < 1:
        raise ValueError("n must be positive")
    return [Partition.from_parts(p) for p in _descending_parts(n, n)]


def _descending_parts(n: int, largest: int) -> Iterator[tuple[int, ...]]:
    if n == 0:
        yield ()
        return
    for first in range(min(n, largest), 0, -1):
        for rest in _descending_parts(n - first, first):
            yield (first,) + rest


def partition_pairs(a: int, b: int) -> list[PartitionPair]:
    return [PartitionPair(pa, pb) for pa in partitions(a) for pb in partitions(b)]


def sub_vectors(d: Sequence[int]) -> Iterator[DimensionVector]:
    """Every ``e`` with ``0 <= e <= d`` componentwise, in lexicographic order."""
    return itertools.product(*(range(x + 1) for x in d))


def is_admissible(Q: Quiver, d: Sequence[int], decomposition: Sequence[Sequence[int]]) -> bool:
    """Parts sum to ``d`` and every proper prefix sum pairs strictly positively with ``d``."""
    d = tuple(d)
    prefix = [0] * len(d)
    for k, part in enumerate(decomposition):
        prefix = [x + y for x, y in zip(prefix, part)]
        if k < len(decomposition) - 1 and symplectic_form(Q, prefix, d) <= 0:
            return False
    return tuple(prefix) == d


def is_coprime_type(Q: Quiver, d: Sequence[int]) -> bool:
    """No nonzero proper sub-vector of ``d`` pairs to zero with ``d``."""
    d = tuple(d)
    for e in sub_vectors(d):
        if e == d or not any(e):
            continue
        if symplectic_form(Q, e, d) == 0:
            return False
    return True


# -- text forms ---------------------------------------------------------------

_PART = re.compile(r"^(\d+)(?:\^(\d+))?$")


def parse_partition(text: str) -> Partition:
    """Parse ``"2^1,1^3"`` (weight^multiplicity, ``^1`` optional)."""
    parts = []
    for chunk in text.split(","):
        m = _PART.match(chunk.strip())
        if not m:
            raise ValueError(f"bad partition term {chunk!r}")
        parts.append((int(m.group(1)), int(m.group(2) or 1)))
    if not parts:
        raise ValueError("empty partition")
    return Partition(tuple(parts))


_K = re.compile(r"^K\[m=(\d+)\]$")
_BIP = re.compile(r"^BIP\[m=(\d+);src=([^;\]]+);snk=([^;\]]+)\]$")
_Q = re.compile(r"^Q\[m=(\d+);a=(\d+);b=(\d+)\]$")


def parse_descriptor(text: str) -> Quiver:
    """Build a quiver from ``K[m=3]``, ``BIP[m=1;src=1^2;snk=1^3]`` or ``Q[m=1;a=2;b=3]``.

    ``Q[m;a;b]`` is shorthand for the bipartite quiver with all weights one.
    """
    s = "".join(text.split())
    if m := _K.match(s):
        return kronecker(int(m.group(1)))
    if m := _BIP.match(s):
        return bipartite(parse_partition(m.group(2)), parse_partition(m.group(3)), int(m.group(1)))
    if m := _Q.match(s):
        a, b = int(m.group(2)), int(m.group(3))
        if a < 1 or b < 1:
            raise ValueError("a and b must be positive")
        return bipartite(Partition.trivial(a), Partition.trivial(b), int(m.group(1)))
    raise ValueError(f"unrecognized quiver descriptor {text!r}")


def parse_dimension_vector(text: str) -> DimensionVector:
    try:
        return tuple(int(x) for x in text.replace(" ", "").split(","))
    except ValueError:
        raise ValueError(f"bad dimension vector {text!r}") from None

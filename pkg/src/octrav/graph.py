"""Undirected simple graphs, vertex tripartitions, and the G(n, m) generator."""

from __future__ import annotations

import random
from bisect import bisect_right
from dataclasses import dataclass, field
from typing import Iterable, Sequence

# Membership codes used by Tripartition.side.  Plain ints keep the hot loops fast.
A = 0
B = 1
D = 2
UNASSIGNED = -1

SIDE_NAMES = {A: "A", B: "B", D: "D", UNASSIGNED: "?"}


class GraphError(ValueError):
    """Base class for graph construction and parsing failures."""


class SelfLoopError(GraphError):
    def __init__(self, label: str):
        super().__init__(f"self-loop on vertex {label!r}")
        self.label = label


class TooManyEdgesError(GraphError):
    pass


@dataclass(frozen=True)
class ParseStats:
    duplicate_edges: int = 0
    declared_edges: int | None = None


@dataclass(frozen=True)
class Graph:
    """Immutable undirected simple graph on vertices ``0..n-1``.

    ``adjacency[u]`` is the sorted tuple of neighbours of ``u``.  ``labels``
    holds the original vertex names when the graph was read from a file.
    """

    adjacency: tuple[tuple[int, ...], ...]
    labels: tuple[str, ...] | None = None
    stats: ParseStats = field(default=ParseStats(), compare=False, repr=False)

    @classmethod
    def from_edges(
        cls,
        n: int,
        edges: Iterable[tuple[int, int]],
        labels: Sequence[str] | None = None,
        stats: ParseStats | None = None,
    ) -> Graph:
        """Build a graph, dropping duplicate edges and rejecting self-loops."""
        nbrs: list[set[int]] = [set() for _ in range(n)]
        dup = 0
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise GraphError(f"edge ({u}, {v}) out of range for n={n}")
            if u == v:
                raise SelfLoopError(labels[u] if labels else str(u))
            if v in nbrs[u]:
                dup += 1
                continue
            nbrs[u].add(v)
            nbrs[v].add(u)
        if labels is not None and len(labels) != n:
            raise GraphError("label count does not match vertex count")
        if stats is None:
            stats = ParseStats(duplicate_edges=dup)
        return cls(
            adjacency=tuple(tuple(sorted(s)) for s in nbrs),
            labels=tuple(labels) if labels is not None else None,
            stats=stats,
        )

    @property
    def n(self) -> int:
        return len(self.adjacency)

    @property
    def m(self) -> int:
        return sum(len(a) for a in self.adjacency) // 2

    def edges(self) -> list[tuple[int, int]]:
        """Edges as ``(u, v)`` pairs with ``u < v``, lexicographically sorted."""
        return [(u, v) for u, nb in enumerate(self.adjacency) for v in nb if u < v]

    def label(self, v: int) -> str:
        return self.labels[v] if self.labels is not None else str(v)

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    def check_invariants(self) -> None:
        """Raise AssertionError if symmetry, simplicity or ordering is broken."""
        for u, nb in enumerate(self.adjacency):
            assert list(nb) == sorted(set(nb)), f"adjacency of {u} not sorted/unique"
            for v in nb:
                assert v != u, f"self-loop at {u}"
                assert 0 <= v < self.n
                assert u in self.adjacency[v], f"asymmetric edge {u}-{v}"


class Tripartition:
    """Assignment of every vertex to one of A, B, D (or UNASSIGNED).

    The state is a plain list ``side`` indexed by vertex.  Algorithms copy
    it rather than share it; the Graph itself is never touched.
    """

    __slots__ = ("side",)

    def __init__(self, side: Iterable[int]):
        self.side = list(side)

    @classmethod
    def from_sets(
        cls, n: int, a: Iterable[int] = (), b: Iterable[int] = (), d: Iterable[int] = ()
    ) -> Tripartition:
        side = [UNASSIGNED] * n
        for code, members in ((A, a), (B, b), (D, d)):
            for v in members:
                if side[v] != UNASSIGNED:
                    raise ValueError(f"vertex {v} assigned twice")
                side[v] = code
        return cls(side)

    @classmethod
    def all_deleted(cls, n: int) -> Tripartition:
        return cls([D] * n)

    def copy(self) -> Tripartition:
        return Tripartition(self.side)

    def members(self, code: int) -> list[int]:
        return [v for v, s in enumerate(self.side) if s == code]

    @property
    def A(self) -> list[int]:
        return self.members(A)

    @property
    def B(self) -> list[int]:
        return self.members(B)

    @property
    def D(self) -> list[int]:
        return self.members(D)

    @property
    def d_size(self) -> int:
        return self.side.count(D)

    def __len__(self) -> int:
        return len(self.side)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Tripartition):
            return NotImplemented
        return self.side == other.side

    def __repr__(self) -> str:
        return f"Tripartition(A={self.A}, B={self.B}, D={self.D})"


def _unrank_pair(index: int, row_starts: list[int]) -> tuple[int, int]:
    u = bisect_right(row_starts, index) - 1
    return u, u + 1 + (index - row_starts[u])


def gen_random_graph(n: int, m: int, seed: int) -> Graph:
    """Uniform G(n, m): ``m`` distinct edges drawn without replacement.

    Uses ``random.Random(seed)`` (Mersenne Twister); the same
    ``(n, m, seed)`` always yields the same graph.
    """
    if n < 0:
        raise GraphError("n must be non-negative")
    total = n * (n - 1) // 2
    if m < 0:
        raise GraphError("m must be non-negative")
    if m > total:
        raise TooManyEdgesError(f"m={m} exceeds n(n-1)/2={total}")
    # row_starts[u] = rank of pair (u, u+1) in the lexicographic pair order
    row_starts = []
    acc = 0
    for u in range(max(n - 1, 0)):
        row_starts.append(acc)
        acc += n - 1 - u
    picks = random.Random(seed).sample(range(total), m)
    return Graph.from_edges(n, (_unrank_pair(i, row_starts) for i in picks))

"""BFS two-colouring, odd-cycle witnesses, and solution checks."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterable

from .graph import A, B, D, Graph, Tripartition

COLOR0 = 0
COLOR1 = 1
INACTIVE = -1


@dataclass
class TwoColoringResult:
    """Either a proper colouring of the active vertices or an odd cycle.

    ``coloring[v]`` is COLOR0/COLOR1 for active vertices and INACTIVE
    otherwise.  ``witness`` is a vertex sequence ``c0 .. ck`` such that
    consecutive vertices and ``(ck, c0)`` are edges; its length is odd.
    """

    coloring: list[int] | None = None
    witness: list[int] | None = None

    @property
    def is_bipartite(self) -> bool:
        return self.coloring is not None


def _active_mask(n: int, active) -> list[bool]:
    if active is None:
        return [True] * n
    mask = [False] * n
    for v in active:
        mask[v] = True
    return mask


def two_color(g: Graph, active: Iterable[int] | None = None) -> TwoColoringResult:
    """Two-colour ``g[active]`` (all of ``g`` when ``active`` is None).

    Components are rooted at their smallest vertex and explored in
    ascending id order, so output is deterministic.
    """
    adj = g.adjacency
    mask = _active_mask(g.n, active)
    color = [INACTIVE] * g.n
    parent = [-1] * g.n
    depth = [0] * g.n
    for root in range(g.n):
        if not mask[root] or color[root] != INACTIVE:
            continue
        color[root] = COLOR0
        queue = deque([root])
        while queue:
            u = queue.popleft()
            cu = color[u]
            for v in adj[u]:
                if not mask[v]:
                    continue
                if color[v] == INACTIVE:
                    color[v] = 1 - cu
                    parent[v] = u
                    depth[v] = depth[u] + 1
                    queue.append(v)
                elif color[v] == cu:
                    return TwoColoringResult(witness=_odd_cycle(u, v, parent, depth))
    return TwoColoringResult(coloring=color)


def _odd_cycle(u: int, v: int, parent: list[int], depth: list[int]) -> list[int]:
    # u and v share a colour, hence equal depth parity; climb to the common ancestor.
    left, right = [u], [v]
    while depth[left[-1]] > depth[right[-1]]:
        left.append(parent[left[-1]])
    while depth[right[-1]] > depth[left[-1]]:
        right.append(parent[right[-1]])
    while left[-1] != right[-1]:
        left.append(parent[left[-1]])
        right.append(parent[right[-1]])
    right.pop()
    return left[::-1] + right


@dataclass
class VerificationReport:
    complete: bool
    valid: bool
    certificate: bool
    unassigned_vertex: int | None = None
    bad_edge: tuple[int, int] | None = None
    uncertified_vertex: int | None = None

    @property
    def ok(self) -> bool:
        return self.complete and self.valid and self.certificate


def verify_tripartition(g: Graph, t: Tripartition) -> VerificationReport:
    """Check completeness, independence of A and B, and the D certificate.

    The certificate asks every vertex of D to have a neighbour in A and a
    neighbour in B.  Each check reports the first offending vertex or edge.
    """
    side = t.side
    rep = VerificationReport(True, True, True)
    if len(side) != g.n:
        rep.complete = False
        rep.unassigned_vertex = min(len(side), g.n)
    else:
        for v, s in enumerate(side):
            if s not in (A, B, D):
                rep.complete, rep.unassigned_vertex = False, v
                break
    n = min(len(side), g.n)
    for u, v in g.edges():
        if v < n and side[u] == side[v] and side[u] in (A, B):
            rep.valid, rep.bad_edge = False, (u, v)
            break
    for u in range(n):
        if side[u] != D:
            continue
        near = {side[v] for v in g.adjacency[u] if v < n}
        if A not in near or B not in near:
            rep.certificate, rep.uncertified_vertex = False, u
            break
    return rep


def is_strictly_minimal(g: Graph, t: Tripartition) -> tuple[bool, int | None]:
    """True if putting back any single deleted vertex creates an odd cycle.

    Bipartiteness is hereditary, so this is exactly inclusion-minimality of
    D.  Returns the first (lowest id) vertex that could be put back otherwise.
    """
    kept = [v for v, s in enumerate(t.side) if s != D]
    for u in t.D:
        if two_color(g, kept + [u]).is_bipartite:
            return False, u
    return True, None


def tripartition_from_coloring(coloring: list[int]) -> Tripartition:
    """Colour 0 becomes A, colour 1 becomes B, inactive vertices become D."""
    return Tripartition(A if c == COLOR0 else B if c == COLOR1 else D for c in coloring)


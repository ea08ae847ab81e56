"""Greedy fill of a partial bipartition, and an optional minimality pass."""

from __future__ import annotations

from dataclasses import dataclass

from .bipartite import two_color, tripartition_from_coloring, verify_tripartition
from .graph import A, B, D, Graph, Tripartition
from .rng import Rng

_BOTH = (A, B)


class InvalidInputError(ValueError):
    pass


@dataclass
class FillStats:
    """Work counter: vertices visited plus adjacency entries read."""

    touched: int = 0


def _fill(adj, side: list[int], rng: Rng, stats: FillStats | None = None) -> None:
    """In-place greedy fill over the D vertices of ``side``."""
    order = [v for v, s in enumerate(side) if s == D]
    rng.shuffle(order)
    # count of A and B members so far; the A-on-empty tie-break needs both zero
    size_a = side.count(A)
    size_b = side.count(B)
    touched = len(order)
    for u in order:
        in_a = in_b = False
        for v in adj[u]:
            touched += 1
            s = side[v]
            if s == A:
                in_a = True
                if in_b:
                    break
            elif s == B:
                in_b = True
                if in_a:
                    break
        if in_a and in_b:
            continue
        if in_a:
            side[u] = B
            size_b += 1
        elif in_b:
            side[u] = A
            size_a += 1
        elif size_a == 0 and size_b == 0:
            side[u] = A
            size_a += 1
        elif rng.choice(_BOTH) == A:
            side[u] = A
            size_a += 1
        else:
            side[u] = B
            size_b += 1
    if stats is not None:
        stats.touched += touched


def greedy_fill(
    g: Graph,
    t: Tripartition,
    rng: Rng,
    *,
    check: bool = False,
    stats: FillStats | None = None,
) -> Tripartition:
    """Move vertices of D into A or B wherever that keeps both independent.

    D is visited once in shuffled order.  A vertex with neighbours in both
    classes stays in D; with neighbours in exactly one class it joins the
    other; with none it joins A if both classes are still empty, otherwise
    a random class.  Returns a new Tripartition; ``t`` is left untouched.
    """
    if check:
        rep = verify_tripartition(g, t)
        if not rep.complete or not rep.valid:
            raise InvalidInputError(f"greedy_fill needs a complete, valid start: {rep}")
    out = t.copy()
    _fill(g.adjacency, out.side, rng, stats)
    return out


def greedy(g: Graph, rng: Rng, *, stats: FillStats | None = None) -> Tripartition:
    return greedy_fill(g, Tripartition.all_deleted(g.n), rng, stats=stats)


def refine_strict_minimal(g: Graph, t: Tripartition, rng: Rng) -> Tripartition:
    """Put deleted vertices back while the kept graph stays bipartite.

    A and B are recoloured from scratch whenever a vertex is put back, so
    the result is inclusion-minimal even where the greedy certificate is
    not.  Repeats shuffled passes over D until one changes nothing.
    """
    side = list(t.side)
    changed = True
    while changed:
        changed = False
        order = [v for v, s in enumerate(side) if s == D]
        rng.shuffle(order)
        for u in order:
            side[u] = A
            res = two_color(g, [v for v, s in enumerate(side) if s != D])
            if res.is_bipartite:
                side = tripartition_from_coloring(res.coloring).side
                changed = True
            else:
                side[u] = D
    return Tripartition(side)

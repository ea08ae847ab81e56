"""Exact minimum deletion via repeated SAT calls, and a brute-force oracle."""

from __future__ import annotations

import logging
import time
from itertools import combinations
from typing import Callable

from ..bipartite import two_color, tripartition_from_coloring
from ..errors import SearchTimeout
from ..graph import Graph, Tripartition
from .cnf import CnfFormula, SolveOutcome, Status, decode_model, encode_bipartite_deletion
from .dpll import dpll_solve
from .external import SolverConfig, run_external_solver

log = logging.getLogger(__name__)

# solve(formula, seconds_left or None) -> SolveOutcome
SolveFn = Callable[[CnfFormula, "float | None"], SolveOutcome]

BRUTE_FORCE_MAX_N = 20


class SolverError(RuntimeError):
    pass


class TooLargeError(ValueError):
    pass


def dpll_solver(limit: int | None = None) -> SolveFn:
    def solve(f: CnfFormula, seconds: float | None) -> SolveOutcome:
        deadline = None if seconds is None else time.perf_counter() + seconds
        return dpll_solve(f, limit=limit, deadline=deadline)

    return solve


def external_solver(cfg: SolverConfig) -> SolveFn:
    def solve(f: CnfFormula, seconds: float | None) -> SolveOutcome:
        return run_external_solver(f, cfg, seconds)

    return solve


def minimum_deletion_search(
    g: Graph,
    solve: SolveFn | None = None,
    timeout: float | None = None,
    *,
    probes: list[tuple[int, Status]] | None = None,
) -> tuple[Tripartition, int]:
    """Smallest D making ``g`` bipartite, with its bipartition.

    Bipartite graphs are answered by BFS.  Otherwise k = 1, 2, 4, ... is
    probed until satisfiable, then the interval between the last
    unsatisfiable k (+1) and the smallest decoded |D| is bisected.  A probe
    that times out raises SearchTimeout carrying the current bounds.
    ``probes``, if given, collects ``(k, status)`` for every solver call.
    """
    solve = solve or dpll_solver()
    deadline = None if timeout is None else time.perf_counter() + timeout
    res = two_color(g)
    if res.is_bipartite:
        return tripartition_from_coloring(res.coloring), 0

    lo = 1  # k = 0 is infeasible: the graph has an odd cycle
    hi = None
    best: Tripartition | None = None

    def probe(k: int) -> Tripartition | None:
        left = None
        if deadline is not None:
            left = deadline - time.perf_counter()
            if left <= 0:
                raise SearchTimeout("exact search out of time", lower=lo, upper=hi, best=best)
        f, vm = encode_bipartite_deletion(g, k)
        out = solve(f, left)
        if probes is not None:
            probes.append((k, out.status))
        if out.status is Status.TIMEOUT:
            raise SearchTimeout(f"solver timed out at k={k}", lower=lo, upper=hi, best=best)
        if out.status is Status.SOLVER_ERROR:
            raise SolverError(out.detail)
        if out.status is Status.UNSAT:
            return None
        return decode_model(out.model, vm, g)

    k = 1
    while best is None:
        t = probe(k)
        if t is None:
            if k >= g.n:
                raise SolverError(f"k={k} reported unsatisfiable; deleting all vertices always works")
            lo = k + 1
            k = min(2 * k, g.n)
        else:
            best, hi = t, t.d_size
    while lo < hi:
        mid = (lo + hi) // 2
        t = probe(mid)
        if t is None:
            lo = mid + 1
        else:
            best, hi = t, t.d_size
    return best, hi


def brute_force_oct(g: Graph) -> int:
    """Size of a smallest odd cycle transversal by exhaustive enumeration."""
    if g.n > BRUTE_FORCE_MAX_N:
        raise TooLargeError(f"n={g.n} exceeds brute-force limit {BRUTE_FORCE_MAX_N}")
    vertices = range(g.n)
    for size in range(g.n + 1):
        for removed in combinations(vertices, size):
            gone = set(removed)
            if two_color(g, [v for v in vertices if v not in gone]).is_bipartite:
                return size
    raise AssertionError("unreachable: removing every vertex leaves a bipartite graph")

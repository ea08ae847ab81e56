"""Simulated annealing over tripartitions."""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, field
from enum import Enum
from typing import Callable

from .errors import SearchTimeout
from .graph import A, B, D, Graph, Tripartition
from .greedy import _fill, greedy
from .rng import Rng


class EmptyDError(ValueError):
    pass


class Cooling(str, Enum):
    HILL_CLIMBING = "hill"
    LINEAR = "linear"
    QUADRATIC = "quadratic"
    EXPONENTIAL = "exponential"


@dataclass(frozen=True)
class CoolingSchedule:
    kind: Cooling = Cooling.QUADRATIC
    i_max: int = 10000
    t_max: float = 50.0

    def __call__(self, i: int) -> float:
        return cooling(self, i)


def cooling(s: CoolingSchedule, i: int) -> float:
    """Temperature at iteration ``i`` (0 <= i <= i_max)."""
    if s.kind is Cooling.HILL_CLIMBING or s.i_max == 0 or s.t_max <= 0:
        return 0.0
    frac = (s.i_max - i) / s.i_max
    if s.kind is Cooling.LINEAR:
        return s.t_max * frac
    if s.kind is Cooling.QUADRATIC:
        return s.t_max * frac * frac
    # logistic curve through t_max/2 at the midpoint, t_max^2/(t_max+1) at i=0
    rate = 2.0 * math.log(s.t_max) / s.i_max
    z = rate * (i - s.i_max / 2)
    if z > 700:
        return 0.0
    return s.t_max / (1.0 + math.exp(z))


@dataclass(frozen=True)
class AnnealParams:
    schedule: CoolingSchedule = field(default_factory=CoolingSchedule)

    @classmethod
    def make(cls, i_max: int = 10000, t_max: float = 50.0, kind: Cooling | str = Cooling.QUADRATIC):
        if i_max < 0 or t_max < 0:
            raise ValueError("i_max and t_max must be non-negative")
        return cls(CoolingSchedule(Cooling(kind), i_max, t_max))

    @property
    def i_max(self) -> int:
        return self.schedule.i_max

    @property
    def t_max(self) -> float:
        return self.schedule.t_max


def accept(c: int, t: float, rng: Rng) -> bool:
    """Metropolis test for a non-improving move (``c <= 0``).

    Consumes exactly one uniform draw.  At ``t == 0`` a move is accepted iff
    it does not make things worse.
    """
    r = rng.uniform01()
    if t <= 0.0:
        return c >= 0
    return math.exp(c / t) > r


def _neighbor_inplace(adj, side: list[int], rng: Rng) -> None:
    d_list = [v for v, s in enumerate(side) if s == D]
    if not d_list:
        raise EmptyDError("no deleted vertex to move")
    u = rng.choice(d_list)
    for v in adj[u]:
        side[v] = D
    side[u] = rng.choice((A, B))
    _fill(adj, side, rng)


def compute_neighbor(g: Graph, t: Tripartition, rng: Rng) -> Tripartition:
    """Random neighbouring solution.

    A deleted vertex ``u`` is chosen uniformly; all of its neighbours are
    deleted, ``u`` goes to a random class, and greedy fill repairs the rest.
    """
    out = t.copy()
    _neighbor_inplace(g.adjacency, out.side, rng)
    return out


StepHook = Callable[[int, Tripartition], None]


def simulated_annealing(
    g: Graph,
    p: AnnealParams,
    rng: Rng,
    *,
    deadline: float | None = None,
    on_step: StepHook | None = None,
) -> Tripartition:
    """Anneal from a greedy start and return the state after the last iteration.

    ``on_step(i, state)`` is called with the initial state (``i == 0``) and
    after every iteration.  ``deadline`` is a ``time.perf_counter()`` value;
    passing it raises SearchTimeout.
    """
    adj = g.adjacency
    cur = greedy(g, rng)
    side = cur.side
    d_cur = side.count(D)
    sched = p.schedule
    if on_step:
        on_step(0, cur)
    for i in range(1, sched.i_max + 1):
        if d_cur == 0:
            break
        if deadline is not None and time.perf_counter() > deadline:
            raise SearchTimeout(f"annealing stopped at iteration {i}")
        cand = list(side)
        _neighbor_inplace(adj, cand, rng)
        d_cand = cand.count(D)
        c = d_cur - d_cand
        if c > 0 or accept(c, cooling(sched, i), rng):
            side, d_cur = cand, d_cand
        if on_step:
            on_step(i, Tripartition(side))
    return Tripartition(side)

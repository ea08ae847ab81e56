"""Population search: D-union breeding with neighbour-move mutation."""

from __future__ import annotations

import time
from dataclasses import dataclass
from typing import Callable, Sequence

from .annealing import _neighbor_inplace
from .errors import SearchTimeout
from .graph import D, Graph, Tripartition
from .greedy import _fill, greedy
from .rng import Rng

BEST_TO_WORST = 10.0
MAX_REDRAWS = 100


@dataclass(frozen=True)
class GeneticParams:
    g_max: int = 1000
    i_max: int = 20
    p_mut: float = 1.0

    def __post_init__(self):
        if self.i_max < 2:
            raise ValueError("population needs at least two individuals")
        if self.g_max < 0:
            raise ValueError("g_max must be non-negative")
        if not 0.0 <= self.p_mut <= 1.0:
            raise ValueError("p_mut must lie in [0, 1]")


@dataclass
class Individual:
    partition: Tripartition
    d_size: int

    @classmethod
    def of(cls, t: Tripartition) -> Individual:
        return cls(t, t.d_size)


def selection_distribution(pop: Sequence[Individual]) -> list[float]:
    """Selection probabilities, linear in |D|, best:worst = 10:1.

    Weight ``1 + 9 (dmax - d) / (dmax - dmin)``, normalised; uniform when
    every individual has the same |D|.
    """
    if not pop:
        raise ValueError("empty population")
    sizes = [ind.d_size for ind in pop]
    lo, hi = min(sizes), max(sizes)
    if lo == hi:
        return [1.0 / len(pop)] * len(pop)
    span = hi - lo
    weights = [1.0 + (BEST_TO_WORST - 1.0) * (hi - d) / span for d in sizes]
    total = sum(weights)
    return [w / total for w in weights]


def choose_parents(probs: Sequence[float], rng: Rng) -> tuple[int, int]:
    """Two distinct indices drawn from ``probs``.

    The second index is redrawn until it differs from the first; after
    MAX_REDRAWS failures it is drawn uniformly from the remaining indices.
    """
    idx = range(len(probs))
    first = rng.choices(idx, weights=probs)[0]
    for _ in range(MAX_REDRAWS):
        second = rng.choices(idx, weights=probs)[0]
        if second != first:
            return first, second
    second = rng.choice([i for i in idx if i != first])
    return first, second


def breed(g: Graph, parent1: Individual, d2: Sequence[int], p_mut: float, rng: Rng) -> Individual:
    """Child of ``parent1`` and a second parent's deleted set ``d2``.

    The union of both deleted sets is removed from parent1's classes (the
    rest stays bipartite), then either a neighbour move (probability
    ``p_mut``) or a plain greedy fill rebuilds a full solution.
    """
    side = list(parent1.partition.side)
    for v in d2:
        side[v] = D
    mutate = rng.uniform01() < p_mut
    if mutate and D in side:
        _neighbor_inplace(g.adjacency, side, rng)
    else:
        _fill(g.adjacency, side, rng)
    return Individual(Tripartition(side), side.count(D))


GenerationHook = Callable[[int, list[Individual]], None]


def genetic(
    g: Graph,
    p: GeneticParams,
    rng: Rng,
    *,
    deadline: float | None = None,
    on_generation: GenerationHook | None = None,
    parents_log: list[tuple[int, int]] | None = None,
) -> Tripartition:
    """Evolve ``p.i_max`` greedy solutions for ``p.g_max`` generations.

    Each child gets its own Rng spawned, in index order, from ``rng``
    before the generation starts, so children could be bred in parallel
    without changing the result.  The whole population is replaced every
    generation.  Returns the fittest member of the last generation (lowest
    index on ties).
    """
    pop = [Individual.of(greedy(g, rng.spawn())) for _ in range(p.i_max)]
    if on_generation:
        on_generation(0, pop)
    for gen in range(1, p.g_max + 1):
        if deadline is not None and time.perf_counter() > deadline:
            raise SearchTimeout(f"genetic search stopped at generation {gen}")
        probs = selection_distribution(pop)
        streams = [rng.spawn() for _ in range(p.i_max)]
        nxt = []
        for child_rng in streams:
            i, j = choose_parents(probs, child_rng)
            if parents_log is not None:
                parents_log.append((i, j))
            nxt.append(breed(g, pop[i], pop[j].partition.D, p.p_mut, child_rng))
        pop = nxt
        if on_generation:
            on_generation(gen, pop)
    best = min(range(len(pop)), key=lambda k: (pop[k].d_size, k))
    return pop[best].partition

import itertools
import random

import pytest

from octrav.graph import Graph, gen_random_graph
from octrav.rng import Rng


def complete(n):
    return Graph.from_edges(n, itertools.combinations(range(n), 2))


def cycle(n):
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def path(n):
    return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)])


def complete_bipartite(a, b):
    return Graph.from_edges(a + b, [(i, a + j) for i in range(a) for j in range(b)])


def star(leaves):
    return complete_bipartite(1, leaves)


def petersen():
    outer = [(i, (i + 1) % 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    return Graph.from_edges(10, outer + inner + spokes)


NAMED = {
    "K3": complete(3),
    "C5": cycle(5),
    "K4": complete(4),
    "K5": complete(5),
    "C6": cycle(6),
    "K33": complete_bipartite(3, 3),
    "Petersen": petersen(),
}


def random_graphs(count, n_max, seed, n_min=2, ratio=(1, 10)):
    """Seeded G(n, m) graphs with edge/vertex ratio in ``ratio`` (capped at complete)."""
    rs = random.Random(seed)
    out = []
    for i in range(count):
        n = rs.randint(n_min, n_max)
        m = min(n * (n - 1) // 2, round(rs.uniform(*ratio) * n))
        out.append(gen_random_graph(n, m, rs.getrandbits(32)))
    return out


class StubRng(Rng):
    """Rng whose shuffle imposes a fixed order and whose class picks are scripted."""

    def __init__(self, order=None, picks=(), seed=0):
        super().__init__(seed)
        self.order = list(order) if order is not None else None
        self.picks = list(picks)

    def shuffle(self, x):
        if self.order is None:
            return super().shuffle(x)
        pos = {v: i for i, v in enumerate(self.order)}
        x.sort(key=lambda v: pos.get(v, len(pos) + v))

    def choice(self, seq):
        if self.picks and isinstance(seq, tuple) and seq == (0, 1):
            want = self.picks.pop(0)
            assert want in seq
            return want
        return super().choice(seq)


@pytest.fixture
def rng():
    return Rng(12345)


# one line per acceptance criterion, echoed at the end of the run
ACCEPTANCE_LINES: list[str] = []


def report(number, ok, detail):
    line = f"CRITERION {number:>2} {'PASS' if ok else 'FAIL'}  {detail}"
    ACCEPTANCE_LINES.append(line)
    print(line)
    return ok


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1])):
            terminalreporter.write_line(line)

import math
import random
from fractions import Fraction

import pytest

from octrav.annealing import (
    AnnealParams,
    Cooling,
    CoolingSchedule,
    EmptyDError,
    accept,
    compute_neighbor,
    cooling,
    simulated_annealing,
)
from octrav.bipartite import verify_tripartition
from octrav.graph import Graph, Tripartition
from octrav.greedy import greedy
from octrav.rng import Rng

from conftest import NAMED, cycle, random_graphs, star


class TestCooling:
    def test_quadratic_start(self):
        assert cooling(CoolingSchedule(Cooling.QUADRATIC, 1000, 50), 0) == 50

    def test_midpoints(self):
        assert cooling(CoolingSchedule(Cooling.LINEAR, 1000, 50), 500) == 25
        assert cooling(CoolingSchedule(Cooling.QUADRATIC, 1000, 50), 500) == 12.5

    def test_exponential(self):
        s = CoolingSchedule(Cooling.EXPONENTIAL, 1000, 50)
        assert cooling(s, 500) == pytest.approx(25, abs=1e-12)
        # exp(-ln 50) = 1/50, so t(0) = 50 / (1 + 1/50) = 2500/51
        assert cooling(s, 0) == pytest.approx(float(Fraction(2500, 51)), rel=1e-12)
        assert cooling(s, 0) == pytest.approx(49.0196, abs=1e-4)

    def test_hill_climbing_is_zero(self):
        s = CoolingSchedule(Cooling.HILL_CLIMBING, 100, 50)
        assert all(cooling(s, i) == 0 for i in range(101))

    @pytest.mark.parametrize("kind", list(Cooling))
    def test_non_negative_and_bounded(self, kind):
        s = CoolingSchedule(kind, 777, 50)
        temps = [cooling(s, i) for i in range(778)]
        assert all(0 <= t <= 50 for t in temps)
        assert temps == sorted(temps, reverse=True)


class TestAccept:
    def test_plateau_always_accepted(self):
        rng = Rng(1)
        assert all(accept(0, 3.0, rng) for _ in range(2000))

    def test_zero_temperature(self):
        rng = Rng(2)
        assert accept(0, 0.0, rng)
        assert not accept(-1, 0.0, rng)

    def test_probability_value(self):
        assert math.exp(-5 / 50) == pytest.approx(0.904837, abs=1e-6)

    def test_one_draw_per_decision(self):
        a, b = Rng(3), Rng(3)
        for c in (0, -1, -5, -100):
            accept(c, 7.0, a)
            b.random()
        assert a.random() == b.random()

    def test_empirical_rate(self):
        rng, trials, t = Rng(4), 10_000, 5.0
        p = math.exp(-1 / t)
        hits = sum(accept(-1, t, rng) for _ in range(trials))
        sigma = math.sqrt(trials * p * (1 - p))
        assert abs(hits - trials * p) <= 3 * sigma


class TestNeighbor:
    def test_triangle(self):
        t = Tripartition.from_sets(3, [0], [1], [2])
        for seed in range(20):
            out = compute_neighbor(NAMED["K3"], t, Rng(seed))
            assert out.d_size == 1 and verify_tripartition(NAMED["K3"], out).ok

    def test_star_center(self):
        g = star(3)
        t = Tripartition.from_sets(4, [1, 2], [3], [0])
        for seed in range(20):
            out = compute_neighbor(g, t, Rng(seed))
            assert out.D == [] and verify_tripartition(g, out).ok

    def test_empty_d(self):
        with pytest.raises(EmptyDError):
            compute_neighbor(cycle(4), Tripartition.from_sets(4, [0, 2], [1, 3]), Rng(0))

    def test_size_bound_and_validity(self):
        for i, g in enumerate(random_graphs(200, 40, seed=31)):
            rng = Rng(i)
            t = greedy(g, rng)
            if not t.D:
                continue
            out = compute_neighbor(g, t, rng)
            assert verify_tripartition(g, out).ok
            assert out.d_size <= t.d_size + max(g.degree(u) for u in t.D) - 1


class TestAnnealing:
    @pytest.mark.parametrize("g", [cycle(8), star(5), NAMED["K33"]], ids=["C8", "star", "K33"])
    def test_bipartite_input(self, g):
        for kind in Cooling:
            assert simulated_annealing(g, AnnealParams.make(200, 50, kind), Rng(0)).D == []

    def test_random_tree(self):
        rs = random.Random(9)
        tree = Graph.from_edges(40, [(v, rs.randrange(v)) for v in range(1, 40)])
        assert simulated_annealing(tree, AnnealParams.make(300), Rng(1)).D == []

    def test_triangle(self):
        for seed in range(10):
            assert simulated_annealing(NAMED["K3"], AnnealParams.make(100), Rng(seed)).d_size == 1

    def test_every_state_valid(self):
        for i, g in enumerate(random_graphs(20, 50, seed=32, n_min=20)):
            states = []
            simulated_annealing(g, AnnealParams.make(150), Rng(i),
                                on_step=lambda _i, s: states.append(s))
            for s in states:
                assert verify_tripartition(g, s).ok

    def test_hill_climbing_monotone(self):
        for i, g in enumerate(random_graphs(20, 50, seed=33, n_min=20)):
            sizes = []
            simulated_annealing(g, AnnealParams.make(300, 50, "hill"), Rng(i),
                                on_step=lambda _i, s: sizes.append(s.d_size))
            assert all(b <= a for a, b in zip(sizes, sizes[1:]))

    def test_deterministic(self):
        g = random_graphs(1, 60, seed=34, n_min=60)[0]
        p = AnnealParams.make(300)
        assert simulated_annealing(g, p, Rng(8)) == simulated_annealing(g, p, Rng(8))

    def test_zero_iterations_is_greedy(self):
        g = random_graphs(1, 60, seed=35, n_min=60)[0]
        assert simulated_annealing(g, AnnealParams.make(0), Rng(3)) == greedy(g, Rng(3))

    def test_invalid_params(self):
        with pytest.raises(ValueError):
            AnnealParams.make(-1)

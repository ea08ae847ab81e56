"""Vertex deletion to bipartiteness: exact SAT search and three heuristics."""

from .annealing import AnnealParams, Cooling, CoolingSchedule, compute_neighbor, cooling, simulated_annealing
from .bipartite import is_strictly_minimal, two_color, verify_tripartition
from .errors import SearchTimeout
from .genetic import GeneticParams, breed, genetic, selection_distribution
from .graph import Graph, Tripartition, gen_random_graph
from .greedy import greedy, greedy_fill, refine_strict_minimal
from .rng import Rng

__version__ = "0.1.0"

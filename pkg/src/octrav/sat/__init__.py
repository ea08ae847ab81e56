"""Exact odd cycle transversal through SAT."""

from .cnf import (
    CnfFormula,
    DimacsError,
    InvalidModelError,
    KOutOfRangeError,
    SolveOutcome,
    Status,
    VarMap,
    at_most_k,
    decode_model,
    emit_dimacs,
    encode_bipartite_deletion,
    parse_dimacs_cnf,
)
from .dpll import dpll_solve
from .external import SOLVER_ENV, SolverConfig, run_external_solver
from .search import (
    SolverError,
    TooLargeError,
    brute_force_oct,
    dpll_solver,
    external_solver,
    minimum_deletion_search,
)

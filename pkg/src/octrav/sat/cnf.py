"""CNF encoding of "delete at most k vertices to make G bipartite"."""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum

from ..bipartite import verify_tripartition
from ..graph import A, B, D, Graph, Tripartition


class KOutOfRangeError(ValueError):
    pass


class InvalidModelError(RuntimeError):
    pass


class DimacsError(ValueError):
    pass


@dataclass
class CnfFormula:
    num_vars: int
    clauses: list[list[int]] = field(default_factory=list)

    def check(self) -> None:
        """Raise ValueError unless every clause is non-empty, in range, and non-tautological."""
        for idx, clause in enumerate(self.clauses):
            if not clause:
                raise ValueError(f"clause {idx} is empty")
            seen = set()
            for lit in clause:
                if lit == 0 or abs(lit) > self.num_vars:
                    raise ValueError(f"clause {idx}: literal {lit} out of range")
                if -lit in seen:
                    raise ValueError(f"clause {idx} is tautological")
                seen.add(lit)


@dataclass(frozen=True)
class VarMap:
    """Variable numbering for ``n`` vertices and bound ``k``.

    Vertex ``i`` (0-based) owns variables ``3i+1`` (in A), ``3i+2`` (in B)
    and ``3i+3`` (deleted).  Counter register ``s(i, j)`` for
    ``i in 1..n-1``, ``j in 1..k`` follows at ``3n + (i-1)k + j``.
    """

    n: int
    k: int

    def in_a(self, i: int) -> int:
        return 3 * i + 1

    def in_b(self, i: int) -> int:
        return 3 * i + 2

    def deleted(self, i: int) -> int:
        return 3 * i + 3

    def register(self, i: int, j: int) -> int:
        return 3 * self.n + (i - 1) * self.k + j

    @property
    def num_vars(self) -> int:
        return 3 * self.n + max(self.n - 1, 0) * self.k


def at_most_k(xs: list[int], k: int, reg) -> list[list[int]]:
    """Sequential-counter clauses forcing at most ``k`` of ``xs`` true.

    ``reg(i, j)`` gives the register variable meaning "at least j of the
    first i inputs are true", for ``1 <= i < len(xs)``, ``1 <= j <= k``.
    Produces ``2nk + n - 3k - 1`` clauses for ``n = len(xs) >= 2``.
    """
    n = len(xs)
    if n < 2 or k < 1:
        raise ValueError("sequential counter needs at least two inputs and k >= 1")
    out = [[-xs[0], reg(1, 1)]]
    out += [[-reg(1, j)] for j in range(2, k + 1)]
    for i in range(2, n):
        x = xs[i - 1]
        out.append([-x, reg(i, 1)])
        out.append([-reg(i - 1, 1), reg(i, 1)])
        for j in range(2, k + 1):
            out.append([-x, -reg(i - 1, j - 1), reg(i, j)])
            out.append([-reg(i - 1, j), reg(i, j)])
        out.append([-x, -reg(i - 1, k)])
    out.append([-xs[n - 1], -reg(n - 1, k)])
    return out


def encode_bipartite_deletion(g: Graph, k: int) -> tuple[CnfFormula, VarMap]:
    """CNF satisfiable iff deleting at most ``k`` vertices leaves ``g`` bipartite.

    Per vertex ``(a | b | d)``; per edge ``(~a_u | ~a_v)`` and
    ``(~b_u | ~b_v)``; plus the sequential counter over the ``d`` variables.
    For ``n >= 2`` the totals are ``(n-1)(k+3)+3`` variables and
    ``2m + 2nk + 2n - 3k - 1`` clauses.
    """
    n = g.n
    if not 1 <= k <= n:
        raise KOutOfRangeError(f"k={k} outside 1..{n}")
    vm = VarMap(n, k)
    clauses = [[vm.in_a(i), vm.in_b(i), vm.deleted(i)] for i in range(n)]
    for u, v in g.edges():
        clauses.append([-vm.in_a(u), -vm.in_a(v)])
        clauses.append([-vm.in_b(u), -vm.in_b(v)])
    if n >= 2:
        xs = [vm.deleted(i) for i in range(n)]
        # emitted even for k == n (vacuous) so the totals keep their closed form
        clauses += at_most_k(xs, k, vm.register)
    return CnfFormula(vm.num_vars, clauses), vm


def emit_dimacs(f: CnfFormula) -> str:
    lines = [f"p cnf {f.num_vars} {len(f.clauses)}"]
    lines += [" ".join(map(str, c)) + " 0" for c in f.clauses]
    return "\n".join(lines) + "\n"


def parse_dimacs_cnf(text: str) -> CnfFormula:
    """Read DIMACS CNF; clauses may span lines and are closed by ``0``."""
    num_vars = None
    declared = None
    clauses: list[list[int]] = []
    cur: list[int] = []
    for raw in text.splitlines():
        line = raw.strip()
        if not line or line[0] in "c%":
            continue
        if line.startswith("p"):
            parts = line.split()
            if len(parts) != 4 or parts[1] != "cnf":
                raise DimacsError(f"bad problem line: {line!r}")
            num_vars, declared = int(parts[2]), int(parts[3])
            continue
        if num_vars is None:
            raise DimacsError("clause before 'p cnf' header")
        for tok in line.split():
            lit = int(tok)
            if lit == 0:
                clauses.append(cur)
                cur = []
            else:
                cur.append(lit)
    if num_vars is None:
        raise DimacsError("missing 'p cnf' header")
    if cur:
        clauses.append(cur)
    if declared != len(clauses):
        raise DimacsError(f"header declares {declared} clauses, found {len(clauses)}")
    return CnfFormula(num_vars, clauses)


class Status(str, Enum):
    SAT = "SAT"
    UNSAT = "UNSAT"
    TIMEOUT = "TIMEOUT"
    SOLVER_ERROR = "SOLVER_ERROR"


@dataclass
class SolveOutcome:
    """Solver verdict.  ``model[v-1]`` is the value of variable ``v`` when SAT."""

    status: Status
    model: list[bool] | None = None
    detail: str = ""

    @property
    def is_sat(self) -> bool:
        return self.status is Status.SAT


def decode_model(model: list[bool], vm: VarMap, g: Graph) -> Tripartition:
    """Read a tripartition off a model: deleted wins, then A, else B."""
    side = []
    for i in range(g.n):
        if model[vm.deleted(i) - 1]:
            side.append(D)
        elif model[vm.in_a(i) - 1]:
            side.append(A)
        else:
            side.append(B)
    t = Tripartition(side)
    rep = verify_tripartition(g, t)
    if not rep.complete or not rep.valid:
        raise InvalidModelError(f"decoded model is not a valid tripartition: {rep}")
    if t.d_size > vm.k:
        raise InvalidModelError(f"decoded |D|={t.d_size} exceeds k={vm.k}")
    return t

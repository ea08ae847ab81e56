"""Small complete DPLL solver for tests and tiny instances.

Unit propagation and pure-literal elimination over clause counters,
chronological backtracking, branching on the lowest unassigned variable
with ``True`` tried first.
"""

from __future__ import annotations

import time

from .cnf import CnfFormula, SolveOutcome, Status

_CHECK_EVERY = 256


class _State:
    def __init__(self, f: CnfFormula):
        nv = self.nv = f.num_vars
        clauses = []
        for c in f.clauses:
            lits = sorted(set(c))
            if any(-lit in lits for lit in lits):
                continue  # tautology
            clauses.append(lits)
        self.clauses = clauses
        self.val = [0] * (nv + 1)
        # occ/live indexed by lit + nv
        self.occ: list[list[int]] = [[] for _ in range(2 * nv + 1)]
        self.live = [0] * (2 * nv + 1)
        for ci, c in enumerate(clauses):
            for lit in c:
                self.occ[lit + nv].append(ci)
                self.live[lit + nv] += 1
        self.sat = [0] * len(clauses)
        self.free = [len(c) for c in clauses]
        self.trail: list[int] = []
        self.units: list[int] = [ci for ci, c in enumerate(clauses) if len(c) == 1]

    def assign(self, lit: int) -> bool:
        """Make ``lit`` true; returns False on a falsified clause."""
        nv, clauses, sat, free, live = self.nv, self.clauses, self.sat, self.free, self.live
        self.val[abs(lit)] = 1 if lit > 0 else -1
        self.trail.append(lit)
        ok = True
        for ci in self.occ[lit + nv]:
            sat[ci] += 1
            if sat[ci] == 1:
                for other in clauses[ci]:
                    live[other + nv] -= 1
        for ci in self.occ[-lit + nv]:
            free[ci] -= 1
            if sat[ci] == 0:
                if free[ci] == 0:
                    ok = False
                elif free[ci] == 1:
                    self.units.append(ci)
        return ok

    def undo_to(self, size: int) -> None:
        nv, clauses, sat, free, live = self.nv, self.clauses, self.sat, self.free, self.live
        trail = self.trail
        while len(trail) > size:
            lit = trail.pop()
            for ci in self.occ[lit + nv]:
                sat[ci] -= 1
                if sat[ci] == 0:
                    for other in clauses[ci]:
                        live[other + nv] += 1
            for ci in self.occ[-lit + nv]:
                free[ci] += 1
            self.val[abs(lit)] = 0
        self.units.clear()

    def propagate(self) -> bool:
        val, sat, free, units = self.val, self.sat, self.free, self.units
        while units:
            ci = units.pop()
            if sat[ci]:
                continue
            if free[ci] == 0:
                return False
            for lit in self.clauses[ci]:
                if val[abs(lit)] == 0:
                    break
            else:  # pragma: no cover - free counter says one literal is open
                raise AssertionError("unit clause without open literal")
            if not self.assign(lit):
                return False
        return True

    def eliminate_pure(self) -> None:
        nv, val, live = self.nv, self.val, self.live
        changed = True
        while changed:
            changed = False
            for v in range(1, nv + 1):
                if val[v]:
                    continue
                if live[nv - v] == 0:
                    self.assign(v)
                    changed = True
                elif live[nv + v] == 0:
                    self.assign(-v)
                    changed = True

    def first_unassigned(self) -> int:
        val = self.val
        for v in range(1, self.nv + 1):
            if not val[v]:
                return v
        return 0


def dpll_solve(
    f: CnfFormula, limit: int | None = None, deadline: float | None = None
) -> SolveOutcome:
    """Decide ``f``.  TIMEOUT once ``limit`` decisions or ``deadline`` are exceeded.

    ``deadline`` is a ``time.perf_counter()`` value.
    """
    st = _State(f)
    if any(not c for c in st.clauses):
        return SolveOutcome(Status.UNSAT)
    decisions = 0
    stack: list[tuple[int, int, bool]] = []  # (trail size, var, flipped)
    ok = st.propagate()
    while True:
        if ok:
            st.eliminate_pure()
            v = st.first_unassigned()
            if v == 0:
                model = [x > 0 for x in st.val[1:]]
                return SolveOutcome(Status.SAT, model)
            decisions += 1
            if limit is not None and decisions > limit:
                return SolveOutcome(Status.TIMEOUT, detail=f"decision budget {limit} exhausted")
            if deadline is not None and decisions % _CHECK_EVERY == 0 and time.perf_counter() > deadline:
                return SolveOutcome(Status.TIMEOUT, detail="deadline exceeded")
            stack.append((len(st.trail), v, False))
            ok = st.assign(v) and st.propagate()
            continue
        while stack:
            size, v, flipped = stack.pop()
            st.undo_to(size)
            if not flipped:
                stack.append((size, v, True))
                ok = st.assign(-v) and st.propagate()
                break
        else:
            return SolveOutcome(Status.UNSAT)

"""Bridge to an external SAT solver binary."""

from __future__ import annotations

import logging
import os
import shutil
import subprocess
import tempfile
from dataclasses import dataclass, field
from pathlib import Path

from .cnf import CnfFormula, SolveOutcome, Status, emit_dimacs

log = logging.getLogger(__name__)

SOLVER_ENV = "OCTRAV_SOLVER"
FILE_MODE = "file"
STREAM_MODE = "stream"


@dataclass(frozen=True)
class SolverConfig:
    """How to invoke a solver.

    FILE mode runs ``<exe> [args] <in.cnf> <out>`` and reads ``SAT``/``UNSAT``
    plus a model line from ``<out>`` (MiniSat convention).  STREAM mode runs
    ``<exe> [args] <in.cnf>`` and reads ``s ...``/``v ...`` lines from stdout
    (SAT competition convention).
    """

    path: str
    mode: str = FILE_MODE
    args: tuple[str, ...] = field(default_factory=tuple)

    @classmethod
    def from_env(cls, path: str | None = None, mode: str = FILE_MODE) -> SolverConfig | None:
        """Explicit ``path`` wins, then $OCTRAV_SOLVER; None if neither is set."""
        path = path or os.environ.get(SOLVER_ENV)
        return cls(path, mode) if path else None


def _model_from_literals(lits: list[int], num_vars: int) -> list[bool]:
    model = [False] * num_vars
    for lit in lits:
        if lit == 0:
            break
        v = abs(lit)
        if v > num_vars:
            raise ValueError(f"model literal {lit} exceeds {num_vars} variables")
        model[v - 1] = lit > 0
    return model


def parse_file_result(text: str, num_vars: int) -> SolveOutcome:
    lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
    if not lines:
        return SolveOutcome(Status.SOLVER_ERROR, detail="empty result file")
    head = lines[0].upper()
    if head == "UNSAT":
        return SolveOutcome(Status.UNSAT)
    if head == "INDET":
        return SolveOutcome(Status.TIMEOUT, detail="solver reported INDET")
    if head != "SAT":
        return SolveOutcome(Status.SOLVER_ERROR, detail=f"unexpected result header {lines[0]!r}")
    lits = [int(tok) for ln in lines[1:] for tok in ln.split()]
    if not lits or lits[-1] != 0:
        return SolveOutcome(Status.SOLVER_ERROR, detail="model line not terminated by 0")
    return SolveOutcome(Status.SAT, _model_from_literals(lits, num_vars))


def parse_stream_result(text: str, num_vars: int) -> SolveOutcome:
    status = None
    lits: list[int] = []
    for raw in text.splitlines():
        line = raw.strip()
        if line.startswith("s "):
            word = line[2:].strip().upper()
            status = {
                "SATISFIABLE": Status.SAT,
                "UNSATISFIABLE": Status.UNSAT,
                "UNKNOWN": Status.TIMEOUT,
            }.get(word)
            if status is None:
                return SolveOutcome(Status.SOLVER_ERROR, detail=f"unknown status line {line!r}")
        elif line.startswith("v"):
            lits += [int(tok) for tok in line[1:].split()]
    if status is None:
        return SolveOutcome(Status.SOLVER_ERROR, detail="no 's' status line in solver output")
    if status is not Status.SAT:
        return SolveOutcome(status)
    return SolveOutcome(Status.SAT, _model_from_literals(lits, num_vars))


def run_external_solver(f: CnfFormula, cfg: SolverConfig, timeout: float | None) -> SolveOutcome:
    """Write ``f`` to a temp file, run the solver, and parse its verdict.

    ``timeout`` is in seconds; the child is killed when it expires.  Exit
    codes 10 (SAT) and 20 (UNSAT) are accepted alongside 0.
    """
    exe = shutil.which(cfg.path) or cfg.path
    if not (os.path.isfile(exe) and os.access(exe, os.X_OK)):
        return SolveOutcome(Status.SOLVER_ERROR, detail=f"solver executable not found: {cfg.path}")
    if timeout is not None and timeout <= 0:
        return SolveOutcome(Status.TIMEOUT, detail="no time left")
    with tempfile.TemporaryDirectory(prefix="octrav-") as tmp:
        cnf_path = Path(tmp) / "in.cnf"
        out_path = Path(tmp) / "out.txt"
        cnf_path.write_text(emit_dimacs(f))
        cmd = [exe, *cfg.args, str(cnf_path)]
        if cfg.mode == FILE_MODE:
            cmd.append(str(out_path))
        elif cfg.mode != STREAM_MODE:
            return SolveOutcome(Status.SOLVER_ERROR, detail=f"unknown solver mode {cfg.mode!r}")
        try:
            proc = subprocess.run(cmd, capture_output=True, text=True, timeout=timeout)
        except subprocess.TimeoutExpired:
            return SolveOutcome(Status.TIMEOUT, detail=f"killed after {timeout}s")
        except OSError as exc:
            return SolveOutcome(Status.SOLVER_ERROR, detail=str(exc))
        if proc.returncode not in (0, 10, 20):
            return SolveOutcome(
                Status.SOLVER_ERROR,
                detail=f"exit status {proc.returncode}: {proc.stderr.strip()[-500:]}",
            )
        try:
            if cfg.mode == FILE_MODE:
                if not out_path.exists():
                    return SolveOutcome(Status.SOLVER_ERROR, detail="solver wrote no result file")
                return parse_file_result(out_path.read_text(), f.num_vars)
            return parse_stream_result(proc.stdout, f.num_vars)
        except ValueError as exc:
            log.debug("unparseable solver output", exc_info=True)
            return SolveOutcome(Status.SOLVER_ERROR, detail=f"unparseable output: {exc}")

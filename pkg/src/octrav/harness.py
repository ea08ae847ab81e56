"""Timed runs of the four algorithms, CSV records, and summaries."""

from __future__ import annotations

import csv
import io
import logging
import statistics
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, fields
from pathlib import Path
from typing import Iterable, Sequence, TextIO

from .annealing import AnnealParams, simulated_annealing
from .errors import SearchTimeout
from .formats import read_graph
from .genetic import GeneticParams, genetic
from .graph import D, Graph, Tripartition
from .greedy import greedy, refine_strict_minimal
from .rng import Rng
from .sat import SolverConfig, dpll_solver, external_solver, minimum_deletion_search

log = logging.getLogger(__name__)

ALGORITHMS = ("sat", "greedy", "anneal", "genetic")
OK, TIMEOUT, ERROR = "OK", "TIMEOUT", "ERROR"
NA = "NA"
DEFAULT_TIMEOUT = 3600.0


@dataclass(frozen=True)
class AlgoParams:
    anneal: AnnealParams = field(default_factory=AnnealParams)
    genetic: GeneticParams = field(default_factory=GeneticParams)
    solver: SolverConfig | None = None
    strict_minimal: bool = False

    def canonical(self, algo: str) -> str:
        if algo == "anneal":
            s = self.anneal.schedule
            parts = [f"cooling={s.kind.value}", f"iters={s.i_max}", f"tmax={s.t_max:g}"]
        elif algo == "genetic":
            p = self.genetic
            parts = [f"gens={p.g_max}", f"pmut={p.p_mut:g}", f"pop={p.i_max}"]
        elif algo == "sat":
            if self.solver is None:
                parts = ["solver=dpll"]
            else:
                parts = [f"mode={self.solver.mode}", f"solver={self.solver.path}"]
        else:
            parts = []
        if self.strict_minimal:
            parts.append("strict_minimal=1")
        return ";".join(parts) or "-"


@dataclass
class RunRecord:
    dataset: str
    graph_id: str
    n: int
    m: int
    algorithm: str
    seed: int
    params: str
    d_size: int | None
    best_seen_d: int | None
    time_ms: float
    status: str
    # not written to CSV
    message: str = field(default="", compare=False)
    solution: Tripartition | None = field(default=None, compare=False, repr=False)


CSV_COLUMNS = [f.name for f in fields(RunRecord)][:11]


def solve(
    g: Graph,
    algo: str,
    seed: int,
    params: AlgoParams,
    deadline: float | None = None,
) -> tuple[Tripartition, int | None]:
    """Run one algorithm; returns the solution and the best |D| seen en route.

    The second value is only tracked for the iterative heuristics and is
    None otherwise.
    """
    rng = Rng(seed)
    best_seen = None
    if algo == "greedy":
        t = greedy(g, rng)
    elif algo == "anneal":
        seen = [g.n]

        def track(_i, state):
            seen[0] = min(seen[0], state.side.count(D))

        t = simulated_annealing(g, params.anneal, rng, deadline=deadline, on_step=track)
        best_seen = seen[0]
    elif algo == "genetic":
        seen = [g.n]

        def track_gen(_i, pop):
            seen[0] = min(seen[0], min(ind.d_size for ind in pop))

        t = genetic(g, params.genetic, rng, deadline=deadline, on_generation=track_gen)
        best_seen = seen[0]
    elif algo == "sat":
        fn = external_solver(params.solver) if params.solver else dpll_solver()
        left = None if deadline is None else deadline - time.perf_counter()
        if left is not None and left <= 0:
            raise SearchTimeout("no time left before exact search")
        t, _ = minimum_deletion_search(g, fn, left)
    else:
        raise ValueError(f"unknown algorithm {algo!r}; expected one of {ALGORITHMS}")
    if params.strict_minimal:
        t = refine_strict_minimal(g, t, rng)
    return t, best_seen


def run_algorithm(
    g: Graph,
    algo: str,
    seed: int,
    params: AlgoParams | None = None,
    timeout: float | None = DEFAULT_TIMEOUT,
    *,
    dataset: str = "",
    graph_id: str = "",
) -> RunRecord:
    """Time one run.  Failures become TIMEOUT/ERROR records, never exceptions."""
    params = params or AlgoParams()
    start = time.perf_counter()
    deadline = None if timeout is None else start + timeout
    t = best = None
    status, message = OK, ""
    try:
        t, best = solve(g, algo, seed, params, deadline)
    except SearchTimeout as exc:
        status, message = TIMEOUT, str(exc)
    except Exception as exc:  # noqa: BLE001 - a failed cell must not stop the benchmark
        log.exception("%s on %s failed", algo, graph_id or "graph")
        status, message = ERROR, f"{type(exc).__name__}: {exc}"
    elapsed_ms = (time.perf_counter() - start) * 1000.0
    return RunRecord(
        dataset=dataset,
        graph_id=graph_id,
        n=g.n,
        m=g.m,
        algorithm=algo,
        seed=seed,
        params=params.canonical(algo),
        d_size=t.d_size if t is not None else None,
        best_seen_d=best if t is not None else None,
        time_ms=elapsed_ms,
        status=status,
        message=message,
        solution=t,
    )


def _fmt(value) -> str:
    if value is None:
        return NA
    if isinstance(value, float):
        return repr(value)
    return str(value)


def write_csv(records: Iterable[RunRecord], out: TextIO) -> None:
    w = csv.writer(out, lineterminator="\n")
    w.writerow(CSV_COLUMNS)
    for r in records:
        w.writerow([_fmt(getattr(r, c)) for c in CSV_COLUMNS])


def read_csv(src: TextIO) -> list[RunRecord]:
    def opt_int(s):
        return None if s == NA else int(s)

    out = []
    for row in csv.DictReader(src):
        out.append(
            RunRecord(
                dataset=row["dataset"],
                graph_id=row["graph_id"],
                n=int(row["n"]),
                m=int(row["m"]),
                algorithm=row["algorithm"],
                seed=int(row["seed"]),
                params=row["params"],
                d_size=opt_int(row["d_size"]),
                best_seen_d=opt_int(row["best_seen_d"]),
                time_ms=float(row["time_ms"]),
                status=row["status"],
            )
        )
    return out


@dataclass
class SummaryRow:
    dataset: str
    algorithm: str
    runs: int
    ok: int
    timeouts: int
    errors: int
    mean_d: float | None
    sd_d: float | None
    mean_ms: float | None
    sd_ms: float | None


def _mean_sd(xs: Sequence[float]) -> tuple[float | None, float | None]:
    if not xs:
        return None, None
    return statistics.fmean(xs), statistics.stdev(xs) if len(xs) > 1 else None


def summarize(records: Sequence[RunRecord]) -> list[SummaryRow]:
    """Per (dataset, algorithm): mean and sample SD over OK rows only.

    TIMEOUT and ERROR rows are counted, not averaged.
    """
    groups: dict[tuple[str, str], list[RunRecord]] = {}
    for r in records:
        groups.setdefault((r.dataset, r.algorithm), []).append(r)
    rows = []
    for (dataset, algo), rs in groups.items():
        ok = [r for r in rs if r.status == OK]
        md, sd = _mean_sd([r.d_size for r in ok])
        mt, st = _mean_sd([r.time_ms for r in ok])
        rows.append(
            SummaryRow(
                dataset, algo, len(rs), len(ok),
                sum(r.status == TIMEOUT for r in rs),
                sum(r.status == ERROR for r in rs),
                md, sd, mt, st,
            )
        )
    return rows


SUMMARY_COLUMNS = [f.name for f in fields(SummaryRow)]


def format_summary(rows: Sequence[SummaryRow]) -> str:
    """Whitespace-aligned table; numbers at 12 significant digits.

    A ``*`` after the mean marks groups where some runs did not finish.
    """

    def num(x):
        return NA if x is None else f"{x:.12g}"

    header = ["dataset", "algorithm", "runs", "ok", "timeouts", "errors",
              "mean_d", "sd_d", "mean_ms", "sd_ms"]
    body = []
    for r in rows:
        flag = "*" if r.timeouts or r.errors else ""
        body.append([r.dataset, r.algorithm, str(r.runs), str(r.ok), str(r.timeouts),
                     str(r.errors), num(r.mean_d) + flag, num(r.sd_d), num(r.mean_ms), num(r.sd_ms)])
    widths = [max(len(row[i]) for row in [header] + body) for i in range(len(header))]
    lines = ["  ".join(c.ljust(w) for c, w in zip(row, widths)).rstrip() for row in [header] + body]
    return "\n".join(lines) + "\n"


def write_summary_csv(rows: Sequence[SummaryRow], out: TextIO) -> None:
    w = csv.writer(out, lineterminator="\n")
    w.writerow(SUMMARY_COLUMNS)
    for r in rows:
        w.writerow([_fmt(getattr(r, c)) for c in SUMMARY_COLUMNS])


def quality_curve(records: Sequence[RunRecord]) -> list[tuple[str, str, int, int]]:
    """Rows ``(dataset, algorithm, x, count)``: OK runs with |D| >= x.

    When sat rows are present, graphs where sat did not finish are left out
    for every algorithm so the curves are comparable.
    """
    unfinished = {(r.dataset, r.graph_id) for r in records if r.algorithm == "sat" and r.status != OK}
    by_group: dict[tuple[str, str], list[int]] = {}
    for r in records:
        if r.status != OK or (r.dataset, r.graph_id) in unfinished:
            continue
        by_group.setdefault((r.dataset, r.algorithm), []).append(r.d_size)
    out = []
    for (dataset, algo), sizes in by_group.items():
        for x in range(max(sizes) + 1):
            out.append((dataset, algo, x, sum(d >= x for d in sizes)))
    return out


@dataclass
class BenchConfig:
    inputs: list[str]
    algorithms: list[str] = field(default_factory=lambda: list(ALGORITHMS))
    seeds: list[int] = field(default_factory=lambda: [0])
    fmt: str | None = None
    timeout: float = DEFAULT_TIMEOUT
    params: AlgoParams = field(default_factory=AlgoParams)
    out: str | None = None
    summary_out: str | None = None
    curve_out: str | None = None
    dataset: str | None = None
    jobs: int = 1

    def __post_init__(self):
        if not self.algorithms:
            raise ValueError("at least one algorithm is required")
        bad = [a for a in self.algorithms if a not in ALGORITHMS]
        if bad:
            raise ValueError(f"unknown algorithm(s) {bad}")
        if self.timeout <= 0:
            raise ValueError("timeout must be positive")


def _expand_inputs(paths: Iterable[str]) -> list[Path]:
    files = []
    for p in map(Path, paths):
        if p.is_dir():
            files += sorted(q for q in p.rglob("*") if q.is_file())
        else:
            files.append(p)
    return files


def load_graphs(cfg: BenchConfig) -> list[tuple[str, str, Graph]]:
    """``(dataset, graph_id, graph)`` for every parseable input file."""
    out = []
    for path in _expand_inputs(cfg.inputs):
        try:
            g = read_graph(path, cfg.fmt)
        except (OSError, ValueError) as exc:
            log.warning("skipping %s: %s", path, exc)
            continue
        out.append((cfg.dataset or path.parent.name, path.stem, g))
    return out


def _run_cell(cell) -> RunRecord:
    dataset, graph_id, g, algo, seed, params, timeout = cell
    rec = run_algorithm(g, algo, seed, params, timeout, dataset=dataset, graph_id=graph_id)
    rec.solution = None  # keep the pickled payload small
    return rec


def run_benchmark(cfg: BenchConfig, stdout: TextIO | None = None) -> list[RunRecord]:
    """Run every (graph, algorithm, seed) cell, write CSV, print the summary.

    Records come back in input order whatever ``jobs`` is.  Raises
    ValueError when no input graph could be loaded.
    """
    stdout = stdout or sys.stdout
    graphs = load_graphs(cfg)
    if not graphs:
        raise ValueError("no graphs loaded")
    cells = [
        (dataset, gid, g, algo, seed, cfg.params, cfg.timeout)
        for dataset, gid, g in graphs
        for algo in cfg.algorithms
        for seed in cfg.seeds
    ]
    if cfg.jobs > 1:
        with ProcessPoolExecutor(max_workers=cfg.jobs) as pool:
            records = list(pool.map(_run_cell, cells))
    else:
        records = [_run_cell(c) for c in cells]
    if cfg.out:
        with open(cfg.out, "w", newline="", encoding="utf-8") as fh:
            write_csv(records, fh)
    else:
        buf = io.StringIO()
        write_csv(records, buf)
        stdout.write(buf.getvalue())
    rows = summarize(records)
    stdout.write(format_summary(rows))
    if cfg.summary_out:
        with open(cfg.summary_out, "w", newline="", encoding="utf-8") as fh:
            write_summary_csv(rows, fh)
    if cfg.curve_out:
        with open(cfg.curve_out, "w", newline="", encoding="utf-8") as fh:
            w = csv.writer(fh, lineterminator="\n")
            w.writerow(["dataset", "algorithm", "x", "count"])
            w.writerows(quality_curve(records))
    return records

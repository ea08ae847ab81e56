"""Command-line entry point: solve, bench, gen, encode, verify."""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from .annealing import AnnealParams, Cooling
from .bipartite import is_strictly_minimal, verify_tripartition
from .formats import FORMATS, format_solution, parse_solution, read_graph, to_dimacs_graph, to_edge_list
from .genetic import GeneticParams
from .graph import gen_random_graph
from .harness import ALGORITHMS, DEFAULT_TIMEOUT, OK, AlgoParams, BenchConfig, run_algorithm, run_benchmark
from .sat import SolverConfig, emit_dimacs, encode_bipartite_deletion
from .sat.external import FILE_MODE, STREAM_MODE

log = logging.getLogger("octrav")

COOLING_CHOICES = [c.value for c in Cooling]


class UsageError(Exception):
    pass


def _algo_flags(p: argparse.ArgumentParser) -> None:
    g = p.add_argument_group("algorithm parameters")
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--iters", type=int, default=10000, help="annealing iterations (default 10000)")
    g.add_argument("--tmax", type=float, default=50.0, help="annealing start temperature (default 50)")
    g.add_argument("--cooling", choices=COOLING_CHOICES, default="quadratic")
    g.add_argument("--pop", type=int, default=20, help="genetic population size (default 20)")
    g.add_argument("--gens", type=int, default=1000, help="genetic generations (default 1000)")
    g.add_argument("--pmut", type=float, default=1.0, help="mutation probability (default 1)")
    g.add_argument("--timeout-secs", type=float, default=DEFAULT_TIMEOUT)
    g.add_argument("--solver-path", help="external SAT solver; falls back to $OCTRAV_SOLVER, then built-in DPLL")
    g.add_argument("--solver-mode", choices=[FILE_MODE, STREAM_MODE], default=FILE_MODE)
    g.add_argument("--strict-minimal", action="store_true",
                   help="afterwards put back deleted vertices while the rest stays bipartite")


def _params(args) -> AlgoParams:
    return AlgoParams(
        anneal=AnnealParams.make(args.iters, args.tmax, args.cooling),
        genetic=GeneticParams(g_max=args.gens, i_max=args.pop, p_mut=args.pmut),
        solver=SolverConfig.from_env(args.solver_path, args.solver_mode),
        strict_minimal=args.strict_minimal,
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="octrav", description=__doc__)
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", help="delete vertices until one graph is bipartite")
    p.add_argument("graph")
    p.add_argument("--algo", choices=ALGORITHMS, default="greedy")
    p.add_argument("--format", choices=FORMATS)
    p.add_argument("--out", help="write the solution here instead of stdout")
    _algo_flags(p)

    p = sub.add_parser("bench", help="run algorithms over graph files and summarise")
    p.add_argument("inputs", nargs="*", help="graph files or directories")
    p.add_argument("--config", help="JSON file with BenchConfig fields; flags override")
    p.add_argument("--algo", action="append", choices=ALGORITHMS,
                   help="repeat for several algorithms (default: all four)")
    p.add_argument("--format", choices=FORMATS)
    p.add_argument("--seeds", type=int, nargs="+", help="seeds per graph (default: --seed)")
    p.add_argument("--dataset", help="dataset name (default: parent directory)")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--out", help="CSV output (default stdout)")
    p.add_argument("--summary-out")
    p.add_argument("--curve-out", help="CSV of |D| >= x counts per algorithm")
    _algo_flags(p)

    p = sub.add_parser("gen", help="write a uniform random G(n, m) graph")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--format", choices=("edgelist", "dimacs"), default="edgelist")
    p.add_argument("--out")

    p = sub.add_parser("encode", help="print the DIMACS CNF for 'at most k deletions'")
    p.add_argument("graph")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--format", choices=FORMATS)
    p.add_argument("--out")

    p = sub.add_parser("verify", help="check a solution file against a graph")
    p.add_argument("graph")
    p.add_argument("solution", help="solution file, or - for stdin")
    p.add_argument("--format", choices=FORMATS)
    p.add_argument("--strict-minimal", action="store_true", help="also require inclusion-minimal D")
    return parser


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def cmd_solve(args) -> int:
    g = read_graph(args.graph, args.format)
    rec = run_algorithm(g, args.algo, args.seed, _params(args), args.timeout_secs,
                        graph_id=Path(args.graph).stem)
    if rec.status != OK:
        print(f"octrav: {args.algo} {rec.status.lower()}: {rec.message}", file=sys.stderr)
        return 1
    header = f"# algorithm={args.algo} seed={args.seed} |D|={rec.d_size} time_ms={rec.time_ms:.3f}\n"
    _emit(header + format_solution(g, rec.solution), args.out)
    return 0


def _bench_config(args) -> BenchConfig:
    data = {}
    if args.config:
        data = json.loads(Path(args.config).read_text())
    inputs = args.inputs or data.get("inputs") or []
    if not inputs:
        raise UsageError("bench needs at least one input graph (positional or in --config)")
    return BenchConfig(
        inputs=list(inputs),
        algorithms=args.algo or data.get("algorithms") or list(ALGORITHMS),
        seeds=args.seeds or data.get("seeds") or [args.seed],
        fmt=args.format or data.get("format"),
        timeout=args.timeout_secs,
        params=_params(args),
        out=args.out or data.get("out"),
        summary_out=args.summary_out or data.get("summary_out"),
        curve_out=args.curve_out or data.get("curve_out"),
        dataset=args.dataset or data.get("dataset"),
        jobs=args.jobs,
    )


def cmd_bench(args) -> int:
    cfg = _bench_config(args)
    try:
        run_benchmark(cfg)
    except ValueError as exc:
        print(f"octrav: {exc}", file=sys.stderr)
        return 1
    return 0


def cmd_gen(args) -> int:
    g = gen_random_graph(args.n, args.m, args.seed)
    text = to_dimacs_graph(g) if args.format == "dimacs" else to_edge_list(g)
    _emit(text, args.out)
    return 0


def cmd_encode(args) -> int:
    g = read_graph(args.graph, args.format)
    f, _ = encode_bipartite_deletion(g, args.k)
    _emit(emit_dimacs(f), args.out)
    return 0


def cmd_verify(args) -> int:
    g = read_graph(args.graph, args.format)
    text = sys.stdin.read() if args.solution == "-" else Path(args.solution).read_text()
    t = parse_solution(text, g)
    rep = verify_tripartition(g, t)
    lab = g.label

    def mark(ok):
        return "ok" if ok else "FAIL"

    print(f"complete     {mark(rep.complete)}"
          + ("" if rep.complete else f"  (vertex {lab(rep.unassigned_vertex)} unassigned)"))
    print(f"valid        {mark(rep.valid)}"
          + ("" if rep.valid else f"  (edge {lab(rep.bad_edge[0])}-{lab(rep.bad_edge[1])})"))
    print(f"certificate  {mark(rep.certificate)}"
          + ("" if rep.certificate else f"  (vertex {lab(rep.uncertified_vertex)})"))
    ok = rep.ok
    if args.strict_minimal:
        minimal, witness = is_strictly_minimal(g, t) if rep.complete and rep.valid else (False, None)
        print(f"minimal      {mark(minimal)}"
              + ("" if minimal or witness is None else f"  (vertex {lab(witness)} can be kept)"))
        ok = ok and minimal
    print(f"|D| = {t.d_size}")
    return 0 if ok else 1


COMMANDS = {"solve": cmd_solve, "bench": cmd_bench, "gen": cmd_gen, "encode": cmd_encode, "verify": cmd_verify}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return COMMANDS[args.command](args)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"octrav: error: {exc}", file=sys.stderr)
        return 2
    except (OSError, ValueError) as exc:
        print(f"octrav: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())

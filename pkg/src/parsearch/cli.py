"""Command-line harness: solve single instances, run sweeps, simulate costs.

Subcommands:
  solve   one instance, one algorithm; prints stats, writes a JSON record
  bench   sweep a suite file over algorithms/strategies/worker counts (CSV)
  iasim   iterative-allocation cost simulation (CSV)

Exit codes: 0 solved, 1 unsolvable, 2 resource limit exceeded, 3 usage or
input error. Engines run on the deterministic interleaved substrate by
default so that every counter in the output is reproducible for a fixed
seed; pass --threads for real OS threads (wall-clock oriented, counters not
reproducible). PARSEARCH_SEED overrides the default seed.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from parsearch.allocation import CostModel, ratio_bounds, sweep
from parsearch.common import INF, ConfigError, NodeLimitExceeded
from parsearch.domains import (
    GridProblem,
    LatticeProblem,
    TilePuzzle,
    parse_graph,
    parse_grid,
    random_grid,
    random_solvable,
)
from parsearch.domains.tiles import random_scramble
from parsearch.engine import EngineConfig, dovetail, hdastar, parallel_window, spastar
from parsearch.hashing import STRATEGY_TOKENS, parse_strategy_config
from parsearch.metrics import csv_row, efficiency_fraction, overheads, rows_to_csv
from parsearch.serial import astar, idastar, uniform_cost_oracle, wastar

SCHEMA_VERSION = 1

RECORD_FIELDS = """\
Run record JSON fields (schema 1):
  schema, algorithm, domain, instance, strategy, workers, batch_size,
  termination, execution, seed, cost (Infinity when unsolvable), solved,
  path_length, wall_time, expanded, generated, reopened, duplicates,
  max_open, sent, received, per_worker (list of counter objects),
  detection_rounds, detection_waves, winner_weight (dovetail only).

Bench CSV columns:
  instance, algo, strategy, p, cost, expanded, SO, CO, LB,
  efficiency_fraction, speedup, wall_time.
  SO/CO/LB/speedup compare against the serial A* baseline row of the same
  instance. Counters are deterministic for a fixed seed; wall-time columns
  are not.

iasim CSV columns:
  W_plus, b, model, total_cost, optimal_cost, iterations, ratio.
"""

ALGOS = (
    "astar",
    "idastar",
    "wastar",
    "ucs",
    "spastar",
    "hdastar",
    "window",
    "dovetail",
)


def default_seed() -> int:
    env = os.environ.get("PARSEARCH_SEED")
    return int(env) if env else 42


def _parse_kv(text: str) -> dict[str, str]:
    out = {}
    for part in text.split(","):
        part = part.strip()
        if not part:
            continue
        if "=" not in part:
            raise ConfigError(f"expected key=value, got {part!r}")
        key, value = part.split("=", 1)
        out[key.strip()] = value.strip()
    return out


def _parse_cell(text: str) -> tuple[int, int]:
    x, y = text.split(",")
    return int(x), int(y)


def build_problem(args) -> tuple[object, str]:
    """Construct the search problem named by --domain/--file/--gen."""
    domain = args.domain
    if domain == "tile":
        gen = _parse_kv(args.gen or "n=3,seed=1")
        n = int(gen.get("n", 3))
        seed = int(gen.get("seed", args.seed))
        if "depth" in gen:
            state = random_scramble(n, int(gen["depth"]), seed)
        else:
            state = random_solvable(n, seed)
        return TilePuzzle(state, n), f"tile-n{n}-s{seed}"
    if domain == "grid":
        if args.file:
            grid = parse_grid(Path(args.file).read_text())
            name = Path(args.file).name
        else:
            gen = _parse_kv(args.gen or "w=16,h=16,fill=0.25,seed=1")
            w, h = int(gen.get("w", 16)), int(gen.get("h", 16))
            fill = float(gen.get("fill", 0.25))
            seed = int(gen.get("seed", args.seed))
            conn = int(gen.get("conn", 8))
            grid = random_grid(w, h, fill, seed, conn)
            name = f"grid-{w}x{h}-s{seed}"
        start = _parse_cell(args.start) if args.start else (0, 0)
        goal = (
            _parse_cell(args.goal)
            if args.goal
            else (grid.width - 1, grid.height - 1)
        )
        if not args.file:
            blocked = set(grid.blocked) - {start, goal}
            grid = type(grid)(grid.width, grid.height, frozenset(blocked), grid.connectivity)
        return GridProblem(grid, start, goal), name
    if domain == "graph":
        if not args.file:
            raise ConfigError("graph domain requires --file")
        graph = parse_graph(Path(args.file).read_text())
        return graph, Path(args.file).name
    if domain == "lattice":
        gen = _parse_kv(args.gen or "dims=4x4")
        dims = tuple(int(d) for d in gen.get("dims", "4x4").split("x"))
        return LatticeProblem(dims), f"lattice-{gen.get('dims', '4x4')}"
    raise ConfigError(f"unknown domain {domain!r}")


def run_algorithm(problem, args):
    """Dispatch one run; returns a Solution."""
    algo = args.algo
    execution = "threaded" if args.threads else "interleaved"
    if algo == "astar":
        return astar(problem, node_limit=args.node_limit)
    if algo == "ucs":
        return uniform_cost_oracle(problem, node_limit=args.node_limit)
    if algo == "idastar":
        return idastar(problem, node_limit=args.node_limit)
    if algo == "wastar":
        return wastar(problem, args.weight, node_limit=args.node_limit)
    if algo == "dovetail":
        weights = [
            INF if w.strip() in ("inf", "infinity") else float(w)
            for w in args.weights.split(",")
        ]
        return dovetail(problem, weights, execution, args.node_limit)
    config = EngineConfig(
        workers=args.workers,
        strategy=args.hash,
        batch_size=args.batch,
        seed=args.seed,
        node_limit=args.node_limit,
        termination=args.termination,
        execution=execution,
        strategy_config=args.hash_config_data,
    )
    if algo == "spastar":
        return spastar(problem, config)
    if algo == "hdastar":
        return hdastar(problem, config)
    if algo == "window":
        return parallel_window(problem, config)
    raise ConfigError(f"unknown algorithm {algo!r}")


def make_record(solution, args, instance: str) -> dict:
    stats = solution.stats
    record = {
        "schema": SCHEMA_VERSION,
        "algorithm": solution.meta.get("algorithm", args.algo),
        "domain": args.domain,
        "instance": instance,
        "strategy": solution.meta.get("strategy", ""),
        "workers": solution.meta.get("workers", 1),
        "batch_size": solution.meta.get("batch_size"),
        "termination": solution.meta.get("termination"),
        "execution": solution.meta.get("execution", "serial"),
        "seed": args.seed,
        "cost": solution.cost,
        "solved": solution.solved,
        "path_length": len(solution.path),
        "wall_time": stats.wall_time,
        "expanded": stats.expanded,
        "generated": stats.generated,
        "reopened": stats.reopened,
        "duplicates": stats.duplicates,
        "max_open": stats.max_open,
        "sent": stats.sent,
        "received": stats.received,
        "per_worker": [w.to_dict() for w in (solution.per_worker or [])],
        "detection_rounds": solution.meta.get("detection_rounds"),
        "detection_waves": solution.meta.get("detection_waves"),
    }
    if "winner_weight" in solution.meta:
        record["winner_weight"] = solution.meta["winner_weight"]
    return record


def cmd_solve(args) -> int:
    problem, instance = build_problem(args)
    solution = run_algorithm(problem, args)
    record = make_record(solution, args, instance)
    print(
        f"{record['algorithm']} on {instance}: "
        f"cost={solution.cost} expanded={solution.stats.expanded} "
        f"wall={solution.stats.wall_time:.3f}s"
    )
    if args.out:
        Path(args.out).write_text(json.dumps(record, indent=2))
        print(f"record written to {args.out}")
    return 0 if solution.solved else 1


def _suite_problem(entry: dict, seed: int):
    ns = argparse.Namespace(
        domain=entry["domain"],
        gen=",".join(f"{k}={v}" for k, v in entry.get("gen", {}).items()) or None,
        file=entry.get("file"),
        start=entry.get("start"),
        goal=entry.get("goal"),
        seed=seed,
    )
    problem, auto_name = build_problem(ns)
    return problem, entry.get("name", auto_name)


def cmd_bench(args) -> int:
    suite = json.loads(Path(args.suite).read_text())
    instances = suite.get("instances", [])
    if not instances:
        raise ConfigError("suite lists no instances")
    seed = suite.get("seed", args.seed)
    problems = [_suite_problem(entry, seed) for entry in instances]
    algos = suite.get("algos", ["hdastar"])
    strategies = suite.get("strategies", ["zobrist"])
    workers = suite.get("workers", [2, 4])
    termination = suite.get("termination", "two-wave")
    batch = suite.get("batch")
    rows = []
    for problem, name in problems:
        baseline = astar(problem)
        c_star = baseline.cost
        rows.append(
            csv_row(
                name,
                "astar",
                "",
                1,
                baseline,
                None,
                efficiency_fraction(baseline, c_star) if baseline.solved else None,
            )
        )
        for algo in algos:
            strat_list = strategies if algo == "hdastar" else [""]
            for strategy in strat_list:
                for p in workers:
                    config = EngineConfig(
                        workers=p,
                        strategy=strategy or "zobrist",
                        batch_size=batch,
                        seed=seed,
                        termination=termination,
                    )
                    if algo == "hdastar":
                        sol = hdastar(problem, config)
                    elif algo == "spastar":
                        sol = spastar(problem, config)
                    elif algo == "window":
                        sol = parallel_window(problem, config)
                    else:
                        raise ConfigError(f"bench does not support algo {algo!r}")
                    report = overheads(baseline, sol)
                    eff = (
                        efficiency_fraction(sol, c_star) if sol.solved else None
                    )
                    rows.append(csv_row(name, algo, strategy, p, sol, report, eff))
    text = rows_to_csv(rows)
    if args.out:
        Path(args.out).write_text(text)
        print(f"{len(rows)} rows written to {args.out}")
    else:
        print(text, end="")
    return 0


def cmd_iasim(args) -> int:
    if args.b <= 1:
        raise ConfigError("--b must be > 1")
    model = CostModel(kind=args.model, spare_reuse=not args.no_reuse)
    worst, avg = ratio_bounds(args.b)
    rows = sweep(args.b, args.wmax, model, fail_time=args.e_fail, makespan=args.makespan)
    lines = [
        f"# schema {SCHEMA_VERSION}",
        f"# b={args.b} worst_bound={worst} average_bound={avg}",
        "W_plus,b,model,total_cost,optimal_cost,iterations,ratio",
    ]
    for row in rows:
        lines.append(
            f"{row.min_width},{row.b},{row.model},{row.total_cost},"
            f"{row.optimal_cost},{row.iterations},{row.ratio}"
        )
    text = "\n".join(lines) + "\n"
    if args.out:
        Path(args.out).write_text(text)
        print(f"{len(rows)} rows written to {args.out}")
        print(f"bounds: worst={worst} average={avg}")
    else:
        print(text, end="")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="parsearch",
        description=__doc__,
        epilog=RECORD_FIELDS,
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    sub = parser.add_subparsers(dest="command", required=True)

    solve = sub.add_parser("solve", help="solve one instance")
    solve.add_argument("--domain", required=True, choices=["tile", "grid", "graph", "lattice"])
    solve.add_argument("--file", help="instance file (grid/graph)")
    solve.add_argument("--gen", help='generator spec, e.g. "n=3,seed=7"')
    solve.add_argument("--start", help="grid start cell x,y")
    solve.add_argument("--goal", help="grid goal cell x,y")
    solve.add_argument("--algo", default="astar", choices=ALGOS)
    solve.add_argument("--hash", default="zobrist")
    solve.add_argument("--hash-config", help="key = value strategy config file")
    solve.add_argument("--workers", type=int, default=1)
    solve.add_argument("--batch", type=int, default=None)
    solve.add_argument("--weight", type=float, default=2.0, help="wastar weight")
    solve.add_argument(
        "--weights", default="1,1.5,2,3,inf", help="dovetail weight list"
    )
    solve.add_argument("--termination", default="two-wave", choices=["two-wave", "time"])
    solve.add_argument("--node-limit", type=int, default=10_000_000)
    solve.add_argument("--seed", type=int, default=None)
    solve.add_argument("--threads", action="store_true", help="real OS threads")
    solve.add_argument("--out", help="write run record JSON here")

    bench = sub.add_parser("bench", help="run a benchmark suite")
    bench.add_argument("--suite", required=True, help="suite JSON file")
    bench.add_argument("--seed", type=int, default=None)
    bench.add_argument("--out", help="write CSV here (default stdout)")

    iasim = sub.add_parser("iasim", help="iterative-allocation simulation")
    iasim.add_argument("--b", type=float, default=2.0, help="geometric base")
    iasim.add_argument("--wmax", type=int, default=1024, help="max minimal width")
    iasim.add_argument("--model", default="discrete", choices=["discrete", "continuous"])
    iasim.add_argument("--e-fail", type=float, default=1.0, help="failing iteration hours")
    iasim.add_argument("--makespan", type=float, default=1.0, help="success hours")
    iasim.add_argument("--no-reuse", action="store_true", help="disable spare-time reuse")
    iasim.add_argument("--out", help="write CSV here (default stdout)")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 3 if exc.code not in (0, None) else 0
    if getattr(args, "seed", None) is None:
        args.seed = default_seed()
    if hasattr(args, "hash") and args.hash not in STRATEGY_TOKENS:
        print(f"error: unknown --hash token {args.hash!r}", file=sys.stderr)
        print(f"expected one of: {', '.join(STRATEGY_TOKENS)}", file=sys.stderr)
        return 3
    if getattr(args, "hash_config", None):
        try:
            args.hash_config_data = parse_strategy_config(
                Path(args.hash_config).read_text()
            )
        except (OSError, ConfigError) as exc:
            print(f"error: {exc}", file=sys.stderr)
            return 3
    elif hasattr(args, "hash"):
        args.hash_config_data = {}
    try:
        if args.command == "solve":
            return cmd_solve(args)
        if args.command == "bench":
            return cmd_bench(args)
        if args.command == "iasim":
            return cmd_iasim(args)
        return 3
    except NodeLimitExceeded as exc:
        print(f"resource limit: {exc}", file=sys.stderr)
        return 2
    except (ValueError, FileNotFoundError) as exc:
        # covers ConfigError, ParseError, JSON decoding, bad instances
        print(f"error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())

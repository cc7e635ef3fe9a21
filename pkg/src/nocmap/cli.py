"""Command line front end.

Subcommands: map, schedule, optimize, gen, oracle, bench.  Each run prints
one human-readable result line; artifacts and CSV rows are written only when
--out / --csv are given, and are byte-stable for a fixed config and seed.
"""

from __future__ import annotations

import argparse
import glob as globlib
import sys
from pathlib import Path

from .harness import (
    ComparisonSummary,
    ReportRow,
    RunConfig,
    compare_report,
    exhaustive_oracle,
    format_comparison,
    run_benchmark,
)
from .mappers import MAPPERS
from .metrics import EnergyModel
from .pso import PsoParams
from .taskgraph import generate_random_graph, parse_graph, serialize_graph
from .topology import Mesh3D


def _energy_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--e-link", type=float, default=0.449, help="link energy, pJ/bit")
    parser.add_argument("--e-switch", type=float, default=0.284, help="switch energy, pJ/bit")
    parser.add_argument("--rho", type=float, default=1.0, help="latency scale constant")


def _run_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--graph", required=True, help="graph file")
    parser.add_argument("--mesh", type=int, default=3, help="mesh side length n")
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--out", default=None, help="directory for mapping artifacts")
    parser.add_argument("--csv", default=None, help="append a report row to this CSV")
    parser.add_argument("--name", default=None, help="benchmark name (default: file stem)")
    _energy_flags(parser)


def _row_line(row: ReportRow) -> str:
    latency = "n/a" if row.avg_latency is None else f"{row.avg_latency:.6g}"
    return (
        f"{row.benchmark} [{row.mode}/{row.algo}] energy={row.total_energy:.6g} pJ "
        f"cost={row.comm_cost} latency={latency} eta={row.eta} "
        f"runtime_ms={row.runtime_ms:.1f} seed={row.seed}"
    )


def _cmd_map(args) -> int:
    cfg = RunConfig(
        graph=args.graph, mesh_n=args.mesh, algo=args.algo, mode="map",
        e_switch=args.e_switch, e_link=args.e_link, rho=args.rho,
        seed=args.seed, out_dir=args.out, csv_path=args.csv, name=args.name,
    )
    row, _ = run_benchmark(cfg)
    print(_row_line(row))
    return 0


def _cmd_schedule(args) -> int:
    cfg = RunConfig(
        graph=args.graph, mesh_n=args.mesh, mode=args.mode,
        algo=args.cluster_mapper if args.mode == "cluster" else "ddmap",
        e_switch=args.e_switch, e_link=args.e_link, rho=args.rho,
        seed=args.seed, out_dir=args.out, csv_path=args.csv, name=args.name,
    )
    row, _ = run_benchmark(cfg)
    print(_row_line(row))
    return 0


def _cmd_optimize(args) -> int:
    params = PsoParams(
        c1=args.pso_c1, c2=args.pso_c2, w=args.pso_w,
        swarm_size=args.pso_swarm_size,
        max_evals_per_simulation=args.pso_evals,
        seed=args.seed,
    )
    cfg = RunConfig(
        graph=args.graph, mesh_n=args.mesh, mode="pso", objective=args.objective,
        e_switch=args.e_switch, e_link=args.e_link, rho=args.rho,
        seed=args.seed, pso=params, simulations=args.pso_simulations,
        seed_mapping=args.seed_mapping,
        out_dir=args.out, csv_path=args.csv, name=args.name,
    )
    row, _ = run_benchmark(cfg)
    print(_row_line(row))
    return 0


def _cmd_gen(args) -> int:
    g = generate_random_graph(
        args.cores, args.arcs,
        volume_range=(args.vol_min, args.vol_max),
        bandwidth_range=(args.bw_min, args.bw_max),
        seed=args.seed,
    )
    Path(args.out).write_text(serialize_graph(g), encoding="utf-8")
    print(f"wrote {args.out}: {g.n_cores} cores, {len(g.arcs)} arcs, seed {args.seed}")
    return 0


def _cmd_oracle(args) -> int:
    g = parse_graph(Path(args.graph).read_text(encoding="utf-8"))
    mesh = Mesh3D(args.mesh)
    model = EnergyModel(e_switch_bit=args.e_switch, e_link_bit=args.e_link, rho=args.rho)
    value, mapping = exhaustive_oracle(g, mesh, args.objective, model)
    print(f"optimum {args.objective} = {value:.6g}" if args.objective == "energy"
          else f"optimum {args.objective} = {value}")
    for core in sorted(mapping):
        print(f"core {core} -> tile {mapping[core]}")
    return 0


def _cmd_bench(args) -> int:
    paths = sorted(globlib.glob(args.glob))
    if not paths:
        print(f"no graphs match {args.glob!r}", file=sys.stderr)
        return 1
    algos = list(MAPPERS) if args.all_algos else [args.algo]
    rows = []
    for path in paths:
        for algo in algos:
            cfg = RunConfig(
                graph=path, mesh_n=args.mesh, algo=algo, mode=args.mode,
                e_switch=args.e_switch, e_link=args.e_link, rho=args.rho,
                seed=args.seed, out_dir=args.out, csv_path=args.csv,
            )
            row, _ = run_benchmark(cfg)
            rows.append(row)
            print(_row_line(row))
    if args.compare:
        a_label, b_label = args.compare
        summary: ComparisonSummary = compare_report(rows, a_label, b_label)
        print(format_comparison(summary))
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="nocmap",
        description="Map task graphs onto a 3D mesh network-on-chip and report "
        "communication energy, cost, and latency.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("map", help="one-core-per-tile mapping")
    _run_flags(p)
    p.add_argument("--algo", choices=MAPPERS, default="ddmap")
    p.set_defaults(func=_cmd_map)

    p = sub.add_parser("schedule", help="many-tasks-per-tile scheduling")
    _run_flags(p)
    p.add_argument("--mode", choices=("dynamic", "cluster"), default="dynamic")
    p.add_argument("--cluster-mapper", choices=MAPPERS, default="ddmap")
    p.set_defaults(func=_cmd_schedule)

    p = sub.add_parser("optimize", help="particle-swarm refinement of a mapping")
    _run_flags(p)
    p.add_argument("--objective", choices=("energy", "cost"), default="energy")
    p.add_argument("--seed-mapping", default=None, help="mapping artifact used to seed the swarm")
    p.add_argument("--pso-swarm-size", type=int, default=200)
    p.add_argument("--pso-evals", type=int, default=150_000)
    p.add_argument("--pso-c1", type=float, default=1.2)
    p.add_argument("--pso-c2", type=float, default=1.3)
    p.add_argument("--pso-w", type=float, default=0.721348)
    p.add_argument("--pso-simulations", type=int, default=1)
    p.set_defaults(func=_cmd_optimize)

    p = sub.add_parser("gen", help="generate a seeded random graph file")
    p.add_argument("--cores", type=int, required=True)
    p.add_argument("--arcs", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", required=True)
    p.add_argument("--vol-min", type=int, default=10)
    p.add_argument("--vol-max", type=int, default=1000)
    p.add_argument("--bw-min", type=int, default=1)
    p.add_argument("--bw-max", type=int, default=100)
    p.set_defaults(func=_cmd_gen)

    p = sub.add_parser("oracle", help="exhaustive optimum for small instances")
    p.add_argument("--graph", required=True)
    p.add_argument("--mesh", type=int, default=3)
    p.add_argument("--objective", choices=("energy", "cost"), default="energy")
    _energy_flags(p)
    p.set_defaults(func=_cmd_oracle)

    p = sub.add_parser("bench", help="run a batch of graph files")
    p.add_argument("--glob", required=True, help="shell pattern for graph files")
    p.add_argument("--all-algos", action="store_true", help="run every mapper")
    p.add_argument("--algo", choices=MAPPERS, default="ddmap")
    p.add_argument("--mode", choices=("map", "dynamic", "cluster"), default="map")
    p.add_argument("--mesh", type=int, default=3)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", default=None)
    p.add_argument("--csv", default=None)
    p.add_argument("--compare", nargs=2, metavar=("A", "B"),
                   help="print percentage reductions of A relative to baseline B")
    _energy_flags(p)
    p.set_defaults(func=_cmd_bench)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())

#!/usr/bin/env python3
"""Compare the three mappers over a batch of seeded random graphs.

Prints the per-mapper mean of each metric and the pairwise mean energy
reductions; optionally appends every run to a CSV for external plotting.
"""

import argparse
import statistics

from nocmap import (
    Mesh3D,
    ReportRow,
    append_report_csv,
    evaluate,
    generate_random_graph,
    map_with,
)
from nocmap.mappers import MAPPERS


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--graphs", type=int, default=100, help="number of random instances")
    ap.add_argument("--cores", type=int, default=16)
    ap.add_argument("--arcs", type=int, default=24)
    ap.add_argument("--mesh", type=int, default=3)
    ap.add_argument("--csv", default=None, help="append per-run rows to this file")
    args = ap.parse_args()

    mesh = Mesh3D(args.mesh)
    metrics = {algo: {"energy": [], "cost": [], "latency": []} for algo in MAPPERS}
    rows = []
    for seed in range(args.graphs):
        g = generate_random_graph(args.cores, args.arcs, seed=seed)
        for algo in MAPPERS:
            rep = evaluate(g, map_with(algo, g, mesh), mesh)
            metrics[algo]["energy"].append(rep.total_energy)
            metrics[algo]["cost"].append(rep.comm_cost)
            metrics[algo]["latency"].append(rep.avg_latency)
            rows.append(
                ReportRow(
                    benchmark=f"rand{args.cores}c{args.arcs}a",
                    algo=algo,
                    mode="map",
                    total_energy=rep.total_energy,
                    comm_cost=rep.comm_cost,
                    avg_latency=rep.avg_latency,
                    eta=rep.eta,
                    runtime_ms=0.0,
                    seed=seed,
                )
            )
    if args.csv:
        append_report_csv(args.csv, rows)

    print(f"{args.graphs} random graphs, {args.cores} cores / {args.arcs} arcs, "
          f"{args.mesh}x{args.mesh}x{args.mesh} mesh")
    for algo in MAPPERS:
        m = metrics[algo]
        print(f"  {algo:8s} mean energy {statistics.mean(m['energy']):10.1f} pJ   "
              f"mean cost {statistics.mean(m['cost']):8.1f}   "
              f"mean latency {statistics.mean(m['latency']):8.1f}")
    base = statistics.mean(metrics["ddmap"]["energy"])
    for other in ("spiral", "crinkle"):
        reference = statistics.mean(metrics[other]["energy"])
        print(f"  ddmap vs {other}: {100 * (reference - base) / reference:.1f}% "
              f"mean energy reduction")


if __name__ == "__main__":
    main()

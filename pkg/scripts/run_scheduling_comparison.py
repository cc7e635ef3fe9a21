#!/usr/bin/env python3
"""Cluster-based vs dynamic multi-round scheduling over random instances.

Reports the mean percentage reduction in energy, cost, and latency that
co-locating communication chains buys over one-task-per-tile rounds.
"""

import argparse
import statistics

from nocmap import Mesh3D, cluster_schedule, dynamic_schedule, evaluate, generate_random_graph


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--graphs", type=int, default=50)
    ap.add_argument("--tasks", type=int, default=27)
    ap.add_argument("--arcs", type=int, default=40)
    ap.add_argument("--mesh", type=int, default=3)
    ap.add_argument("--cluster-mapper", default="ddmap",
                    choices=("ddmap", "spiral", "crinkle"))
    args = ap.parse_args()

    mesh = Mesh3D(args.mesh)
    dyn = {"energy": [], "cost": [], "latency": []}
    clu = {"energy": [], "cost": [], "latency": []}
    for seed in range(args.graphs):
        g = generate_random_graph(args.tasks, args.arcs, seed=seed)
        for store, schedule in (
            (dyn, dynamic_schedule(g, mesh)),
            (clu, cluster_schedule(g, mesh, args.cluster_mapper)),
        ):
            rep = evaluate(g, schedule.placement, mesh)
            store["energy"].append(rep.total_energy)
            store["cost"].append(rep.comm_cost)
            store["latency"].append(rep.avg_latency)

    print(f"{args.graphs} random graphs, {args.tasks} tasks / {args.arcs} arcs, "
          f"cluster mapper {args.cluster_mapper}")
    for metric in ("energy", "cost", "latency"):
        mean_dyn = statistics.mean(dyn[metric])
        mean_clu = statistics.mean(clu[metric])
        print(f"  {metric:8s} dynamic {mean_dyn:10.1f}   cluster {mean_clu:10.1f}   "
              f"reduction {100 * (mean_dyn - mean_clu) / mean_dyn:5.1f}%")


if __name__ == "__main__":
    main()

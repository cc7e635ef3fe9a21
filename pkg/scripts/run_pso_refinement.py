#!/usr/bin/env python3
"""Swarm refinement of spiral/crinkle cluster mappings.

For each random instance the tasks are chain-clustered, the cluster graph
is mapped with spiral and crinkle, and each mapping seeds a particle swarm.
Reports how often and by how much the swarm improves the seeds.
"""

import argparse
import statistics

from nocmap import (
    Mesh3D,
    PsoParams,
    cluster_graph,
    cluster_tasks,
    crinkle_order,
    generate_random_graph,
    pso_optimize,
    sequence_map,
    spiral_order,
    total_energy,
)


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--graphs", type=int, default=25)
    ap.add_argument("--tasks", type=int, default=27)
    ap.add_argument("--arcs", type=int, default=40)
    ap.add_argument("--mesh", type=int, default=3)
    ap.add_argument("--evals", type=int, default=150_000)
    args = ap.parse_args()

    mesh = Mesh3D(args.mesh)
    for order_fn, label in ((spiral_order, "spiral"), (crinkle_order, "crinkle")):
        improved = 0
        gains = []
        for i in range(args.graphs):
            g = generate_random_graph(args.tasks, args.arcs, seed=300 + i)
            cg = cluster_graph(g, cluster_tasks(g, mesh.tile_count))
            seed_map = sequence_map(cg, mesh, order_fn(mesh))
            seed_fitness = total_energy(cg, seed_map, mesh)
            result = pso_optimize(
                cg, mesh,
                PsoParams(seed=i, max_evals_per_simulation=args.evals),
                "energy", seed_mapping=seed_map,
            )
            if result.fitness < seed_fitness:
                improved += 1
                gains.append(100 * (seed_fitness - result.fitness) / seed_fitness)
        mean_gain = statistics.mean(gains) if gains else 0.0
        print(f"{label:8s} improved {improved}/{args.graphs} instances, "
              f"mean energy reduction on improved runs {mean_gain:.1f}%")


if __name__ == "__main__":
    main()

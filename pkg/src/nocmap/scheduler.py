"""Many-tasks-per-tile assignment: multi-round dynamic scheduling and
chain-based cluster scheduling.

Dynamic scheduling fills the whole mesh one core per tile, then starts over
with the leftover tasks on a fresh occupancy, stacking rounds until every
task has a tile.

Cluster scheduling first groups tasks into chains of heavy communicators
(each chain grown greedily by maximum exchanged volume, and cut as soon as
the newest task also talks to an earlier-scheduled task), then maps whole
clusters to tiles.  Traffic inside a cluster never enters the network, which
is where the energy savings come from.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

from .mappers import map_with
from .metrics import Mapping
from .taskgraph import Arc, Core, TaskGraph, induced_subgraph, priority_order
from .topology import Mesh3D


@dataclass(frozen=True)
class ClusterSet:
    """A partition of task ids into ordered clusters."""

    clusters: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        seen: set[int] = set()
        for cluster in self.clusters:
            if not cluster:
                raise ValueError("empty cluster")
            for t in cluster:
                if t in seen:
                    raise ValueError(f"task {t} appears in two clusters")
                seen.add(t)
        if seen != set(range(len(seen))):
            raise ValueError("clusters must cover task ids 0..N-1 exactly")

    @cached_property
    def cluster_of(self) -> dict[int, int]:
        return {t: i for i, cluster in enumerate(self.clusters) for t in cluster}

    @property
    def n_tasks(self) -> int:
        return sum(len(c) for c in self.clusters)


@dataclass
class Schedule:
    """Task -> tile placement (many-to-one) plus per-tile slot lists.

    Slot lists record assignment order; no timing model is attached to them.
    """

    placement: dict[int, int]
    slots: dict[int, list[int]]


def _slots_from_placement(placement: dict[int, int]) -> dict[int, list[int]]:
    slots: dict[int, list[int]] = {}
    for task, tile in placement.items():
        slots.setdefault(tile, []).append(task)
    return slots


def dynamic_schedule(g: TaskGraph, mesh: Mesh3D) -> Schedule:
    """Round-based scheduling: ddmap the top priority cores, reset, repeat.

    Each round takes the first min(remaining, n^3) cores of the residual
    subgraph's priority order, maps them (induced arcs only) on an empty
    mesh, and stacks the placements.  No tile ends up with more than
    ceil(N / n^3) tasks.
    """
    if g.n_cores == 0:
        raise ValueError("cannot schedule an empty graph")
    cap = mesh.tile_count
    placement: dict[int, int] = {}
    remaining = list(range(g.n_cores))
    while remaining:
        residual, residual_ids = induced_subgraph(g, remaining)
        cohort = [residual_ids[c] for c in priority_order(residual)[:cap]]
        sub, sub_ids = induced_subgraph(g, cohort)
        round_map = map_with("ddmap", sub, mesh)
        for new_id, tile in round_map.items():
            placement[sub_ids[new_id]] = tile
        taken = set(cohort)
        remaining = [c for c in remaining if c not in taken]
    return Schedule(placement, _slots_from_placement(placement))


def cluster_tasks(g: TaskGraph, max_clusters: int) -> ClusterSet:
    """Partition tasks into communication chains, at most max_clusters of them.

    Chains start at the lowest unscheduled task id and grow by repeatedly
    following the heaviest arc (both directions summed; ties to the lower
    id) to an unscheduled partner.  A chain is cut right after adding a task
    that also has an arc to an already-scheduled task other than its chain
    predecessor -- the looped task is kept, the chain stops.  Surplus chains
    are merged, in creation order, into the retained cluster they exchange
    the most volume with (ties to the lowest cluster index).
    """
    if max_clusters < 1:
        raise ValueError("need at least one cluster")
    unscheduled = set(range(g.n_cores))
    scheduled: set[int] = set()
    chains: list[list[int]] = []
    while unscheduled:
        current = min(unscheduled)
        unscheduled.discard(current)
        scheduled.add(current)
        chain = [current]
        while True:
            candidates = [t for t in g.partners[current] if t in unscheduled]
            if not candidates:
                break
            nxt = min(candidates, key=lambda t: (-g.volume_between(current, t), t))
            unscheduled.discard(nxt)
            scheduled.add(nxt)
            chain.append(nxt)
            loops_back = any(p in scheduled and p != current for p in g.partners[nxt])
            if loops_back:
                break
            current = nxt
        chains.append(chain)

    if len(chains) > max_clusters:
        kept = [list(c) for c in chains[:max_clusters]]
        for surplus in chains[max_clusters:]:
            exchanged = [
                sum(g.volume_between(u, v) for u in surplus for v in cluster)
                for cluster in kept
            ]
            target = max(range(len(kept)), key=lambda i: (exchanged[i], -i))
            kept[target].extend(surplus)
        chains = kept
    return ClusterSet(tuple(tuple(c) for c in chains))


def cluster_graph(g: TaskGraph, cs: ClusterSet) -> TaskGraph:
    """One node per cluster; crossing arcs aggregated, internal arcs dropped."""
    if cs.n_tasks != g.n_cores:
        raise ValueError("cluster set does not cover this graph")
    volumes: dict[tuple[int, int], int] = {}
    bandwidths: dict[tuple[int, int], int] = {}
    for a in g.arcs:
        p, q = cs.cluster_of[a.src], cs.cluster_of[a.dst]
        if p == q:
            continue
        volumes[(p, q)] = volumes.get((p, q), 0) + a.volume
        bandwidths[(p, q)] = bandwidths.get((p, q), 0) + a.bandwidth
    arcs = tuple(
        Arc(p, q, volumes[(p, q)], bandwidths[(p, q)])
        for p, q in sorted(volumes)
    )
    return TaskGraph(tuple(Core(i) for i in range(len(cs.clusters))), arcs)


def cluster_schedule(g: TaskGraph, mesh: Mesh3D, mapper: str = "ddmap") -> Schedule:
    """Cluster the tasks, map the cluster graph, expand back to task level."""
    cs = cluster_tasks(g, mesh.tile_count)
    cg = cluster_graph(g, cs)
    cluster_map: Mapping = map_with(mapper, cg, mesh)
    placement: dict[int, int] = {}
    for idx, cluster in enumerate(cs.clusters):
        tile = cluster_map[idx]
        for task in cluster:
            placement[task] = tile
    return Schedule(placement, _slots_from_placement(placement))

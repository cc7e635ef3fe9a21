"""Mapping quality metrics: communication energy, cost, and average latency.

Moving one bit across h links visits h+1 routers, so the per-bit charge is
``(h+1)*e_switch_bit + h*e_link_bit``; co-located endpoints (h = 0) cost
nothing because intra-tile traffic never enters the network.

Total energy is accumulated per ordered tile pair: volumes crossing the same
pair are summed exactly (integers) before the single float multiply, and the
per-pair products are combined with ``math.fsum``.  This keeps the result
independent of arc order and makes task-level evaluation of a schedule agree
bit-for-bit with the evaluation of its aggregated cluster graph.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .taskgraph import TaskGraph
from .topology import Mesh3D, xyz_hops

Mapping = dict[int, int]


@dataclass(frozen=True)
class EnergyModel:
    """Per-bit energy charges (pJ) and the latency scale constant."""

    e_switch_bit: float = 0.284
    e_link_bit: float = 0.449
    rho: float = 1.0

    def __post_init__(self):
        if self.e_switch_bit < 0 or self.e_link_bit < 0 or self.rho < 0:
            raise ValueError("energy model constants must be non-negative")


DEFAULT_ENERGY_MODEL = EnergyModel()


@dataclass(frozen=True)
class EvalReport:
    total_energy: float
    comm_cost: int
    avg_latency: float | None
    eta: int


def bit_energy(links: int, model: EnergyModel = DEFAULT_ENERGY_MODEL) -> float:
    """Energy (pJ) to move one bit across the given number of links."""
    if links < 0:
        raise ValueError("link count must be non-negative")
    if links == 0:
        return 0.0
    return (links + 1) * model.e_switch_bit + links * model.e_link_bit


def _require_total(g: TaskGraph, mapping: Mapping, mesh: Mesh3D) -> None:
    for core in range(g.n_cores):
        tile = mapping.get(core)
        if tile is None:
            raise ValueError(f"core {core} is unmapped")
        if not (0 <= tile < mesh.tile_count):
            raise ValueError(f"core {core} mapped to invalid tile {tile}")


def _pair_volumes(g: TaskGraph, mapping: Mapping) -> dict[tuple[int, int], int]:
    totals: dict[tuple[int, int], int] = {}
    for a in g.arcs:
        ti, tj = mapping[a.src], mapping[a.dst]
        if ti == tj:
            continue
        key = (ti, tj)
        totals[key] = totals.get(key, 0) + a.volume
    return totals


def total_energy(
    g: TaskGraph,
    mapping: Mapping,
    mesh: Mesh3D,
    model: EnergyModel = DEFAULT_ENERGY_MODEL,
) -> float:
    """Total communication energy (pJ): sum of volume x per-bit path energy."""
    _require_total(g, mapping, mesh)
    return math.fsum(
        vol * bit_energy(xyz_hops(ti, tj, mesh.n), model)
        for (ti, tj), vol in _pair_volumes(g, mapping).items()
    )


def comm_cost(g: TaskGraph, mapping: Mapping, mesh: Mesh3D) -> int:
    """Communication cost: sum of bandwidth x hop count over all arcs."""
    _require_total(g, mapping, mesh)
    return sum(a.bandwidth * xyz_hops(mapping[a.src], mapping[a.dst], mesh.n) for a in g.arcs)


def transfer_count(g: TaskGraph) -> int:
    """Number of transfers: arcs that actually move data (volume > 0)."""
    return sum(1 for a in g.arcs if a.volume > 0)


def avg_latency(
    g: TaskGraph,
    mapping: Mapping,
    mesh: Mesh3D,
    model: EnergyModel = DEFAULT_ENERGY_MODEL,
) -> float:
    """Mean per-transfer delay: rho-scaled hop-volume product over transfer count."""
    _require_total(g, mapping, mesh)
    eta = transfer_count(g)
    if eta == 0:
        raise ValueError("average latency undefined: no transfer has positive volume")
    hop_volume = sum(a.volume * xyz_hops(mapping[a.src], mapping[a.dst], mesh.n) for a in g.arcs)
    return hop_volume * model.rho / eta


def evaluate(
    g: TaskGraph,
    mapping: Mapping,
    mesh: Mesh3D,
    model: EnergyModel = DEFAULT_ENERGY_MODEL,
) -> EvalReport:
    """All metrics at once; latency is None when the graph moves no data."""
    eta = transfer_count(g)
    return EvalReport(
        total_energy=total_energy(g, mapping, mesh, model),
        comm_cost=comm_cost(g, mapping, mesh),
        avg_latency=avg_latency(g, mapping, mesh, model) if eta > 0 else None,
        eta=eta,
    )

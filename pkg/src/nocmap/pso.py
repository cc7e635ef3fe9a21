"""Discrete particle swarm over tile-assignment vectors.

A particle's position is a length-D integer vector (D = tile count): slot i
holds the tile of the i-th priority-ordered core, surplus slots are dummies
that the fitness ignores.  Velocities follow the classic update

    v' = w*v + rand(0, c1)*(pbest - x) + rand(0, c2)*(gbest - x)

with both random factors drawn per component and the result clamped to
[-D, D].  Positions move by the floor of the velocity, are clamped to the
tile range, and then repaired back to a duplicate-free vector so every
evaluated candidate is a valid injective assignment.

Runs are deterministic: every random draw comes from one generator seeded
from (seed, simulation index), and best-so-far reductions scan particles in
index order.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np

from .metrics import DEFAULT_ENERGY_MODEL, EnergyModel, Mapping, bit_energy
from .taskgraph import TaskGraph, priority_order
from .topology import Mesh3D, hop_matrix


@dataclass(frozen=True)
class PsoParams:
    """Swarm constants; dimension is resolved to the tile count when None."""

    c1: float = 1.2
    c2: float = 1.3
    w: float = 0.721348
    swarm_size: int = 200
    dimension: int | None = None
    max_simulations: int = 100
    max_evals_per_simulation: int = 150_000
    seed: int = 0


@dataclass(frozen=True)
class PsoResult:
    mapping: Mapping
    fitness: float
    trace: tuple[tuple[int, int, float], ...]  # (iteration, evals, gbest)
    objective: str
    simulation: int


def velocity_update(position, velocity, pbest, gbest, params: PsoParams, rng) -> np.ndarray:
    """New velocity vector(s); accepts a single particle or a whole swarm."""
    if params.dimension is None:
        raise ValueError("params.dimension must be resolved before velocity updates")
    x = np.asarray(position, dtype=float)
    r1 = rng.uniform(0.0, params.c1, x.shape)
    r2 = rng.uniform(0.0, params.c2, x.shape)
    v = params.w * np.asarray(velocity, dtype=float)
    v += r1 * (np.asarray(pbest, dtype=float) - x)
    v += r2 * (np.asarray(gbest, dtype=float) - x)
    return np.clip(v, -params.dimension, params.dimension)


def position_update(position, velocity, dimension: int) -> np.ndarray:
    """Move by the floor of the velocity, clamped to valid tile ids."""
    raw = np.asarray(position) + np.floor(velocity).astype(np.int64)
    return np.clip(raw, 0, dimension - 1)


def repair_permutation(raw, dimension: int) -> list[int]:
    """Make an integer vector duplicate-free.

    First occurrences win; later duplicates are replaced, left to right, by
    the unused values in ascending order.  Idempotent on valid vectors.
    """
    vals = [int(v) for v in raw]
    if len(vals) > dimension:
        raise ValueError("vector longer than the value range")
    used = bytearray(dimension)
    duplicates = []
    for i, v in enumerate(vals):
        if not (0 <= v < dimension):
            raise ValueError(f"component {v} out of range 0..{dimension - 1}")
        if used[v]:
            duplicates.append(i)
        else:
            used[v] = 1
    if duplicates:
        fill = (t for t in range(dimension) if not used[t])
        for i in duplicates:
            vals[i] = next(fill)
    return vals


class _SlotFitness:
    """Objective over position vectors, vectorized across a swarm.

    Produces values bit-identical to metrics.total_energy / metrics.comm_cost
    on the decoded mapping: positions are injective, so every arc is its own
    tile pair, and the energy terms are combined with fsum just like the
    metric does.
    """

    def __init__(self, g: TaskGraph, mesh: Mesh3D, objective: str, model: EnergyModel):
        self.order = priority_order(g)
        slot = {core: i for i, core in enumerate(self.order)}
        self.src = np.array([slot[a.src] for a in g.arcs], dtype=np.int64)
        self.dst = np.array([slot[a.dst] for a in g.arcs], dtype=np.int64)
        self.hops = hop_matrix(mesh.n)
        if objective == "energy":
            self.weights = np.array([a.volume for a in g.arcs], dtype=float)
            self.energy_per_hop = np.array(
                [bit_energy(h, model) for h in range(3 * (mesh.n - 1) + 1)]
            )
        elif objective == "cost":
            self.weights = np.array([a.bandwidth for a in g.arcs], dtype=np.int64)
            self.energy_per_hop = None
        else:
            raise ValueError(f"unknown objective {objective!r}")

    def __call__(self, positions: np.ndarray) -> list:
        hops = self.hops[positions[:, self.src], positions[:, self.dst]]
        if self.energy_per_hop is None:
            return [int(v) for v in (self.weights * hops).sum(axis=1)]
        terms = self.weights * self.energy_per_hop[hops]
        return [math.fsum(row) for row in terms.tolist()]


def _encode_seed(mapping: Mapping, order: list[int], dimension: int) -> np.ndarray:
    tiles = []
    for core in order:
        if core not in mapping:
            raise ValueError(f"seed mapping misses core {core}")
        tiles.append(mapping[core])
    if len(set(tiles)) != len(tiles):
        raise ValueError("seed mapping is not injective")
    if any(not 0 <= t < dimension for t in tiles):
        raise ValueError("seed mapping uses an out-of-range tile")
    used = set(tiles)
    tiles.extend(t for t in range(dimension) if t not in used)
    return np.array(tiles, dtype=np.int64)


def _run_simulation(
    fitness: _SlotFitness,
    params: PsoParams,
    seed_position: np.ndarray | None,
    simulation: int,
    objective: str,
    n_cores: int,
) -> PsoResult:
    d = params.dimension
    s = params.swarm_size
    rng = np.random.default_rng(np.random.SeedSequence((params.seed, simulation)))

    positions = np.empty((s, d), dtype=np.int64)
    for i in range(s):
        positions[i] = rng.permutation(d)
    if seed_position is not None:
        positions[0] = seed_position
    velocities = np.zeros((s, d), dtype=float)

    values = fitness(positions)
    evals = s
    pbest = positions.copy()
    pbest_val = np.array(values, dtype=float)
    best_i = int(np.argmin(pbest_val))
    gbest = positions[best_i].copy()
    gbest_val = values[best_i]
    trace = [(0, evals, gbest_val)]

    iteration = 0
    while evals + s <= params.max_evals_per_simulation:
        iteration += 1
        velocities = velocity_update(positions, velocities, pbest, gbest, params, rng)
        positions = position_update(positions, velocities, d)
        for i in range(s):
            positions[i] = repair_permutation(positions[i].tolist(), d)
        values = fitness(positions)
        evals += s

        current = np.array(values, dtype=float)
        improved = current < pbest_val
        pbest[improved] = positions[improved]
        pbest_val[improved] = current[improved]
        best_i = int(np.argmin(pbest_val))
        if pbest_val[best_i] < float(gbest_val):
            # A strictly better pbest can only have been set this iteration.
            gbest = positions[best_i].copy()
            gbest_val = values[best_i]
        trace.append((iteration, evals, gbest_val))

    mapping = {core: int(gbest[i]) for i, core in enumerate(fitness.order[:n_cores])}
    return PsoResult(mapping, gbest_val, tuple(trace), objective, simulation)


def pso_optimize(
    g: TaskGraph,
    mesh: Mesh3D,
    params: PsoParams = PsoParams(),
    objective: str = "energy",
    model: EnergyModel = DEFAULT_ENERGY_MODEL,
    seed_mapping: Mapping | None = None,
    simulations: int = 1,
) -> PsoResult:
    """Swarm-search tile assignments; returns the best mapping and its trace.

    When ``seed_mapping`` is given it replaces one particle of the initial
    swarm, so the result can never be worse than the seed.  ``simulations``
    independent restarts (distinct derived seeds) are run and the best one is
    returned; the default is a single restart, ``params.max_simulations``
    bounds how many may be requested.
    """
    dimension = mesh.tile_count
    if params.dimension not in (None, dimension):
        raise ValueError(f"params.dimension {params.dimension} != tile count {dimension}")
    if g.n_cores > dimension:
        raise ValueError(f"{g.n_cores} cores exceed {dimension} tiles")
    if not 1 <= simulations <= params.max_simulations:
        raise ValueError(f"simulations must be in 1..{params.max_simulations}")
    if params.swarm_size < 1:
        raise ValueError("swarm size must be positive")
    if params.max_evals_per_simulation < params.swarm_size:
        raise ValueError("evaluation budget smaller than one swarm pass")

    resolved = replace(params, dimension=dimension)
    fitness = _SlotFitness(g, mesh, objective, model)
    seed_position = (
        _encode_seed(seed_mapping, fitness.order, dimension) if seed_mapping is not None else None
    )
    best: PsoResult | None = None
    for sim in range(simulations):
        result = _run_simulation(fitness, resolved, seed_position, sim, objective, g.n_cores)
        if best is None or result.fitness < best.fitness:
            best = result
    assert best is not None
    return best

"""One-core-per-tile placement algorithms.

Three strategies are provided:

* ``ddmap`` -- diagonal-seeded greedy placement.  The highest-priority cores
  are pinned to the cube's interior diagonal (one per interior layer), then
  the remaining cores are placed one at a time: always the unmapped core
  exchanging the most traffic with the mapped set, dropped on the nearest
  free tile around its strongest mapped partner (lozenge ring search).
* ``spiral_order`` -- tiles enumerated center-outward: layers from the middle
  alternating outward, each layer unwound clockwise in a rectangular spiral
  from its center tile.
* ``crinkle_order`` -- serial serpentine: layers ascending, rows ascending,
  columns boustrophedon (left-to-right on even rows, right-to-left on odd).

The two tile orders become mappings by zipping priority-ordered cores onto
the sequence (``sequence_map``).
"""

from __future__ import annotations

from typing import Sequence

from .metrics import Mapping
from .taskgraph import TaskGraph, priority_order
from .topology import Mesh3D, Occupancy, diagonal_tiles, lozenge_next_empty


def ddmap(g: TaskGraph, mesh: Mesh3D) -> Mapping:
    """Diagonal-seeded greedy mapping; injective, one core per tile.

    Keys are inserted in placement order, so iterating the result replays
    the placement sequence.
    """
    n = mesh.n
    if g.n_cores > mesh.tile_count:
        raise ValueError(f"{g.n_cores} cores exceed {mesh.tile_count} tiles")
    order = priority_order(g)
    rank = {core: i for i, core in enumerate(order)}

    occ = Occupancy(mesh.tile_count)
    mapping: Mapping = {}
    mapped_seq: list[int] = []

    # Interior-diagonal seeds; a 2x2x2 mesh has no interior, fall back to the origin.
    seeds = diagonal_tiles(n) or [0]
    for core, tile in zip(order, seeds):
        mapping[core] = tile
        occ.occupy(tile)
        mapped_seq.append(core)

    unmapped = [c for c in order if c not in mapping]
    traffic = {c: sum(g.volume_between(c, m) for m in mapped_seq) for c in unmapped}
    while unmapped:
        core = min(unmapped, key=lambda c: (-traffic[c], rank[c]))
        anchor_core = mapped_seq[0]
        best = g.volume_between(core, anchor_core)
        for m in mapped_seq[1:]:
            v = g.volume_between(core, m)
            if v > best:
                best, anchor_core = v, m
        tile = lozenge_next_empty(mapping[anchor_core], occ, mesh)
        mapping[core] = tile
        occ.occupy(tile)
        mapped_seq.append(core)
        unmapped.remove(core)
        for c in unmapped:
            traffic[c] += g.volume_between(c, core)
    return mapping


def crinkle_order(mesh: Mesh3D) -> list[int]:
    """Serpentine tile order; a permutation of 0..n^3-1."""
    n = mesh.n
    tiles = []
    for layer in range(n):
        for row in range(n):
            cols = range(n) if row % 2 == 0 else range(n - 1, -1, -1)
            tiles.extend(layer * n * n + row * n + col for col in cols)
    return tiles


def _layer_spiral(n: int) -> list[tuple[int, int]]:
    """(row, col) positions spiraling clockwise outward from the layer center."""
    center = (n - 1) // 2
    r, c = center, center
    out = [(r, c)]
    # East, South, West, North with run lengths 1,1,2,2,3,3,...; off-grid
    # steps are walked through but not recorded.
    moves = ((0, 1), (1, 0), (0, -1), (-1, 0))
    run, m = 1, 0
    while len(out) < n * n:
        for _ in range(2):
            dr, dc = moves[m % 4]
            for _ in range(run):
                r, c = r + dr, c + dc
                if 0 <= r < n and 0 <= c < n:
                    out.append((r, c))
            m += 1
        run += 1
    return out


def spiral_order(mesh: Mesh3D) -> list[int]:
    """Center-outward tile order; a permutation of 0..n^3-1."""
    n = mesh.n
    start = (n - 1) // 2
    layers = [start]
    for off in range(1, n):
        for layer in (start + off, start - off):
            if 0 <= layer < n:
                layers.append(layer)
    tiles = []
    cells = _layer_spiral(n)
    for layer in layers:
        tiles.extend(layer * n * n + r * n + c for r, c in cells)
    return tiles


def sequence_map(g: TaskGraph, mesh: Mesh3D, order: Sequence[int]) -> Mapping:
    """Priority-ordered cores onto a tile sequence prefix; injective."""
    if g.n_cores > mesh.tile_count:
        raise ValueError(f"{g.n_cores} cores exceed {mesh.tile_count} tiles")
    if len(order) < g.n_cores:
        raise ValueError("tile sequence shorter than the core list")
    return {core: order[i] for i, core in enumerate(priority_order(g))}


def map_with(kind: str, g: TaskGraph, mesh: Mesh3D) -> Mapping:
    """Dispatch by mapper name: ddmap, spiral, or crinkle."""
    if kind == "ddmap":
        return ddmap(g, mesh)
    if kind == "spiral":
        return sequence_map(g, mesh, spiral_order(mesh))
    if kind == "crinkle":
        return sequence_map(g, mesh, crinkle_order(mesh))
    raise ValueError(f"unknown mapper {kind!r}")


MAPPERS = ("ddmap", "spiral", "crinkle")

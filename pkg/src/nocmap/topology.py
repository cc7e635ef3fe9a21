"""Cubic mesh geometry: tile indexing, diagonal seed tiles, routing distance,
and the lozenge (diamond-ring) search for the nearest free tile.

Tiles of an n x n x n mesh are numbered layer-major then row-major:
``tile = layer*n^2 + row*n + col``.  Under this layout the cube's main
diagonal is the arithmetic progression ``i*(n^2+n+1)`` and ``tile % n``
recovers the column, which drives the search rotation below.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, NamedTuple

import numpy as np


@dataclass(frozen=True)
class Mesh3D:
    """An n x n x n tile grid, n >= 2."""

    n: int

    def __post_init__(self):
        if self.n < 2:
            raise ValueError("mesh side length must be at least 2")

    @property
    def tile_count(self) -> int:
        return self.n ** 3


class TileCoord(NamedTuple):
    layer: int
    row: int
    col: int


def tile_index(layer: int, row: int, col: int, n: int) -> int:
    """(layer, row, col) -> tile id."""
    for name, v in (("layer", layer), ("row", row), ("col", col)):
        if not (0 <= v < n):
            raise ValueError(f"{name} {v} out of range 0..{n - 1}")
    return layer * n * n + row * n + col


def tile_coords(tile: int, n: int) -> TileCoord:
    """tile id -> (layer, row, col); inverse of tile_index."""
    if not (0 <= tile < n ** 3):
        raise ValueError(f"tile id {tile} out of range 0..{n ** 3 - 1}")
    layer, rest = divmod(tile, n * n)
    row, col = divmod(rest, n)
    return TileCoord(layer, row, col)


def diagonal_tiles(n: int) -> list[int]:
    """Interior tiles of the cube's main diagonal, ends excluded.

    One tile per interior layer; empty for n = 2 where the diagonal has no
    interior.
    """
    if n < 2:
        raise ValueError("mesh side length must be at least 2")
    step = n * n + n + 1
    return [step * (i + 1) for i in range(n - 2)]


def xyz_hops(a: int, b: int, n: int) -> int:
    """Links traversed by dimension-ordered (XYZ) routing: 3D Manhattan distance."""
    la, ra, ca = tile_coords(a, n)
    lb, rb, cb = tile_coords(b, n)
    return abs(la - lb) + abs(ra - rb) + abs(ca - cb)


def hop_matrix(n: int) -> np.ndarray:
    """Dense tile-to-tile hop counts, shape (n^3, n^3)."""
    idx = np.arange(n ** 3)
    layer, rest = np.divmod(idx, n * n)
    row, col = np.divmod(rest, n)
    return (
        np.abs(layer[:, None] - layer[None, :])
        + np.abs(row[:, None] - row[None, :])
        + np.abs(col[:, None] - col[None, :])
    ).astype(np.int64)


class Occupancy:
    """Free/occupied state per tile; owned by a single mapping run."""

    def __init__(self, tile_count: int):
        if tile_count < 1:
            raise ValueError("tile count must be positive")
        self._free = bytearray(b"\x01" * tile_count)
        self._occupied = 0

    @property
    def tile_count(self) -> int:
        return len(self._free)

    @property
    def occupied_count(self) -> int:
        return self._occupied

    @property
    def free_count(self) -> int:
        return len(self._free) - self._occupied

    def is_free(self, tile: int) -> bool:
        return bool(self._free[tile])

    def occupy(self, tile: int) -> None:
        if not self._free[tile]:
            raise ValueError(f"tile {tile} already occupied")
        self._free[tile] = 0
        self._occupied += 1


def _ring(row: int, col: int, d: int, clockwise: bool) -> Iterator[tuple[int, int]]:
    """Positions of the diamond ring at Manhattan radius d, starting north.

    Clockwise walks north -> east -> south -> west; counter-clockwise the
    reverse.  Callers filter out-of-grid positions.
    """
    if d == 0:
        yield (row, col)
        return
    if clockwise:
        for k in range(d):
            yield (row - d + k, col + k)
        for k in range(d):
            yield (row + k, col + d - k)
        for k in range(d):
            yield (row + d - k, col - k)
        for k in range(d):
            yield (row - k, col - d + k)
    else:
        for k in range(d):
            yield (row - d + k, col - k)
        for k in range(d):
            yield (row + k, col - d + k)
        for k in range(d):
            yield (row + d - k, col + k)
        for k in range(d):
            yield (row - k, col + d - k)


def lozenge_next_empty(anchor: int, occ: Occupancy, mesh: Mesh3D) -> int:
    """Nearest free tile around an anchor, found by diamond-ring rotation.

    The anchor's column parity selects the rotation: odd columns walk each
    ring clockwise starting at its north-most tile, even columns walk
    counter-clockwise.  The anchor's own layer is scanned first in rings of
    growing in-layer distance d = 1..2(n-1); if it is full, neighbouring
    layers are visited alternating outward (+1, -1, +2, -2, ...), each
    re-scanned from the anchor's (row, col) projection starting at d = 0.
    The anchor tile itself is considered only as a last resort, so a fully
    packed mesh with only the anchor free still resolves.

    Raises ValueError when no tile is free (a caller bug: callers must track
    capacity).
    """
    n = mesh.n
    if occ.tile_count != mesh.tile_count:
        raise ValueError("occupancy size does not match mesh")
    a_layer, a_row, a_col = tile_coords(anchor, n)
    clockwise = (anchor % n) % 2 == 1
    max_d = 2 * (n - 1)

    layer_offsets = [0]
    for off in range(1, n):
        layer_offsets.extend((off, -off))
    for off in layer_offsets:
        layer = a_layer + off
        if not (0 <= layer < n):
            continue
        d_start = 1 if off == 0 else 0
        base = layer * n * n
        for d in range(d_start, max_d + 1):
            for r, c in _ring(a_row, a_col, d, clockwise):
                if 0 <= r < n and 0 <= c < n:
                    tile = base + r * n + c
                    if occ.is_free(tile):
                        return tile
    if occ.is_free(anchor):
        return anchor
    raise ValueError("no free tile available")

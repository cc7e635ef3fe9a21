"""Directed core graphs with per-arc communication volume and bandwidth.

A graph is a set of cores (tasks/IP blocks) numbered 0..N-1 plus directed
arcs.  Each arc carries the payload it moves (``volume``, bits) and its
sustained rate requirement (``bandwidth``, bits/s).  Graphs are immutable
values and safe to share between threads.

Graph file format (UTF-8 text, ``#`` starts a comment, blank lines ignored)::

    cores <N>
    edge <src> <dst> <volume> <bandwidth>

At most one edge per ordered pair; self-loops are rejected (a core talking
to itself never enters the network).
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence


class GraphFormatError(ValueError):
    """Malformed graph file; carries the offending 1-based line number."""

    def __init__(self, line_no: int, message: str):
        self.line_no = line_no
        super().__init__(f"line {line_no}: {message}")


@dataclass(frozen=True)
class Core:
    id: int
    label: str | None = None


@dataclass(frozen=True)
class Arc:
    src: int
    dst: int
    volume: int
    bandwidth: int


@dataclass(frozen=True)
class TaskGraph:
    cores: tuple[Core, ...]
    arcs: tuple[Arc, ...]

    def __post_init__(self):
        ids = [c.id for c in self.cores]
        if ids != list(range(len(ids))):
            raise ValueError("core ids must form a contiguous range 0..N-1")
        n = len(ids)
        seen: set[tuple[int, int]] = set()
        for a in self.arcs:
            if not (0 <= a.src < n and 0 <= a.dst < n):
                raise ValueError(f"arc {a.src}->{a.dst} references an unknown core")
            if a.src == a.dst:
                raise ValueError(f"self-loop on core {a.src}")
            if (a.src, a.dst) in seen:
                raise ValueError(f"duplicate arc {a.src}->{a.dst}")
            if a.volume < 0 or a.bandwidth < 0:
                raise ValueError(f"negative weight on arc {a.src}->{a.dst}")
            seen.add((a.src, a.dst))

    @property
    def n_cores(self) -> int:
        return len(self.cores)

    @cached_property
    def _volumes(self) -> dict[tuple[int, int], int]:
        return {(a.src, a.dst): a.volume for a in self.arcs}

    def volume(self, src: int, dst: int) -> int:
        """Volume on arc src->dst, or 0 when absent."""
        return self._volumes.get((src, dst), 0)

    def volume_between(self, a: int, b: int) -> int:
        """Traffic exchanged between two cores, both directions summed."""
        return self.volume(a, b) + self.volume(b, a)

    @cached_property
    def out_degrees(self) -> tuple[int, ...]:
        degs = [0] * self.n_cores
        for a in self.arcs:
            degs[a.src] += 1
        return tuple(degs)

    @cached_property
    def rankings(self) -> tuple[int, ...]:
        totals = [0] * self.n_cores
        for a in self.arcs:
            totals[a.src] += a.volume
            totals[a.dst] += a.volume
        return tuple(totals)

    @cached_property
    def partners(self) -> tuple[tuple[int, ...], ...]:
        """Per core: ids of cores reachable by an arc in either direction, ascending."""
        adj: list[set[int]] = [set() for _ in range(self.n_cores)]
        for a in self.arcs:
            adj[a.src].add(a.dst)
            adj[a.dst].add(a.src)
        return tuple(tuple(sorted(s)) for s in adj)


def graph_from_arcs(n_cores: int, arcs: Iterable[tuple[int, int, int, int]]) -> TaskGraph:
    """Build a graph from (src, dst, volume, bandwidth) tuples."""
    return TaskGraph(
        tuple(Core(i) for i in range(n_cores)),
        tuple(Arc(*quad) for quad in arcs),
    )


def parse_graph(text: str) -> TaskGraph:
    """Parse the line-based graph format; raise GraphFormatError with line numbers."""
    n_cores: int | None = None
    arcs: list[Arc] = []
    seen: set[tuple[int, int]] = set()
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        fields = line.split()
        if n_cores is None:
            if fields[0] != "cores" or len(fields) != 2:
                raise GraphFormatError(line_no, "expected 'cores <N>' header")
            try:
                n_cores = int(fields[1])
            except ValueError:
                raise GraphFormatError(line_no, f"core count {fields[1]!r} is not an integer") from None
            if n_cores < 0:
                raise GraphFormatError(line_no, "core count must be non-negative")
            continue
        if fields[0] != "edge":
            raise GraphFormatError(line_no, f"unknown directive {fields[0]!r}")
        if len(fields) != 5:
            raise GraphFormatError(line_no, "expected 'edge <src> <dst> <volume> <bandwidth>'")
        try:
            src, dst, volume, bandwidth = (int(f) for f in fields[1:])
        except ValueError:
            raise GraphFormatError(line_no, "edge fields must be integers") from None
        if not (0 <= src < n_cores and 0 <= dst < n_cores):
            raise GraphFormatError(line_no, f"core id out of range in edge {src}->{dst}")
        if src == dst:
            raise GraphFormatError(line_no, f"self-loop on core {src}")
        if (src, dst) in seen:
            raise GraphFormatError(line_no, f"duplicate edge {src}->{dst}")
        if volume < 0 or bandwidth < 0:
            raise GraphFormatError(line_no, f"negative weight on edge {src}->{dst}")
        seen.add((src, dst))
        arcs.append(Arc(src, dst, volume, bandwidth))
    if n_cores is None:
        raise GraphFormatError(1, "missing 'cores <N>' header")
    return TaskGraph(tuple(Core(i) for i in range(n_cores)), tuple(arcs))


def serialize_graph(g: TaskGraph) -> str:
    """Emit the graph file format, arcs sorted by (src, dst)."""
    lines = [f"cores {g.n_cores}"]
    for a in sorted(g.arcs, key=lambda a: (a.src, a.dst)):
        lines.append(f"edge {a.src} {a.dst} {a.volume} {a.bandwidth}")
    return "\n".join(lines) + "\n"


def _check_core(g: TaskGraph, core: int) -> None:
    if not (0 <= core < g.n_cores):
        raise ValueError(f"core id {core} out of range 0..{g.n_cores - 1}")


def out_degree(g: TaskGraph, core: int) -> int:
    """Number of arcs leaving the core."""
    _check_core(g, core)
    return g.out_degrees[core]


def ranking(g: TaskGraph, core: int) -> int:
    """Total traffic touching the core: volumes of all arcs in and out, in bits."""
    _check_core(g, core)
    return g.rankings[core]


def priority_order(g: TaskGraph) -> list[int]:
    """Placement priority: descending out-degree, then descending ranking, then id.

    The id tiebreak keeps runs reproducible when several cores carry
    identical traffic.
    """
    if g.n_cores == 0:
        raise ValueError("empty graph has no priority order")
    degs, ranks = g.out_degrees, g.rankings
    return sorted(range(g.n_cores), key=lambda c: (-degs[c], -ranks[c], c))


def generate_random_graph(
    n_cores: int,
    n_arcs: int,
    volume_range: tuple[int, int] = (10, 1000),
    bandwidth_range: tuple[int, int] = (1, 100),
    seed: int = 0,
) -> TaskGraph:
    """Seeded random graph: exactly n_arcs distinct ordered pairs, no self-loops.

    Weights are drawn uniformly (inclusive) from the given ranges.  The same
    arguments always produce the same graph.
    """
    if n_cores < 1:
        raise ValueError("need at least one core")
    if n_arcs < 0 or n_arcs > n_cores * (n_cores - 1):
        raise ValueError(
            f"infeasible arc count {n_arcs} for {n_cores} cores "
            f"(max {n_cores * (n_cores - 1)})"
        )
    for lo, hi in (volume_range, bandwidth_range):
        if lo > hi or lo < 0:
            raise ValueError(f"empty or negative weight range ({lo}, {hi})")
    rng = random.Random(seed)
    pairs = [(i, j) for i in range(n_cores) for j in range(n_cores) if i != j]
    chosen = rng.sample(pairs, n_arcs)
    arcs = tuple(
        Arc(src, dst, rng.randint(*volume_range), rng.randint(*bandwidth_range))
        for src, dst in chosen
    )
    return TaskGraph(tuple(Core(i) for i in range(n_cores)), arcs)


def induced_subgraph(g: TaskGraph, core_ids: Sequence[int]) -> tuple[TaskGraph, list[int]]:
    """Subgraph on the given cores, relabeled 0..k-1 in the given order.

    Returns the subgraph and the new-id -> old-id translation list.  Arcs are
    kept only when both endpoints are selected.
    """
    if len(set(core_ids)) != len(core_ids):
        raise ValueError("duplicate core id in selection")
    for c in core_ids:
        _check_core(g, c)
    new_id = {old: new for new, old in enumerate(core_ids)}
    cores = tuple(Core(new, g.cores[old].label) for new, old in enumerate(core_ids))
    arcs = tuple(
        Arc(new_id[a.src], new_id[a.dst], a.volume, a.bandwidth)
        for a in g.arcs
        if a.src in new_id and a.dst in new_id
    )
    return TaskGraph(cores, arcs), list(core_ids)

"""Experiment orchestration: benchmark runs, artifacts, CSV reports, the
exhaustive assignment oracle, and pairwise comparison summaries.

A run reads a graph file, executes the selected pipeline, re-evaluates the
produced placement with the metrics module, and reports one row.  Everything
a row contains can be re-derived from the mapping artifact plus the config
echoed in its header (see ``audit_artifact``); nothing but the runtime
column varies between identical runs.
"""

from __future__ import annotations

import csv
import io
import itertools
import math
import threading
import time
from dataclasses import dataclass, field, fields
from pathlib import Path

from .mappers import map_with
from .metrics import EnergyModel, Mapping, bit_energy, evaluate
from .pso import PsoParams, pso_optimize
from .scheduler import cluster_schedule, dynamic_schedule
from .taskgraph import TaskGraph, parse_graph
from .topology import Mesh3D, hop_matrix

_csv_lock = threading.Lock()

ORACLE_MAX_ASSIGNMENTS = 10_000_000


@dataclass
class RunConfig:
    graph: str | Path
    mesh_n: int = 3
    algo: str = "ddmap"  # mapper name, or cluster-mapper in cluster mode
    mode: str = "map"  # map | dynamic | cluster | pso
    e_switch: float = 0.284
    e_link: float = 0.449
    rho: float = 1.0
    objective: str = "energy"  # pso mode only
    seed: int = 0
    pso: PsoParams | None = None
    simulations: int = 1
    seed_mapping: str | Path | None = None
    out_dir: str | Path | None = None
    csv_path: str | Path | None = None
    name: str | None = None

    def energy_model(self) -> EnergyModel:
        return EnergyModel(e_switch_bit=self.e_switch, e_link_bit=self.e_link, rho=self.rho)


@dataclass
class ReportRow:
    benchmark: str
    algo: str
    mode: str
    total_energy: float
    comm_cost: int
    avg_latency: float | None
    eta: int
    runtime_ms: float
    seed: int


CSV_COLUMNS = [f.name for f in fields(ReportRow)]


def write_mapping_artifact(path: str | Path, placement: Mapping, header: dict) -> None:
    """Plain-text artifact: '# key = value' header then 'core i -> tile t' lines."""
    lines = [f"# {k} = {v}" for k, v in header.items()]
    lines.extend(f"core {c} -> tile {placement[c]}" for c in sorted(placement))
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")


def parse_mapping_artifact(text: str) -> tuple[Mapping, dict[str, str]]:
    """Inverse of write_mapping_artifact; header values stay strings."""
    placement: Mapping = {}
    header: dict[str, str] = {}
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            body = line[1:].strip()
            if "=" in body:
                key, value = body.split("=", 1)
                header[key.strip()] = value.strip()
            continue
        parts = line.split()
        if len(parts) != 5 or parts[0] != "core" or parts[2] != "->" or parts[3] != "tile":
            raise ValueError(f"artifact line {line_no}: expected 'core <id> -> tile <id>'")
        placement[int(parts[1])] = int(parts[4])
    return placement, header


def load_mapping_artifact(path: str | Path) -> tuple[Mapping, dict[str, str]]:
    return parse_mapping_artifact(Path(path).read_text(encoding="utf-8"))


def _format_cell(value) -> str:
    if value is None:
        return ""
    if isinstance(value, float):
        return repr(value)
    return str(value)


def append_report_csv(path: str | Path, rows: list[ReportRow]) -> None:
    """Append rows, writing the header when the file is new or empty."""
    path = Path(path)
    with _csv_lock:
        need_header = not path.exists() or path.stat().st_size == 0
        with path.open("a", newline="", encoding="utf-8") as fh:
            writer = csv.writer(fh)
            if need_header:
                writer.writerow(CSV_COLUMNS)
            for row in rows:
                writer.writerow([_format_cell(getattr(row, col)) for col in CSV_COLUMNS])


def read_report_csv(path: str | Path) -> list[ReportRow]:
    rows = []
    with Path(path).open(newline="", encoding="utf-8") as fh:
        for rec in csv.DictReader(fh):
            rows.append(
                ReportRow(
                    benchmark=rec["benchmark"],
                    algo=rec["algo"],
                    mode=rec["mode"],
                    total_energy=float(rec["total_energy"]),
                    comm_cost=int(rec["comm_cost"]),
                    avg_latency=float(rec["avg_latency"]) if rec["avg_latency"] else None,
                    eta=int(rec["eta"]),
                    runtime_ms=float(rec["runtime_ms"]),
                    seed=int(rec["seed"]),
                )
            )
    return rows


def _artifact_name(benchmark: str, mode: str, algo: str, seed: int) -> str:
    return f"{benchmark}__{mode}__{algo}__seed{seed}.map"


def run_benchmark(cfg: RunConfig) -> tuple[ReportRow, Mapping]:
    """Execute one configured pipeline; optionally write artifact and CSV row."""
    g = parse_graph(Path(cfg.graph).read_text(encoding="utf-8"))
    mesh = Mesh3D(cfg.mesh_n)
    model = cfg.energy_model()
    benchmark = cfg.name or Path(cfg.graph).stem

    trace = None
    started = time.perf_counter()
    if cfg.mode == "map":
        algo = cfg.algo
        placement = map_with(algo, g, mesh)
    elif cfg.mode == "dynamic":
        algo = "ddmap"
        placement = dynamic_schedule(g, mesh).placement
    elif cfg.mode == "cluster":
        algo = cfg.algo
        placement = cluster_schedule(g, mesh, algo).placement
    elif cfg.mode == "pso":
        algo = "pso"
        params = cfg.pso if cfg.pso is not None else PsoParams(seed=cfg.seed)
        seed_map = None
        if cfg.seed_mapping is not None:
            seed_map, _ = load_mapping_artifact(cfg.seed_mapping)
        result = pso_optimize(
            g, mesh, params, cfg.objective, model, seed_map, cfg.simulations
        )
        placement = result.mapping
        trace = result.trace
    else:
        raise ValueError(f"unknown mode {cfg.mode!r}")
    runtime_ms = (time.perf_counter() - started) * 1000.0

    report = evaluate(g, placement, mesh, model)
    row = ReportRow(
        benchmark=benchmark,
        algo=algo,
        mode=cfg.mode,
        total_energy=report.total_energy,
        comm_cost=report.comm_cost,
        avg_latency=report.avg_latency,
        eta=report.eta,
        runtime_ms=runtime_ms,
        seed=cfg.seed,
    )

    if cfg.out_dir is not None:
        out_dir = Path(cfg.out_dir)
        out_dir.mkdir(parents=True, exist_ok=True)
        header = {
            "benchmark": benchmark,
            "graph": cfg.graph,
            "mesh": cfg.mesh_n,
            "algo": algo,
            "mode": cfg.mode,
            "seed": cfg.seed,
            "e_switch": cfg.e_switch,
            "e_link": cfg.e_link,
            "rho": cfg.rho,
        }
        if cfg.mode == "pso":
            header["objective"] = cfg.objective
        stem = _artifact_name(benchmark, cfg.mode, algo, cfg.seed)
        write_mapping_artifact(out_dir / stem, placement, header)
        if trace is not None:
            buf = io.StringIO()
            writer = csv.writer(buf)
            writer.writerow(["iteration", "evals", "gbest_fitness"])
            for iteration, evals, gbest in trace:
                writer.writerow([iteration, evals, _format_cell(float(gbest))])
            (out_dir / (stem + ".trace.csv")).write_text(buf.getvalue(), encoding="utf-8")
    if cfg.csv_path is not None:
        append_report_csv(cfg.csv_path, [row])
    return row, placement


def audit_artifact(path: str | Path) -> ReportRow:
    """Re-derive a report row from an artifact plus the config in its header."""
    placement, header = load_mapping_artifact(path)
    g = parse_graph(Path(header["graph"]).read_text(encoding="utf-8"))
    mesh = Mesh3D(int(header["mesh"]))
    model = EnergyModel(
        e_switch_bit=float(header["e_switch"]),
        e_link_bit=float(header["e_link"]),
        rho=float(header["rho"]),
    )
    report = evaluate(g, placement, mesh, model)
    return ReportRow(
        benchmark=header["benchmark"],
        algo=header["algo"],
        mode=header["mode"],
        total_energy=report.total_energy,
        comm_cost=report.comm_cost,
        avg_latency=report.avg_latency,
        eta=report.eta,
        runtime_ms=0.0,
        seed=int(header["seed"]),
    )


def exhaustive_oracle(
    g: TaskGraph,
    mesh: Mesh3D,
    objective: str = "energy",
    model: EnergyModel | None = None,
) -> tuple[float, Mapping]:
    """Enumerate every injective core->tile assignment; return the optimum.

    The minimizer returned is the lexicographically smallest assignment
    vector (tile of core 0, tile of core 1, ...).  Refuses instances with
    more than ORACLE_MAX_ASSIGNMENTS candidate assignments.
    """
    if objective not in ("energy", "cost"):
        raise ValueError(f"unknown objective {objective!r}")
    model = model if model is not None else EnergyModel()
    tiles = mesh.tile_count
    k = g.n_cores
    if k > tiles:
        raise ValueError(f"{k} cores exceed {tiles} tiles")
    count = math.perm(tiles, k)
    if count > ORACLE_MAX_ASSIGNMENTS:
        raise ValueError(
            f"{count} assignments exceed the oracle limit of {ORACLE_MAX_ASSIGNMENTS}"
        )

    hops = hop_matrix(mesh.n).tolist()
    if objective == "energy":
        per_hop = [bit_energy(h, model) for h in range(3 * (mesh.n - 1) + 1)]
        arcs = [(a.src, a.dst, a.volume) for a in g.arcs]
    else:
        arcs = [(a.src, a.dst, a.bandwidth) for a in g.arcs]

    best_value = None
    best_assign = None
    for assign in itertools.permutations(range(tiles), k):
        if objective == "energy":
            value = math.fsum(w * per_hop[hops[assign[s]][assign[d]]] for s, d, w in arcs)
        else:
            value = sum(w * hops[assign[s]][assign[d]] for s, d, w in arcs)
        if best_value is None or value < best_value:
            best_value, best_assign = value, assign
    assert best_assign is not None
    return best_value, {core: tile for core, tile in enumerate(best_assign)}


@dataclass
class ComparisonRow:
    benchmark: str
    seed: int
    energy_reduction_pct: float | None
    cost_reduction_pct: float | None
    latency_reduction_pct: float | None


@dataclass
class ComparisonSummary:
    a_label: str
    b_label: str
    rows: list[ComparisonRow] = field(default_factory=list)
    mean_energy_reduction_pct: float | None = None
    mean_cost_reduction_pct: float | None = None
    mean_latency_reduction_pct: float | None = None


def _reduction(a_value, b_value) -> float | None:
    """Percentage reduction of a relative to baseline b: 100*(b-a)/b."""
    if a_value is None or b_value is None:
        return None
    if a_value == b_value:
        return 0.0
    if b_value == 0:
        return None
    return 100.0 * (b_value - a_value) / b_value


def _mean(values: list[float | None]) -> float | None:
    present = [v for v in values if v is not None]
    return sum(present) / len(present) if present else None


def compare_report(rows: list[ReportRow], a_label: str, b_label: str) -> ComparisonSummary:
    """Per-benchmark percentage reductions of pipeline a against baseline b.

    Rows are matched by (benchmark, seed); a row belongs to a label when the
    label equals its algo or its mode.  Every group must contain exactly one
    row per label.
    """

    def matches(row: ReportRow, label: str) -> bool:
        return label in (row.algo, row.mode)

    groups: dict[tuple[str, int], list[ReportRow]] = {}
    for row in rows:
        groups.setdefault((row.benchmark, row.seed), []).append(row)

    out = ComparisonSummary(a_label=a_label, b_label=b_label)
    for key in sorted(groups):
        group = groups[key]
        side_a = [r for r in group if matches(r, a_label)]
        side_b = [r for r in group if matches(r, b_label)]
        if len(side_a) != 1 or len(side_b) != 1:
            raise ValueError(
                f"benchmark {key[0]!r} seed {key[1]}: expected one row each for "
                f"{a_label!r} and {b_label!r}"
            )
        ra, rb = side_a[0], side_b[0]
        out.rows.append(
            ComparisonRow(
                benchmark=key[0],
                seed=key[1],
                energy_reduction_pct=_reduction(ra.total_energy, rb.total_energy),
                cost_reduction_pct=_reduction(ra.comm_cost, rb.comm_cost),
                latency_reduction_pct=_reduction(ra.avg_latency, rb.avg_latency),
            )
        )
    out.mean_energy_reduction_pct = _mean([r.energy_reduction_pct for r in out.rows])
    out.mean_cost_reduction_pct = _mean([r.cost_reduction_pct for r in out.rows])
    out.mean_latency_reduction_pct = _mean([r.latency_reduction_pct for r in out.rows])
    return out


def format_comparison(summary: ComparisonSummary) -> str:
    def fmt(v: float | None) -> str:
        return "n/a" if v is None else f"{v:.2f}%"

    lines = [
        f"{summary.a_label} vs {summary.b_label} "
        f"(reduction = 100*(baseline-candidate)/baseline)"
    ]
    for row in summary.rows:
        lines.append(
            f"  {row.benchmark} seed={row.seed}: energy {fmt(row.energy_reduction_pct)}, "
            f"cost {fmt(row.cost_reduction_pct)}, latency {fmt(row.latency_reduction_pct)}"
        )
    lines.append(
        f"  mean: energy {fmt(summary.mean_energy_reduction_pct)}, "
        f"cost {fmt(summary.mean_cost_reduction_pct)}, "
        f"latency {fmt(summary.mean_latency_reduction_pct)}"
    )
    return "\n".join(lines)

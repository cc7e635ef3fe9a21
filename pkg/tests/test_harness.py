import dataclasses

import pytest

from nocmap import (
    Mesh3D,
    PsoParams,
    ReportRow,
    RunConfig,
    audit_artifact,
    bit_energy,
    compare_report,
    ddmap,
    exhaustive_oracle,
    generate_random_graph,
    graph_from_arcs,
    map_with,
    parse_mapping_artifact,
    read_report_csv,
    run_benchmark,
    serialize_graph,
    total_energy,
    write_mapping_artifact,
    xyz_hops,
)
from nocmap.harness import CSV_COLUMNS

from conftest import G1_ARCS


@pytest.fixture
def g1_file(tmp_path):
    path = tmp_path / "g1.ctg"
    path.write_text(serialize_graph(graph_from_arcs(4, G1_ARCS)))
    return path


def make_row(**overrides):
    base = dict(
        benchmark="b", algo="ddmap", mode="map", total_energy=100.0,
        comm_cost=10, avg_latency=5.0, eta=2, runtime_ms=1.0, seed=0,
    )
    base.update(overrides)
    return ReportRow(**base)


class TestArtifacts:
    def test_round_trip(self, tmp_path):
        placement = {0: 13, 1: 10, 2: 4}
        header = {"benchmark": "demo", "mesh": 3, "seed": 0}
        path = tmp_path / "demo.map"
        write_mapping_artifact(path, placement, header)
        parsed, parsed_header = parse_mapping_artifact(path.read_text())
        assert parsed == placement
        assert parsed_header == {"benchmark": "demo", "mesh": "3", "seed": "0"}

    def test_malformed_line(self):
        with pytest.raises(ValueError, match="line 1"):
            parse_mapping_artifact("core 0 tile 4")


class TestRunBenchmark:
    def test_row_matches_fresh_evaluation(self, g1_file, mesh3):
        cfg = RunConfig(graph=g1_file, mode="map", algo="ddmap")
        row, placement = run_benchmark(cfg)
        g = graph_from_arcs(4, G1_ARCS)
        assert placement == ddmap(g, mesh3)
        assert row.total_energy == total_energy(g, placement, mesh3)
        assert row.benchmark == "g1"
        assert row.mode == "map" and row.algo == "ddmap"

    @pytest.mark.parametrize(
        "cfg_kwargs",
        [
            dict(mode="map", algo="spiral"),
            dict(mode="map", algo="crinkle"),
            dict(mode="dynamic"),
            dict(mode="cluster", algo="ddmap"),
            dict(mode="pso", pso=PsoParams(seed=0, max_evals_per_simulation=1_000)),
        ],
    )
    def test_pipelines_are_deterministic(self, g1_file, tmp_path, cfg_kwargs):
        out_a, out_b = tmp_path / "a", tmp_path / "b"
        rows = []
        for out in (out_a, out_b):
            cfg = RunConfig(
                graph=g1_file, out_dir=out, csv_path=out / "rows.csv", **cfg_kwargs
            )
            rows.append(run_benchmark(cfg)[0])
        artifacts_a = sorted(p.name for p in out_a.iterdir())
        artifacts_b = sorted(p.name for p in out_b.iterdir())
        assert artifacts_a == artifacts_b
        for name in artifacts_a:
            if name != "rows.csv":
                assert (out_a / name).read_bytes() == (out_b / name).read_bytes()
        strip = dataclasses.replace
        assert strip(rows[0], runtime_ms=0.0) == strip(rows[1], runtime_ms=0.0)

    def test_csv_columns_and_round_trip(self, g1_file, tmp_path):
        csv_path = tmp_path / "rows.csv"
        cfg = RunConfig(graph=g1_file, csv_path=csv_path)
        row, _ = run_benchmark(cfg)
        header = csv_path.read_text().splitlines()[0]
        assert header.split(",") == CSV_COLUMNS
        (back,) = read_report_csv(csv_path)
        assert back == row

    def test_eta_zero_graph_still_reports(self, tmp_path):
        path = tmp_path / "silent.ctg"
        path.write_text("cores 2\nedge 0 1 0 5\n")
        row, _ = run_benchmark(RunConfig(graph=path))
        assert row.eta == 0 and row.avg_latency is None
        assert row.total_energy == 0.0 and row.comm_cost >= 0

    def test_unknown_mode(self, g1_file):
        with pytest.raises(ValueError, match="unknown mode"):
            run_benchmark(RunConfig(graph=g1_file, mode="anneal"))

    def test_pso_seeded_run(self, g1_file, tmp_path, mesh3):
        seed_cfg = RunConfig(graph=g1_file, mode="map", algo="spiral", out_dir=tmp_path)
        seed_row, seed_placement = run_benchmark(seed_cfg)
        artifact = tmp_path / "g1__map__spiral__seed0.map"
        assert artifact.exists()
        cfg = RunConfig(
            graph=g1_file, mode="pso", seed_mapping=artifact,
            pso=PsoParams(seed=0, max_evals_per_simulation=1_000),
        )
        row, _ = run_benchmark(cfg)
        assert row.total_energy <= seed_row.total_energy

    def test_audit_reproduces_row(self, g1_file, tmp_path):
        out_dir = tmp_path / "runs"
        cfg = RunConfig(graph=str(g1_file), mode="cluster", out_dir=out_dir)
        row, _ = run_benchmark(cfg)
        (artifact,) = out_dir.iterdir()
        audited = audit_artifact(artifact)
        assert dataclasses.replace(audited, runtime_ms=row.runtime_ms) == row

    def test_pso_trace_artifact(self, g1_file, tmp_path):
        cfg = RunConfig(
            graph=g1_file, mode="pso", out_dir=tmp_path,
            pso=PsoParams(seed=0, max_evals_per_simulation=600),
        )
        run_benchmark(cfg)
        trace = tmp_path / "g1__pso__pso__seed0.map.trace.csv"
        lines = trace.read_text().splitlines()
        assert lines[0] == "iteration,evals,gbest_fitness"
        values = [float(line.split(",")[2]) for line in lines[1:]]
        assert all(a >= b for a, b in zip(values, values[1:]))


class TestOracle:
    def test_single_core(self, mesh2):
        g = graph_from_arcs(1, [])
        value, mapping = exhaustive_oracle(g, mesh2)
        assert value == 0.0 and mapping == {0: 0}

    def test_two_cores_one_arc(self, mesh2):
        g = graph_from_arcs(2, [(0, 1, 100, 10)])
        value, mapping = exhaustive_oracle(g, mesh2)
        assert value == 100 * bit_energy(1)
        assert xyz_hops(mapping[0], mapping[1], 2) == 1

    def test_lexicographically_smallest_argmin(self, mesh2):
        g = graph_from_arcs(2, [(0, 1, 100, 10)])
        _, mapping = exhaustive_oracle(g, mesh2)
        assert (mapping[0], mapping[1]) == (0, 1)

    def test_oracle_bounds_heuristics(self, g1, mesh2):
        opt, _ = exhaustive_oracle(g1, mesh2, "energy")
        for algo in ("ddmap", "spiral", "crinkle"):
            assert opt <= total_energy(g1, map_with(algo, g1, mesh2), mesh2)

    def test_cost_objective(self, g1, mesh2):
        opt, mapping = exhaustive_oracle(g1, mesh2, "cost")
        assert isinstance(opt, int)
        assert opt >= 0 and len(set(mapping.values())) == 4

    def test_too_large_rejected(self, mesh3):
        g = generate_random_graph(10, 20, seed=0)
        with pytest.raises(ValueError, match="oracle limit"):
            exhaustive_oracle(g, mesh3)


class TestCompare:
    def test_identical_rows_reduce_zero(self):
        rows = [make_row(algo="ddmap"), make_row(algo="spiral")]
        summary = compare_report(rows, "ddmap", "spiral")
        assert summary.rows[0].energy_reduction_pct == 0.0
        assert summary.mean_energy_reduction_pct == 0.0

    def test_halved_energy_is_fifty_percent(self):
        rows = [
            make_row(algo="ddmap", total_energy=100.0),
            make_row(algo="spiral", total_energy=200.0),
        ]
        summary = compare_report(rows, "ddmap", "spiral")
        assert summary.rows[0].energy_reduction_pct == 50.0

    def test_mode_labels_match(self):
        rows = [
            make_row(mode="cluster", total_energy=50.0),
            make_row(mode="dynamic", total_energy=100.0),
        ]
        summary = compare_report(rows, "cluster", "dynamic")
        assert summary.rows[0].energy_reduction_pct == 50.0

    def test_mismatched_sets_rejected(self):
        rows = [make_row(algo="ddmap")]
        with pytest.raises(ValueError, match="expected one row"):
            compare_report(rows, "ddmap", "spiral")

    def test_none_latency_skipped(self):
        rows = [
            make_row(algo="ddmap", avg_latency=None),
            make_row(algo="spiral", avg_latency=None),
        ]
        summary = compare_report(rows, "ddmap", "spiral")
        assert summary.rows[0].latency_reduction_pct is None
        assert summary.mean_latency_reduction_pct is None

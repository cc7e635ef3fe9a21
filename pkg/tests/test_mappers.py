import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from nocmap import (
    Mesh3D,
    crinkle_order,
    ddmap,
    generate_random_graph,
    graph_from_arcs,
    map_with,
    priority_order,
    sequence_map,
    spiral_order,
)


def assert_injective_total(mapping, g, mesh):
    assert set(mapping) == set(range(g.n_cores))
    tiles = list(mapping.values())
    assert len(set(tiles)) == len(tiles)
    assert all(0 <= t < mesh.tile_count for t in tiles)


class TestDdmap:
    def test_g1_trace(self, g1, mesh3):
        mapping = ddmap(g1, mesh3)
        # A seeds the interior diagonal, B (heaviest partner of A) lands on
        # A's north neighbour, then C beside A, then D beside B.
        assert mapping[0] == 13
        assert mapping[1] == 10
        assert mapping == {0: 13, 1: 10, 2: 14, 3: 11}
        assert list(mapping) == [0, 1, 2, 3]  # placement order preserved

    def test_single_core(self, mesh3):
        g = graph_from_arcs(1, [])
        assert ddmap(g, mesh3) == {0: 13}

    def test_arc_free_three_cores(self, mesh3):
        # no traffic anywhere: ids break ties, every anchor is the seed core
        g = graph_from_arcs(3, [])
        assert ddmap(g, mesh3) == {0: 13, 1: 10, 2: 14}

    @pytest.mark.parametrize("n", [3, 4, 5])
    def test_top_priority_on_first_diagonal_tile(self, n):
        mesh = Mesh3D(n)
        for seed in range(10):
            g = generate_random_graph(8, 20, seed=seed)
            mapping = ddmap(g, mesh)
            top = priority_order(g)[0]
            assert mapping[top] == (n * n + n + 1)

    def test_n2_seeds_origin(self, g1, mesh2):
        mapping = ddmap(g1, mesh2)
        assert mapping[0] == 0
        assert_injective_total(mapping, g1, mesh2)

    def test_too_many_cores(self, mesh2):
        g = graph_from_arcs(9, [])
        with pytest.raises(ValueError, match="exceed"):
            ddmap(g, mesh2)

    def test_deterministic(self, mesh3):
        g = generate_random_graph(16, 24, seed=5)
        assert ddmap(g, mesh3) == ddmap(g, mesh3)


class TestTileOrders:
    def test_crinkle_n2(self, mesh2):
        assert crinkle_order(mesh2) == [0, 1, 3, 2, 4, 5, 7, 6]

    def test_crinkle_n3_serpentine(self, mesh3):
        order = crinkle_order(mesh3)
        assert order[:9] == [0, 1, 2, 5, 4, 3, 6, 7, 8]

    def test_spiral_starts_at_cube_center(self, mesh3):
        order = spiral_order(mesh3)
        assert order[0] == 13
        assert set(order[:9]) == set(range(9, 18))  # middle layer first

    def test_spiral_layer_visits(self, mesh3):
        order = spiral_order(mesh3)
        layers = [t // 9 for t in order]
        assert layers == [1] * 9 + [2] * 9 + [0] * 9

    @pytest.mark.parametrize("n", [2, 3, 4, 5])
    def test_both_orders_are_permutations(self, n):
        mesh = Mesh3D(n)
        for order in (crinkle_order(mesh), spiral_order(mesh)):
            assert sorted(order) == list(range(n ** 3))


class TestSequenceMap:
    def test_g1_crinkle(self, g1, mesh3):
        mapping = sequence_map(g1, mesh3, crinkle_order(mesh3))
        # priority [0,1,2,3] onto the serpentine prefix [0,1,2,5,...]
        assert mapping == {0: 0, 1: 1, 2: 2, 3: 5}

    def test_g1_spiral_head(self, g1, mesh3):
        assert sequence_map(g1, mesh3, spiral_order(mesh3))[0] == 13

    def test_arc_free_pair(self, mesh3):
        g = graph_from_arcs(2, [])
        order = crinkle_order(mesh3)
        assert sequence_map(g, mesh3, order) == {0: 0, 1: 1}

    def test_too_many_cores(self, mesh2):
        g = graph_from_arcs(9, [])
        with pytest.raises(ValueError):
            sequence_map(g, mesh2, crinkle_order(mesh2))


class TestAllMappers:
    @given(
        st.sampled_from(["ddmap", "spiral", "crinkle"]),
        st.integers(2, 27),
        st.integers(0, 40),
        st.integers(0, 1_000),
    )
    @settings(max_examples=80, deadline=None)
    def test_injective_total_deterministic(self, kind, n_cores, n_arcs, seed):
        mesh = Mesh3D(3)
        g = generate_random_graph(n_cores, min(n_arcs, n_cores * (n_cores - 1)), seed=seed)
        mapping = map_with(kind, g, mesh)
        assert_injective_total(mapping, g, mesh)
        assert mapping == map_with(kind, g, mesh)

    def test_unknown_kind(self, g1, mesh3):
        with pytest.raises(ValueError, match="unknown mapper"):
            map_with("zigzag", g1, mesh3)

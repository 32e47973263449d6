"""Core graph container, metric helpers, Laplacian, Lipschitz checks, JSON."""

from fractions import Fraction

import pytest

from gridmass.errors import (
    DisconnectedGraphError,
    InputError,
    VertexNotFoundError,
)
from gridmass.graph import (
    PotentialFunction,
    WeightedGraph,
    ball,
    boundaries,
    distance,
    graph_from_json,
    graph_to_json,
    gradient,
    is_lipschitz,
    laplacian,
)
from gridmass.numeric import EXACT, FLOAT

from conftest import cycle_graph, flat_grid, path_graph


class TestConstruction:
    def test_basic_edges_and_weights(self):
        g = WeightedGraph([(0, 1, 2), (1, 2, Fraction(1, 3))], mode=EXACT)
        assert len(g) == 3
        assert g.edge_count() == 2
        assert g.weight(0, 1) == 2
        assert g.weight(1, 0) == 2
        assert g.weight(1, 2) == Fraction(1, 3)

    def test_rejects_self_loop(self):
        with pytest.raises(InputError):
            WeightedGraph([(0, 0, 1)], mode=EXACT)

    def test_rejects_nonpositive_weight(self):
        with pytest.raises(InputError):
            WeightedGraph([(0, 1, 0)], mode=EXACT)
        with pytest.raises(InputError):
            WeightedGraph([(0, 1, -3)], mode=EXACT)

    def test_duplicate_edge_same_weight_collapses(self):
        g = WeightedGraph([(0, 1, 2), (1, 0, 2)], mode=EXACT)
        assert g.edge_count() == 1

    def test_duplicate_edge_conflicting_weight_rejected(self):
        with pytest.raises(InputError):
            WeightedGraph([(0, 1, 2), (1, 0, 3)], mode=EXACT)

    def test_rejects_disconnected(self):
        with pytest.raises(DisconnectedGraphError):
            WeightedGraph([(0, 1, 1), (2, 3, 1)], mode=EXACT)

    def test_float_weight_requires_float_mode(self):
        with pytest.raises(InputError):
            WeightedGraph([(0, 1, 0.5)], mode=EXACT)
        g = WeightedGraph([(0, 1, 0.5)], mode=FLOAT)
        assert g.weight(0, 1) == 0.5

    def test_vertex_weights_default_one(self):
        g = WeightedGraph([(0, 1, 1)], mode=EXACT)
        assert g.vertex_weight(0) == 1
        assert not g.has_vertex_weights

    def test_vertex_weights_custom(self):
        g = WeightedGraph(
            [("a", "b", 1)], vertex_weights={"a": Fraction(1, 2)}, mode=EXACT
        )
        assert g.vertex_weight("a") == Fraction(1, 2)
        assert g.vertex_weight("b") == 1
        assert g.has_vertex_weights

    def test_vertex_weight_must_be_positive(self):
        with pytest.raises(InputError):
            WeightedGraph([(0, 1, 1)], vertex_weights={0: 0}, mode=EXACT)

    def test_vertex_weight_for_unknown_vertex_rejected(self):
        with pytest.raises(InputError):
            WeightedGraph([(0, 1, 1)], vertex_weights={7: 1}, mode=EXACT)

    def test_unknown_vertex_lookup(self):
        g = WeightedGraph([(0, 1, 1)], mode=EXACT)
        with pytest.raises(VertexNotFoundError):
            g.neighbors(99)
        with pytest.raises(VertexNotFoundError):
            g.weight(0, 99)

    def test_missing_edge_weight_lookup(self):
        g = WeightedGraph([(0, 1, 1), (1, 2, 1)], mode=EXACT)
        with pytest.raises(InputError):
            g.weight(0, 2)

    def test_edges_canonical_and_sorted(self):
        g = WeightedGraph([(2, 1, 5), (0, 1, 3)], mode=EXACT)
        assert g.edges() == [(0, 1, 3), (1, 2, 5)]

    def test_induced_subgraph(self):
        g = path_graph(5)
        sub = g.induced({1, 2, 3})
        assert len(sub) == 3
        assert sub.edge_count() == 2
        with pytest.raises(DisconnectedGraphError):
            g.induced({0, 4})


class TestMetric:
    def test_distance_on_path(self):
        g = path_graph(6)
        assert distance(g, 0, 5) == 5
        assert distance(g, 2, 2) == 0

    def test_distance_ignores_weights(self):
        g = WeightedGraph([(0, 1, 100), (1, 2, Fraction(1, 7))], mode=EXACT)
        assert distance(g, 0, 2) == 2

    def test_ball(self):
        g = flat_grid(2, 3)
        b1 = ball(g, (0, 0), 1)
        assert set(b1) == {(0, 0), (1, 0), (-1, 0), (0, 1), (0, -1)}
        assert len(ball(g, (0, 0), 2)) == 13

    def test_boundaries(self):
        g = path_graph(7)  # vertices 0..6
        inner = {2, 3}
        b = boundaries(g, inner)
        assert b.edge_boundary == ((2, 1), (3, 4))
        assert b.vertex_boundary == (1, 4)
        assert b.closure == (1, 2, 3, 4)


class TestLaplacianAndLipschitz:
    def test_laplacian_plain(self):
        g = path_graph(3)
        f = {0: 0, 1: 0, 2: 1}
        assert laplacian(g, f, 1) == 1
        assert laplacian(g, f, 0) == 0

    def test_laplacian_vertex_weighted(self):
        g = WeightedGraph(
            [("a", "z", Fraction(1, 2))],
            vertex_weights={"a": Fraction(1, 2)},
            mode=EXACT,
        )
        f = {"a": 0, "z": 1}
        # (1 / (1/2)) * (1/2) * (1 - 0) = 1
        assert laplacian(g, f, "a") == 1

    def test_laplacian_accepts_callable(self):
        g = flat_grid(1, 3)
        assert laplacian(g, lambda v: v[0] * v[0], (0,)) == 2

    def test_gradient(self):
        g = path_graph(5)
        f = {v: 2 * v for v in range(5)}
        assert gradient(g, f, 4, 0) == 2

    def test_is_lipschitz_true(self):
        g = flat_grid(2, 2)
        f = {v: v[0] for v in g.vertices}
        rep = is_lipschitz(g, f)
        assert rep.ok
        assert rep.violation is None

    def test_is_lipschitz_violation_reported(self):
        g = path_graph(4)
        f = {0: 0, 1: 5, 2: 5, 3: 5}
        rep = is_lipschitz(g, f)
        assert not rep.ok
        x, y, gap, dist = rep.violation
        assert (x, y) == (0, 1)
        assert gap == 5 and dist == 1

    def test_is_lipschitz_uses_global_distance(self):
        # f restricted to a subset must be compared with distances in the
        # whole graph, not the induced subgraph.
        g = cycle_graph(8)
        f = {0: 0, 4: 4}
        rep = is_lipschitz(g, f, subset=[0, 4])
        assert rep.ok
        f = {0: 0, 4: 5}
        assert not is_lipschitz(g, f, subset=[0, 4]).ok

    def test_potential_function_domain(self):
        f = PotentialFunction({0: 1, 1: 2})
        assert f[0] == 1
        assert f.domain == {0, 1}
        assert 1 in f and 5 not in f
        with pytest.raises(VertexNotFoundError):
            f[5]


class TestJson:
    def test_round_trip_exact(self):
        g = WeightedGraph(
            [((0, 0), (0, 1), Fraction(1, 3)), ((0, 1), (1, 1), 2)],
            vertex_weights={(0, 0): Fraction(1, 2)},
            mode=EXACT,
        )
        payload = graph_to_json(g)
        h = graph_from_json(payload)
        assert h.edges() == g.edges()
        assert h.vertex_weight((0, 0)) == Fraction(1, 2)
        assert h.mode.exact

    def test_round_trip_float(self):
        g = WeightedGraph([(0, 1, 0.25)], mode=FLOAT)
        h = graph_from_json(graph_to_json(g))
        assert not h.mode.exact
        assert h.weight(0, 1) == 0.25

    def test_fraction_serialized_as_string(self):
        g = WeightedGraph([(0, 1, Fraction(1, 3))], mode=EXACT)
        payload = graph_to_json(g)
        (record,) = payload["edges"]
        assert record["w"] == "1/3"

    def test_string_and_tuple_ids_coexist(self):
        g = WeightedGraph([("a", (0, 0), 1)], mode=EXACT)
        h = graph_from_json(graph_to_json(g))
        assert h.has_edge("a", (0, 0))

"""Edge curvature enumeration: oracle values, witnesses, budget, pruning.

Every numeric oracle in this file was derived by hand from the linear
form of the objective (see the module docstring of gridmass.ollivier):

    obj(f) = sum_v c_v f(v) + w(x,y)/m(x) + (1/m(y)) sum_{v~y} w(y,v)

minimized over integer f in the Lipschitz box.
"""

import random
from fractions import Fraction

import pytest

from gridmass.errors import BudgetExceededError, InputError
from gridmass.graph import WeightedGraph, is_lipschitz, laplacian
from gridmass.numeric import EXACT, FLOAT
from gridmass.ollivier import edge_curvature, scalar_curvature

from conftest import (
    circulant_graph,
    complete_graph,
    cycle_graph,
    doubled_site_window,
    flat_grid,
    path_graph,
)


class TestSmallGraphOracles:
    def test_single_edge(self):
        # No free vertices: kappa = 2 w exactly.
        g = WeightedGraph([(0, 1, Fraction(3, 7))], mode=EXACT)
        assert edge_curvature(g, 0, 1).kappa == Fraction(6, 7)

    def test_path_end_edge(self):
        # obj = 3 - f(2), f(2) in [0, 2]  =>  kappa = 1.
        g = path_graph(3)
        assert edge_curvature(g, 0, 1).kappa == 1

    def test_path_interior_edge_is_flat(self):
        g = path_graph(9)
        assert edge_curvature(g, 4, 5).kappa == 0

    def test_triangle(self):
        # obj is the constant 3.
        assert edge_curvature(complete_graph(3), 0, 1).kappa == 3

    def test_complete_graphs(self):
        # K_n edge: 2 from the endpoints plus 1 per common neighbor.
        for n in (4, 5):
            assert edge_curvature(complete_graph(n), 0, 1).kappa == n

    def test_cycles(self):
        # C4: the far pair is adjacent, forcing f(2)-f(4) <= 1.
        assert edge_curvature(cycle_graph(4), 0, 1).kappa == 2
        # C5: the far pair sits at distance 2.
        assert edge_curvature(cycle_graph(5), 0, 1).kappa == 1
        # C6 and longer: unconstrained far pair, flat.
        assert edge_curvature(cycle_graph(6), 0, 1).kappa == 0
        assert edge_curvature(cycle_graph(9), 0, 1).kappa == 0

    def test_grid_interior_edge_is_flat(self):
        g = flat_grid(2, 3)
        assert edge_curvature(g, (0, 0), (1, 0)).kappa == 0
        assert edge_curvature(g, (0, 0), (0, -1)).kappa == 0

    def test_circulant_seven_two_jumps(self):
        # Z_7 with jumps {1, 2}: obj = 5 + f5 - f3 on the short edge
        # (bounded below by 4 through the {3,5} adjacency), and
        # 5 + f5 + f6 - f3 - f4 >= 3 on the long edge.
        g = circulant_graph(7, (1, 2))
        assert edge_curvature(g, 0, 1).kappa == 4
        assert edge_curvature(g, 0, 2).kappa == 3
        assert scalar_curvature(g, 0) == 14

    def test_scalar_on_cycle(self):
        assert scalar_curvature(cycle_graph(5), 0) == 2
        assert scalar_curvature(cycle_graph(6), 0) == 0


class TestVertexWeights:
    def test_doubled_site_center_edge(self):
        # Both center vertices weigh 1/2 and share all four unit
        # neighbors with weight-1/2 edges; the objective collapses to
        # the constant 5.
        g = doubled_site_window(rho=3)
        res = edge_curvature(g, "a", "b")
        assert res.kappa == 5
        assert set(res.domain) == {"a", "b", (0, 1), (0, -1), (1, 0), (-1, 0)}

    def test_doubled_site_spoke_edges_flat(self):
        g = doubled_site_window(rho=3)
        for z in ((1, 0), (-1, 0), (0, 1), (0, -1)):
            assert edge_curvature(g, "a", z).kappa == 0
            assert edge_curvature(g, "b", z).kappa == 0

    def test_doubled_site_scalar(self):
        g = doubled_site_window(rho=3)
        assert scalar_curvature(g, "a") == 5
        assert scalar_curvature(g, "b") == 5

    def test_vertex_weight_scales_single_edge(self):
        # kappa = w/m(x) + w/m(y).
        g = WeightedGraph(
            [("x", "y", 1)],
            vertex_weights={"x": Fraction(1, 2), "y": Fraction(1, 3)},
            mode=EXACT,
        )
        assert edge_curvature(g, "x", "y").kappa == 5


class TestWitness:
    def check_witness(self, g, x, y):
        res = edge_curvature(g, x, y)
        f = res.witness
        assert f[x] == 0
        assert f[y] == 1
        assert set(f.domain) == set(res.domain)
        for v in res.domain:
            assert f[v] in (-1, 0, 1, 2)
        assert is_lipschitz(g, f, subset=res.domain).ok
        assert laplacian(g, f, x) - laplacian(g, f, y) == res.kappa

    def test_witness_attains_value(self):
        for g, x, y in [
            (path_graph(3), 0, 1),
            (cycle_graph(5), 0, 1),
            (circulant_graph(7, (1, 2)), 0, 2),
            (flat_grid(2, 3), (0, 0), (1, 0)),
            (doubled_site_window(3), "a", "b"),
        ]:
            self.check_witness(g, x, y)

    def test_witness_is_lexicographically_minimal(self):
        # On C6 the optimum needs f(5) = -1 and f(2) = 2 (canonical
        # order of the free vertices is 2 then 5).
        res = edge_curvature(cycle_graph(6), 0, 1)
        assert res.witness[2] == 2
        assert res.witness[5] == -1

    def test_witness_on_random_graphs(self, rng):
        for trial in range(25):
            g = _random_connected_graph(rng, nv=7)
            u, v, _ = rng.choice(g.edges())
            self.check_witness(g, u, v)


class TestSearchMechanics:
    def test_requires_adjacency(self):
        g = path_graph(4)
        with pytest.raises(InputError):
            edge_curvature(g, 0, 2)

    def test_budget_exhaustion_raises(self):
        g = flat_grid(2, 3)
        with pytest.raises(BudgetExceededError):
            edge_curvature(g, (0, 0), (1, 0), budget=5)

    def test_propagation_matches_naive(self, rng):
        for trial in range(40):
            g = _random_connected_graph(rng, nv=7)
            u, v, _ = rng.choice(g.edges())
            fast = edge_curvature(g, u, v, use_propagation=True)
            slow = edge_curvature(g, u, v, use_propagation=False)
            assert fast.kappa == slow.kappa
            assert fast.witness == slow.witness

    def test_float_mode_matches_exact(self):
        exact_g = WeightedGraph(
            [(0, 1, Fraction(1, 2)), (1, 2, Fraction(1, 4)), (0, 2, 1)],
            mode=EXACT,
        )
        float_g = WeightedGraph(
            [(0, 1, 0.5), (1, 2, 0.25), (0, 2, 1.0)], mode=FLOAT
        )
        ek = edge_curvature(exact_g, 0, 1).kappa
        fk = edge_curvature(float_g, 0, 1).kappa
        assert isinstance(fk, float)
        assert abs(float(ek) - fk) < 1e-12

    def test_results_are_fractions_in_exact_mode(self):
        g = WeightedGraph([(0, 1, Fraction(1, 3)), (1, 2, 1)], mode=EXACT)
        k = edge_curvature(g, 0, 1).kappa
        assert isinstance(k, Fraction)


def _random_connected_graph(rng: random.Random, nv: int) -> WeightedGraph:
    """Random connected graph with rational weights, small enough for the
    naive reference search."""
    while True:
        edges = []
        present = set()
        for i in range(nv):
            for j in range(i + 1, nv):
                if rng.random() < 0.42:
                    w = Fraction(rng.randint(1, 4), rng.randint(1, 3))
                    edges.append((i, j, w))
                    present.add(i)
                    present.add(j)
        if len(present) < nv:
            continue
        try:
            return WeightedGraph(edges, mode=EXACT)
        except Exception:
            continue

"""Quotient tori: construction, distance predicates, curvature."""

import itertools
from fractions import Fraction

import pytest

from gridmass.errors import GridmassError, InputError
from gridmass.numeric import EXACT, FLOAT
from gridmass.ollivier import edge_curvature, scalar_curvature
from gridmass.torus import (
    TorusSpec,
    build_torus,
    closed_form_distance_condition,
    cycle_sum,
    distance_condition,
    torus_kappa,
    torus_spec_from_json,
    torus_spec_to_json,
    total_scalar_curvature,
)

SKEW = ((2, 1), (-1, 3))  # columns (2,-1) and (1,3), determinant 7


def identity_torus(k, n=2, weights=None, mode=None):
    eye = tuple(tuple(int(i == j) for j in range(n)) for i in range(n))
    return build_torus(TorusSpec(eye, k), weights, mode=mode)


def random_torus_weights(rng, t):
    """Fresh rational weight per undirected edge, keyed by (rep, direction)."""
    weights = {}
    assigned = set()
    for rep in t.classes:
        for i in range(t.spec.n):
            v = t.neighbor(rep, i, 1)
            key = (rep, v) if rep <= v else (v, rep)
            if key not in assigned:
                assigned.add(key)
                weights[(rep, i)] = Fraction(rng.randint(5, 20), 10)
    return weights


class TestSpec:
    def test_determinant_and_index(self):
        spec = TorusSpec(SKEW, 1)
        assert spec.det == 7
        assert spec.q == 7
        assert spec.column(0) == (2, -1)
        assert spec.column(1) == (1, 3)

    def test_singular_rejected(self):
        with pytest.raises(InputError):
            TorusSpec(((1, 2), (2, 4)), 1)

    def test_bad_multiplier(self):
        with pytest.raises(InputError):
            TorusSpec(SKEW, 0)
        with pytest.raises(InputError):
            TorusSpec(SKEW, "3")

    def test_non_integer_entries(self):
        with pytest.raises(InputError):
            TorusSpec(((1.5, 0), (0, 1)), 1)

    def test_lattice_distance(self):
        spec = TorusSpec(SKEW, 1)
        p = tuple(a + 2 * b for a, b in zip(spec.column(0), spec.column(1)))
        assert spec.lattice_distance(p, (0, 0)) == 3
        with pytest.raises(InputError):
            spec.lattice_distance((1, 0), (0, 0))

    def test_membership(self):
        spec = TorusSpec(SKEW, 1)
        assert spec.contains((2, -1))
        assert spec.contains((3, 2))  # alpha_1 + alpha_2
        assert not spec.contains((1, 0))


class TestBuild:
    def test_skew_seven_vertices(self):
        t = build_torus(TorusSpec(SKEW, 1))
        assert t.vertex_count == 7
        assert all(len(t.neighbors(c)) == 4 for c in t.classes)

    def test_standard_three_by_three(self):
        t = identity_torus(3)
        assert t.vertex_count == 9
        assert all(len(t.neighbors(c)) == 4 for c in t.classes)

    def test_index_formula_on_nondiagonal_matrix(self):
        spec = TorusSpec(((2, 1), (0, 3)), 2)
        t = build_torus(spec)
        assert t.vertex_count == spec.q ** 2 // abs(spec.det)

    def test_degenerate_self_loop_rejected(self):
        with pytest.raises(InputError):
            identity_torus(1)

    def test_antipodal_torus_collapses_to_simple_edges(self):
        t = identity_torus(2)
        assert t.vertex_count == 4
        assert all(len(t.neighbors(c)) == 2 for c in t.classes)

    def test_collapsed_edge_weight_conflict(self):
        with pytest.raises(InputError):
            identity_torus(2, weights={((0, 0), 0): 2, ((1, 0), 0): 3})

    def test_weight_key_validation(self):
        with pytest.raises(InputError):
            identity_torus(5, weights={((9, 0), 0): 2})
        with pytest.raises(InputError):
            identity_torus(5, weights={((0, 0), 7): 2})
        with pytest.raises(InputError):
            identity_torus(5, weights={((0, 0), 0): 0})

    def test_quotient_soundness_random_lifts(self, rng):
        t = build_torus(TorusSpec(SKEW, 2))
        for _ in range(40):
            z = (rng.randint(-15, 15), rng.randint(-15, 15))
            x = t.spec.apply(z)
            cx = t.class_of(x)
            assert cx in set(t.classes)
            for i in range(2):
                y = tuple(a + b for a, b in zip(x, t.spec.column(i)))
                assert t.class_of(y) == t.neighbor(cx, i, 1)

    def test_class_of_rejects_off_lattice(self):
        t = build_torus(TorusSpec(SKEW, 1))
        with pytest.raises(InputError):
            t.class_of((1, 0))

    def test_direction_period(self):
        t = build_torus(TorusSpec(SKEW, 1))
        assert t.direction_period(0) == 7
        assert t.direction_period(1) == 7
        t3 = identity_torus(3)
        assert t3.direction_period(0) == 3


class TestDistancePredicates:
    def test_standard_torus_thresholds(self):
        # radius-2 balls need side >= 8; the per-edge condition needs >= 6
        for k, b2, gate in [(5, False, False), (6, False, True),
                            (7, False, True), (8, True, True)]:
            t = identity_torus(k)
            assert distance_condition(t).ok is b2, k
            assert closed_form_distance_condition(t).ok is gate, k

    def test_violation_witness_shape(self):
        rep = distance_condition(identity_torus(5))
        assert not rep.ok
        u, v, d_lat, d_tor = rep.witness
        assert d_lat > d_tor

    def test_antipodal_torus_fails(self):
        assert not distance_condition(identity_torus(2)).ok

    def test_skew_small_fails_but_k3_passes(self):
        assert not distance_condition(build_torus(TorusSpec(SKEW, 1))).ok
        assert not closed_form_distance_condition(build_torus(TorusSpec(SKEW, 1))).ok
        assert distance_condition(build_torus(TorusSpec(SKEW, 3))).ok


class TestCurvature:
    def test_flat_standard_torus_curvature_zero(self):
        t = identity_torus(6)
        for rep in t.classes:
            for i in range(2):
                assert torus_kappa(t, (rep, t.neighbor(rep, i, 1))) == 0

    def test_below_gate_unit_torus_is_positively_curved(self):
        # Side 5 fails the per-edge gate: the two outer ball points on an
        # edge axis sit at wrapped distance 2, not 3, which tightens the
        # Lipschitz cone and lifts every edge to kappa = 1.  The total
        # curvature theorem genuinely needs the gate.
        t = identity_torus(5)
        with pytest.warns(UserWarning):
            for rep in t.classes:
                for i in range(2):
                    assert torus_kappa(t, (rep, t.neighbor(rep, i, 1))) == 1

    def test_closed_form_matches_enumeration(self, rng):
        t = identity_torus(6)
        t = identity_torus(6, weights=random_torus_weights(rng, t))
        g = t.quotient_graph()
        for u, v, _ in t.edges():
            assert torus_kappa(t, (u, v)) == edge_curvature(g, u, v).kappa

    def test_single_perturbation_pattern(self):
        delta = Fraction(1, 10)
        t = identity_torus(7, weights={((0, 0), 0): 1 + delta})
        k_of = lambda u, v: torus_kappa(t, (u, v))
        assert k_of((0, 0), (1, 0)) == 2 * delta
        # radial continuations behind and beyond the heavy edge
        assert k_of((6, 0), (0, 0)) == -delta
        assert k_of((1, 0), (2, 0)) == -delta
        # transverse edges at both endpoints
        for base in [(0, 0), (1, 0)]:
            for sign in (1, -1):
                assert k_of(base, t.neighbor(base, 1, sign)) == -delta
        # far edge untouched
        assert k_of((3, 3), (4, 3)) == 0

    def test_non_edge_rejected(self):
        t = identity_torus(6)
        with pytest.raises(InputError):
            torus_kappa(t, ((0, 0), (2, 0)))

    def test_fallback_warns_and_matches_enumeration(self):
        t = build_torus(TorusSpec(SKEW, 1))
        g = t.quotient_graph()
        u = t.classes[0]
        v = t.neighbor(u, 0, 1)
        with pytest.warns(UserWarning):
            k = torus_kappa(t, (u, v))
        assert k == edge_curvature(g, u, v).kappa


class TestCycleSums:
    def test_flat_cycles_vanish(self):
        t = identity_torus(6)
        for i in range(2):
            assert cycle_sum(t, (0, 0), i) == 0

    def test_random_weights_nonpositive_and_telescoping(self, rng):
        t = identity_torus(6)
        t = identity_torus(6, weights=random_torus_weights(rng, t))
        zero = t.mode.zero()
        for rep in [(0, 0), (2, 3), (5, 1)]:
            for i in range(2):
                s = cycle_sum(t, rep, i)
                assert s <= 0
                # absolute lateral mismatches, accumulated independently
                abs_total = zero
                cur = rep
                for _ in range(t.spec.q):
                    nxt = t.neighbor(cur, i, 1)
                    for j in range(2):
                        if j == i:
                            continue
                        for sg in (1, -1):
                            abs_total += abs(
                                t.weight(cur, t.neighbor(cur, j, sg))
                                - t.weight(nxt, t.neighbor(nxt, j, sg))
                            )
                    cur = nxt
                assert s == -abs_total

    def test_bad_inputs(self):
        t = identity_torus(6)
        with pytest.raises(InputError):
            cycle_sum(t, (0, 0), 9)


class TestTotalCurvature:
    def test_flat_total_zero(self):
        res = total_scalar_curvature(identity_torus(6))
        assert res.total == 0
        assert res.gate_ok and res.decomposition_exact
        assert all(v == 0 for v in res.scalar_by_class.values())

    def test_random_weights_total_nonpositive(self, rng):
        t = identity_torus(6)
        t = identity_torus(6, weights=random_torus_weights(rng, t))
        res = total_scalar_curvature(t)
        assert res.total <= 0
        assert res.decomposition_exact
        assert res.total == 2 * sum(res.cycle_totals) / t.spec.q
        # scalar curvature per class agrees with the enumeration engine
        g = t.quotient_graph()
        for rep in list(t.classes)[:6]:
            assert res.scalar_by_class[rep] == scalar_curvature(g, rep)

    def test_perturbed_total(self):
        delta = Fraction(1, 10)
        t = identity_torus(7, weights={((0, 0), 0): 1 + delta})
        res = total_scalar_curvature(t)
        assert res.total == -8 * delta

    def test_skew_quotient_positive_curvature(self):
        # the 7-vertex quotient is too small for the distance condition:
        # enumeration finds strictly positive curvature everywhere
        t = build_torus(TorusSpec(SKEW, 1))
        with pytest.warns(UserWarning):
            res = total_scalar_curvature(t)
            kappas = sorted(torus_kappa(t, (u, v)) for u, v, _ in t.edges())
        assert not res.gate_ok
        assert res.total == 98
        assert all(v == 14 for v in res.scalar_by_class.values())
        assert kappas == [3] * 7 + [4] * 7

    def test_skew_decomposition_still_exact(self):
        t = build_torus(TorusSpec(SKEW, 1))
        with pytest.warns(UserWarning):
            res = total_scalar_curvature(t)
        assert res.decomposition_exact


class TestJson:
    def test_round_trip_weighted(self, rng):
        t = identity_torus(6)
        t = identity_torus(6, weights=random_torus_weights(rng, t))
        data = torus_spec_to_json(t)
        back = torus_spec_from_json(data)
        assert back.classes == t.classes
        for u, v, w in t.edges():
            assert back.weight(u, v) == w

    def test_round_trip_flat_omits_weights(self):
        data = torus_spec_to_json(identity_torus(5))
        assert "weights" not in data
        back = torus_spec_from_json(data)
        assert back.vertex_count == 25

    def test_missing_fields(self):
        with pytest.raises(InputError):
            torus_spec_from_json({"A": [[1, 0], [0, 1]]})

    def test_duplicate_weight_record(self):
        data = {
            "A": [[1, 0], [0, 1]],
            "k": 5,
            "weights": [
                {"x": [0, 0], "i": 0, "w": 2},
                {"x": [0, 0], "i": 0, "w": 3},
            ],
        }
        with pytest.raises(InputError):
            torus_spec_from_json(data)

    def test_float_weights_select_float_mode(self):
        data = {
            "A": [[1, 0], [0, 1]],
            "k": 5,
            "weights": [{"x": [0, 0], "i": 0, "w": 1.5}],
        }
        back = torus_spec_from_json(data)
        assert back.mode is FLOAT

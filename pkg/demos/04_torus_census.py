"""
Total curvature of lattice quotient tori
========================================

A quotient torus is Z^n modulo k times an integer matrix A.  When the
torus is large enough, distances among nearby vertices agree with the
plain lattice distances, the edge curvatures obey the same closed form
as on the infinite lattice, and the total scalar curvature decomposes
into per-direction cycle sums.  The total is never positive; it is
zero exactly when the weights are translation invariant along every
generator cycle.  Below the size gate all of this genuinely breaks.
"""

import random
import warnings
from fractions import Fraction

from gridmass import (
    TorusSpec,
    build_torus,
    closed_form_distance_condition,
    cycle_sum,
    distance_condition,
    torus_kappa,
    total_scalar_curvature,
)
from gridmass.instances import example_torus

# Skew quotient: A = ((2, 1), (-1, 3)), k = 3, unit weights.
skew = example_torus(k=3)
tot = total_scalar_curvature(skew)
print(f"skew torus: {len(skew.classes)} classes, total R = {tot.total}")
assert tot.total == 0 and tot.gate_ok

# Random rational weights on an identity quotient, k = 6.  The total
# is nonpositive whatever the weights, and it matches the cycle-sum
# decomposition 2 * sum_i cycle_totals[i] / q exactly.
rng = random.Random(7)
spec = TorusSpec(((1, 0), (0, 1)), 6)
bare = build_torus(spec)
weights = {}
seen = set()
for rep in bare.classes:
    for i in range(2):
        v = bare.neighbor(rep, i, 1)
        key = (rep, v) if rep <= v else (v, rep)
        if key not in seen:
            seen.add(key)
            weights[(rep, i)] = Fraction(rng.randint(5, 20), 10)
t = build_torus(spec, weights)

tot = total_scalar_curvature(t)
print(f"\nrandom identity torus: total R = {tot.total} = {float(tot.total):.4f}")
print(f"  per-direction cycle totals: {tot.cycle_totals}")
assert tot.total <= 0
assert tot.total == 2 * sum(tot.cycle_totals) / Fraction(t.spec.q)
one_cycle = cycle_sum(t, (0, 0), 0)
print(f"  cycle sum through (0, 0) in direction 0: {one_cycle}")

# Both distance gates hold here: nearby pairs keep their lattice
# distances (the radius-2 version needs k >= 8 on an identity torus,
# the edge-ball version that the closed form actually uses only k >= 6).
print(f"  edge-ball gate: {closed_form_distance_condition(t).ok}, "
      f"radius-2 gate: {distance_condition(t).ok}")

# At k = 5 the wrap reaches into the curvature optimization itself:
# antipodal identifications tighten the Lipschitz constraints and every
# edge of the unit-weight torus comes out positively curved.  The edge
# computation warns that its closed form no longer applies.
small = build_torus(TorusSpec(((1, 0), (0, 1)), 5))
assert not closed_form_distance_condition(small).ok
with warnings.catch_warnings():
    warnings.simplefilter("ignore")
    kappas = {
        torus_kappa(small, (rep, small.neighbor(rep, i, 1)))
        for rep in small.classes
        for i in range(2)
    }
print(f"\nbelow the gate (k = 5, unit weights): every edge has kappa {kappas}")
assert kappas == {1}

"""
Flatness diagnostics and the limits of decay hypotheses
=======================================================

Asymptotic flatness asks the edge weights to approach 1 and the
curvature data to decay like r^(-p) uniformly over shells.  The
diagnostics fit decay exponents to per-shell maxima and compare them
against a claimed p.  Two instructive failures follow: a radial field
whose mass converges perfectly but whose shell-sup curvature never
decays, and a slowly decaying planar field whose positive mass shows
the decay hypothesis in the mass-vanishing statement cannot be
dropped.
"""

from gridmass import (
    flatness_diagnostics,
    log_model_field,
    mass_estimate,
    schwarzschild_field,
    standard_window,
    strong_decay_check,
)

# Radial field 1 + m/(r+1), copied laterally so that Abs vanishes.
# The copying has a price: the steep innermost rings repeat along every
# coordinate plane, so while max |w - 1| on shell r decays like 1/r,
# the shell maximum of |R| stalls near a constant.  The field is flat
# along rays but not uniformly, and the p = 3 claim is rejected.
win = schwarzschild_field(3, 1, rho=9)
rep = flatness_diagnostics(win, p_claimed=3)
print("radial field, per-shell maxima (r, |w-1|, Abs, |R|):")
for row in rep.shells:
    print(f"  r = {row[0]}: w_dev = {row[1]}, abs = {row[2]}, "
          f"scalar = {float(row[3]):.3f}")
print(f"fitted slopes: w {rep.w_slope:.2f}, scalar {rep.scalar_slope:.2f}")
print(f"claim p = 3: verdict {rep.verdict}")
assert rep.verdict is False

# The mass series does not care: ring gaps only see the crossing-ring
# weight differences, and the estimate from the companion demo still
# converges to m.  Uniform shell decay and summable radial decay are
# different regularity classes.

# Strong decay (weights within r^-p of 1, adjacent differences within
# r^-(p+1), p > n - 2) forces the mass to vanish.  The unweighted
# window satisfies the hypotheses trivially and indeed has mass 0.
flat = standard_window(2, 7)
rep = strong_decay_check(flat, p=3)
print(f"\nunweighted window: hypotheses hold = {rep.hypotheses_hold}, "
      f"verdict = {rep.verdict}")
assert mass_estimate(flat, r_max=5).value == 0

# Planar field with crossing-ring weight 1 - m log r.  The weights do
# NOT return to 1 at any power rate, so the strong-decay hypotheses
# fail and the vanishing conclusion is not available.  Its mass is
# genuinely positive: the series converges to m.
m = 0.01
slow = log_model_field(m, rho=42)
rep = strong_decay_check(slow, p=1)
print(f"\nlog model: hypotheses hold = {rep.hypotheses_hold} "
      f"(w decay fit {rep.w_decay:.3f}), verdict = {rep.verdict}")
assert not rep.hypotheses_hold

est = mass_estimate(slow, r_max=40)
print(f"log model mass at r = 40: {est.value:.6f} (model parameter {m})")
assert abs(est.value - m) < 1e-3

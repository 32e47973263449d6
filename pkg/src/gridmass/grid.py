"""Closed forms and mass diagnostics on weighted lattice windows.

A :class:`GridWindow` is the finite box ``Q_rho = {x : ||x||_inf <= rho}``
of the integer lattice with positive weights on unit-step edges.  Edge
curvature, the Abs distortion term, and scalar curvature all have exact
closed forms here; shell sums of those closed forms telescope, which is
what makes a discrete ADM mass computable.

Edges are addressed in base form: ``(x, axis)`` means the edge
``{x, x + e_axis}``.

Two families of ring sets around the origin appear below, both of size
``2n(2r+1)^(n-1)``:

* the crossing ring at radius r: edges leaving the box ``Q_r`` (radial
  base coordinate ``r`` or ``-r-1``), written ``boundary`` here; the
  second ring just outside (base ``r+1`` or ``-r-2``) is written
  ``far``.  Their weight-sum gap, normalized by ``2^n n``, is the mass
  partial sum.
* the inner ring: radial bases ``r-1`` and ``-r``.  Summing the scalar
  closed form over the box telescopes to inner ring minus far ring
  minus the Abs total.  This is the exact cube identity; note it is the
  inner ring that appears, not the crossing ring (the two coincide only
  at r=0), while the mass gap uses the crossing ring.  The difference
  between the two ring sums vanishes as weights flatten, which is why
  both normalized sequences share the same limit.
"""

from __future__ import annotations

import functools
import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Iterator, Mapping, NamedTuple, Optional, Sequence

import numpy as np

from .errors import InputError, OutOfWindowError
from .graph import WeightedGraph
from .numeric import EXACT, FLOAT, NumericMode, Weight, coerce_weight, format_weight, parse_weight

__all__ = [
    "GridEdge",
    "GridWindow",
    "TableWeights",
    "FieldWeights",
    "standard_window",
    "kappa_grid",
    "abs_term",
    "scalar_grid",
    "shell_edges",
    "inner_shell_edges",
    "ShellSums",
    "shell_sums",
    "mass_gap",
    "cube_curvature_sums",
    "MassEstimate",
    "mass_estimate",
    "FlatnessReport",
    "flatness_diagnostics",
    "StrongDecayReport",
    "strong_decay_check",
    "LineConcavityReport",
    "line_concavity_check",
    "shell_profile_field",
    "schwarzschild_field",
    "log_model_field",
    "window_to_json",
    "window_from_json",
]


class GridEdge(NamedTuple):
    """Lattice edge in base form: {base, base + e_axis}."""

    base: tuple
    axis: int


def _step(x: tuple, axis: int, sign: int = 1) -> tuple:
    return x[:axis] + (x[axis] + sign,) + x[axis + 1:]


def _norm_inf(x: tuple) -> int:
    return max(abs(c) for c in x)


class TableWeights:
    """Finite edge table covering every edge of the window exactly once.

    The table maps ``(x, axis)`` in base form to a positive weight and
    must be complete for the given radius; extra keys outside the
    window are rejected to catch mis-indexed input.
    """

    def __init__(self, n: int, rho: int, table: Mapping, mode: NumericMode = EXACT):
        data = {}
        for (x, axis), w in table.items():
            x = tuple(x)
            if len(x) != n or not (0 <= axis < n):
                raise InputError(f"bad edge key {(x, axis)!r} for dimension {n}")
            if _norm_inf(x) > rho or abs(x[axis] + 1) > rho:
                raise OutOfWindowError(
                    f"table edge {(x, axis)!r} lies outside radius {rho}"
                )
            w = coerce_weight(w, mode)
            if w <= 0:
                raise InputError(f"nonpositive weight {w} at edge {(x, axis)!r}")
            data[(x, axis)] = w
        # per axis: bases with x_axis in [-rho, rho-1], lateral anywhere in the box
        expected = n * (2 * rho) * (2 * rho + 1) ** (n - 1)
        if len(data) != expected:
            raise InputError(
                f"weight table has {len(data)} edges, window needs {expected}"
            )
        self._data = data

    def __call__(self, x: tuple, axis: int) -> Weight:
        return self._data[(x, axis)]


class FieldWeights:
    """Procedural weight field, evaluated lazily out to the declared radius."""

    def __init__(self, fn: Callable[[tuple, int], Weight]):
        self._fn = fn

    def __call__(self, x: tuple, axis: int) -> Weight:
        return self._fn(x, axis)


class GridWindow:
    """Box ``Q_rho`` of the lattice with a weight provider.

    ``weight(x, axis)`` returns the weight of the edge ``{x, x+e_axis}``
    and raises :class:`OutOfWindowError` when the edge leaves the box,
    so closed-form stencils fail loudly instead of truncating.
    """

    __slots__ = ("n", "rho", "mode", "_provider")

    def __init__(self, n: int, rho: int, provider: Callable, mode: NumericMode = EXACT):
        if n < 1:
            raise InputError(f"dimension must be >= 1, got {n}")
        if rho < 1:
            raise InputError(f"window radius must be >= 1, got {rho}")
        self.n = n
        self.rho = rho
        self.mode = mode
        self._provider = provider

    def has_edge(self, x: tuple, axis: int) -> bool:
        return (
            0 <= axis < self.n
            and len(x) == self.n
            and _norm_inf(x) <= self.rho
            and abs(x[axis] + 1) <= self.rho
        )

    def weight(self, x: tuple, axis: int) -> Weight:
        if not self.has_edge(x, axis):
            raise OutOfWindowError(
                f"edge ({x!r}, axis {axis}) outside window of radius {self.rho}"
            )
        w = coerce_weight(self._provider(x, axis), self.mode)
        if w <= 0:
            raise InputError(f"provider gave nonpositive weight {w} at {(x, axis)!r}")
        return w

    def signed_weight(self, x: tuple, axis: int, sign: int) -> Weight:
        """Weight of the edge from ``x`` in direction ``sign * e_axis``."""
        if sign > 0:
            return self.weight(x, axis)
        return self.weight(_step(x, axis, -1), axis)

    def vertices(self) -> Iterator[tuple]:
        return itertools.product(range(-self.rho, self.rho + 1), repeat=self.n)

    def edges(self) -> Iterator[GridEdge]:
        for x in self.vertices():
            for i in range(self.n):
                if x[i] < self.rho:
                    yield GridEdge(x, i)

    def to_graph(self, box: Optional[int] = None) -> WeightedGraph:
        """Materialize the window (or the sub-box ``Q_box``) as a graph."""
        box = self.rho if box is None else box
        if box > self.rho:
            raise OutOfWindowError(f"box {box} exceeds window radius {self.rho}")
        triples = []
        for x in itertools.product(range(-box, box + 1), repeat=self.n):
            for i in range(self.n):
                if x[i] < box:
                    triples.append((x, _step(x, i), self.weight(x, i)))
        return WeightedGraph(triples, mode=self.mode)

    def __repr__(self) -> str:
        return f"GridWindow(n={self.n}, rho={self.rho}, mode={'exact' if self.mode.exact else 'float'})"


def standard_window(n: int, rho: int) -> GridWindow:
    """Unit weights everywhere."""
    return GridWindow(n, rho, FieldWeights(lambda x, i: 1), mode=EXACT)


# -- closed forms ------------------------------------------------------------


def kappa_grid(win: GridWindow, x: tuple, axis: int, sign: int = 1) -> Weight:
    """Closed-form curvature of the edge from ``x`` in ``sign * e_axis``.

    With y the far endpoint: twice the edge weight, minus the two radial
    continuations behind x and beyond y, minus for every other axis the
    absolute mismatch of the lateral edges at x and at y (both signs).
    Equals the enumeration value of ``ollivier.edge_curvature`` on any
    window large enough to contain the stencil.
    """
    if sign not in (1, -1):
        raise InputError(f"sign must be +1 or -1, got {sign}")
    y = _step(x, axis, sign)
    k = 2 * win.signed_weight(x, axis, sign)
    k -= win.signed_weight(x, axis, -sign)
    k -= win.signed_weight(y, axis, sign)
    for j in range(win.n):
        if j == axis:
            continue
        for t in (1, -1):
            k -= abs(win.signed_weight(x, j, t) - win.signed_weight(y, j, t))
    return k


def abs_term(win: GridWindow, x: tuple) -> Weight:
    """Total mismatch between the edges at ``x`` and the parallel edges
    at its 2n neighbors; the 4n(n-1)-term absolute sum.  Zero iff the
    weight field looks locally translation invariant."""
    total = win.mode.zero()
    for i in range(win.n):
        for j in range(win.n):
            if i == j:
                continue
            for s in (1, -1):
                xs = _step(x, j, s)
                for t in (1, -1):
                    total += abs(
                        win.signed_weight(x, i, t) - win.signed_weight(xs, i, t)
                    )
    return total


def scalar_grid(win: GridWindow, x: tuple) -> Weight:
    """Closed-form scalar curvature: incident edges minus the second
    radial ring minus the Abs term.  Equals the sum of ``kappa_grid``
    over the 2n incident edges."""
    total = win.mode.zero()
    for i in range(win.n):
        for s in (1, -1):
            total += win.signed_weight(x, i, s)
            total -= win.signed_weight(_step(x, i, s), i, s)
    return total - abs_term(win, x)


# -- shells ------------------------------------------------------------------


def _ring(n: int, r: int, base_plus: int, base_minus: int) -> Iterator[GridEdge]:
    """Axis-aligned edges with radial base at the two given coordinates
    and lateral coordinates ranging over the side of ``Q_r``."""
    for i in range(n):
        for lat in itertools.product(range(-r, r + 1), repeat=n - 1):
            for b in (base_plus, base_minus):
                yield GridEdge(lat[:i] + (b,) + lat[i:], i)


def shell_edges(win: GridWindow, r: int):
    """The crossing ring at radius r and the second ring outside it.

    Crossing ring: the ``2n(2r+1)^(n-1)`` edges leaving ``Q_r``.  Second
    ring: the equally many edges stepping outward from the vertices just
    outside ``Q_r`` whose largest coordinate is unique.  Their gap is
    the mass numerator at radius r.
    """
    if r < 0:
        raise InputError(f"negative shell radius {r}")
    if r + 2 > win.rho:
        raise OutOfWindowError(
            f"shell {r} needs radius {r + 2}, window has {win.rho}"
        )
    boundary = list(_ring(win.n, r, r, -r - 1))
    far = list(_ring(win.n, r, r + 1, -r - 2))
    return boundary, far


def inner_shell_edges(win: GridWindow, r: int) -> list:
    """The inner ring at radius r: radial edges one step inside the
    crossing ring (bases r-1 and -r).  This is the ring that appears in
    the exact cube identity; at r=0 it coincides with the crossing
    ring."""
    if r < 0:
        raise InputError(f"negative shell radius {r}")
    if r > win.rho:
        raise OutOfWindowError(f"shell {r} exceeds window radius {win.rho}")
    return list(_ring(win.n, r, r - 1, -r))


@dataclass(frozen=True)
class ShellSums:
    """Weight sums of the three rings at radius r plus the cube totals.

    The exact identity is ``scalar_sum = inner_sum - far_sum - abs_sum``
    (telescoped from the per-vertex closed form).  ``mass_gap`` uses the
    crossing ring instead; the two agree in the limit but differ at any
    fixed radius by the boundary-layer weight difference.
    """

    r: int
    boundary_sum: Weight
    far_sum: Weight
    inner_sum: Weight
    abs_sum: Weight
    scalar_sum: Weight
    mode: NumericMode

    @property
    def mass_gap(self) -> Weight:
        return self.boundary_sum - self.far_sum

    def identity_residual(self) -> Weight:
        return self.scalar_sum - (self.inner_sum - self.far_sum - self.abs_sum)

    def identity_holds(self) -> bool:
        return self.mode.isclose(self.identity_residual(), self.mode.zero())


def shell_sums(win: GridWindow, r: int) -> ShellSums:
    """All ring and cube sums at radius r (needs ``r + 2 <= rho``)."""
    boundary, far = shell_edges(win, r)
    inner = inner_shell_edges(win, r)
    zero = win.mode.zero()
    b = sum((win.weight(*e) for e in boundary), zero)
    f = sum((win.weight(*e) for e in far), zero)
    inr = sum((win.weight(*e) for e in inner), zero)
    a = zero
    s = zero
    for x in itertools.product(range(-r, r + 1), repeat=win.n):
        a += abs_term(win, x)
        s += scalar_grid(win, x)
    return ShellSums(r, b, f, inr, a, s, win.mode)


def mass_gap(win: GridWindow, r: int) -> Weight:
    """Crossing-ring weight sum minus second-ring weight sum, without
    the cube totals (cheap enough for large radii)."""
    boundary, far = shell_edges(win, r)
    zero = win.mode.zero()
    return sum((win.weight(*e) for e in boundary), zero) - sum(
        (win.weight(*e) for e in far), zero
    )


def cube_curvature_sums(win: GridWindow, r_max: int) -> list:
    """Partial sums ``sum over Q_r of (Abs + R)`` for r = 0..r_max.

    Nonnegative scalar curvature makes every term nonnegative, so the
    sequence is non-decreasing; it telescopes to inner ring minus far
    ring."""
    if r_max + 2 > win.rho:
        raise OutOfWindowError(
            f"r_max {r_max} needs radius {r_max + 2}, window has {win.rho}"
        )
    sums = []
    acc = win.mode.zero()
    for r in range(r_max + 1):
        for x in itertools.product(range(-r, r + 1), repeat=win.n):
            if _norm_inf(x) == r or r == 0:
                acc += abs_term(win, x) + scalar_grid(win, x)
        sums.append(acc)
    return sums


# -- mass --------------------------------------------------------------------


@dataclass(frozen=True)
class MassEstimate:
    """Partial mass sums with a tail-corrected point estimate.

    ``partial[k]`` is the normalized gap at radius ``k+1``.  ``value``
    is the final partial sum plus a power-law tail correction fitted on
    the log-log slope of consecutive differences; for cleanly decaying
    fields this removes the O(1/r) truncation error.  ``converged``
    only says the raw partials themselves stabilized within tolerance,
    which is a stricter and slower criterion than the corrected value
    being accurate.
    """

    partial: tuple
    converged: bool
    value: object
    diagnostics: dict = field(default_factory=dict)

    @property
    def r_max(self) -> int:
        return len(self.partial)


def mass_estimate(
    win: GridWindow,
    r_max: Optional[int] = None,
    tolerance: float = 1e-3,
    k_stable: int = 5,
) -> MassEstimate:
    """Mass partial sums ``M_r = gap(r) / (2^n n)`` for r = 1..r_max.

    ``converged`` holds iff the last ``k_stable`` partials lie within
    ``tolerance`` of each other.  The point estimate extrapolates the
    tail: fit ``s`` from the decay of consecutive differences
    (``M_r ~ M - C r^-s``), then add the implied remainder ``C r^-s``
    to the last partial.  Falls back to the raw last partial when the
    differences vanish, alternate in sign, or show no power law."""
    if r_max is None:
        r_max = win.rho - 2
    if r_max < 1 or r_max + 2 > win.rho:
        raise OutOfWindowError(
            f"r_max {r_max} infeasible for window radius {win.rho}"
        )
    norm = 2 ** win.n * win.n
    partial = [mass_gap(win, r) / norm for r in range(1, r_max + 1)]

    tail = partial[-k_stable:]
    spread = max(float(abs(a - b)) for a in tail for b in tail)
    converged = len(tail) == k_stable and spread <= tolerance

    value = partial[-1]
    diagnostics: dict = {"raw_last": partial[-1]}
    diffs = [float(partial[k + 1] - partial[k]) for k in range(len(partial) - 1)]
    fit_len = min(10, len(diffs))
    window_diffs = diffs[-fit_len:]
    rs = list(range(len(partial) - fit_len + 1, len(partial)))
    usable = [(r, d) for r, d in zip(rs, window_diffs) if d != 0.0]
    signs = {d > 0 for _, d in usable}
    if not usable:
        diagnostics["note"] = "partials exactly stable"
    elif len(signs) > 1:
        diagnostics["note"] = "differences change sign; raw last partial kept"
    elif len(usable) < 3:
        diagnostics["note"] = "too few nonzero differences to fit; raw last partial kept"
    else:
        logs_r = np.log([r for r, _ in usable])
        logs_d = np.log([abs(d) for _, d in usable])
        slope, _ = np.polyfit(logs_r, logs_d, 1)
        s = float(-slope - 1.0)
        diagnostics["fitted_decay"] = s
        if s > 0.05:
            # M - M_R = C R^-s with the last consecutive difference
            # pinning C; exact for a pure power-law tail
            R = len(partial)
            d_last = diffs[-1]
            denom = (R - 1) ** (-s) - R ** (-s)
            correction = float(d_last) * R ** (-s) / denom
            value = float(partial[-1]) + correction
            diagnostics["tail_correction"] = correction
            diagnostics["fit_points"] = len(usable)
        else:
            diagnostics["note"] = "no clear power-law decay; raw last partial kept"

    return MassEstimate(tuple(partial), converged, value, diagnostics)


# -- asymptotic-flatness diagnostics ----------------------------------------


def _loglog_slope(points: Sequence) -> Optional[float]:
    xs = np.log([float(r) for r, _ in points])
    ys = np.log([float(v) for _, v in points])
    slope, _ = np.polyfit(xs, ys, 1)
    return float(slope)


def _shell_series(win: GridWindow, r_lo: int, r_hi: int, per_shell) -> list:
    return [(r, per_shell(r)) for r in range(r_lo, r_hi + 1)]


def _series_slope(series: Sequence, what: str) -> Optional[float]:
    """Log-log slope of the nonzero part; None when identically zero."""
    nonzero = [(r, v) for r, v in series if float(v) != 0.0]
    if not nonzero:
        return None
    if len(nonzero) < 4:
        raise InputError(
            f"fewer than 4 usable shells to fit the {what} decay"
        )
    return _loglog_slope(nonzero)


def _shell_vertices(n: int, r: int) -> Iterator[tuple]:
    if r == 0:
        yield (0,) * n
        return
    for x in itertools.product(range(-r, r + 1), repeat=n):
        if _norm_inf(x) == r:
            yield x


@dataclass(frozen=True)
class FlatnessReport:
    """Per-shell maxima of |w-1|, Abs and |R| with fitted decay slopes.

    The asymptotic-flatness definition asks for ``w = 1 + o(1)`` plus
    ``Abs`` and ``|R|`` in ``O(r^-p)``; the verdict accepts when both
    fitted decay exponents reach ``p_claimed`` within ``slack`` and the
    weight deviation trends down (identically-zero series pass
    outright)."""

    shells: tuple  # (r, w_dev_max, abs_max, scalar_max)
    w_slope: Optional[float]
    abs_slope: Optional[float]
    scalar_slope: Optional[float]
    p_claimed: float
    slack: float
    verdict: bool


def flatness_diagnostics(
    win: GridWindow, p_claimed: float, slack: float = 0.25
) -> FlatnessReport:
    r_hi = win.rho - 2
    if r_hi < 1:
        raise InputError("window too small for flatness diagnostics")
    rows = []
    for r in range(1, r_hi + 1):
        boundary, _ = shell_edges(win, r)
        w_dev = max(abs(win.weight(*e) - 1) for e in boundary)
        a = max(abs_term(win, x) for x in _shell_vertices(win.n, r))
        s = max(abs(scalar_grid(win, x)) for x in _shell_vertices(win.n, r))
        rows.append((r, w_dev, a, s))

    w_slope = _series_slope([(r, w) for r, w, _, _ in rows], "weight deviation")
    abs_slope = _series_slope([(r, a) for r, _, a, _ in rows], "Abs")
    scalar_slope = _series_slope([(r, s) for r, _, _, s in rows], "scalar curvature")

    def decays(slope: Optional[float]) -> bool:
        return slope is None or -slope >= p_claimed - slack

    w_ok = w_slope is None or w_slope <= 0.0
    verdict = w_ok and decays(abs_slope) and decays(scalar_slope)
    return FlatnessReport(tuple(rows), w_slope, abs_slope, scalar_slope, p_claimed, slack, verdict)


@dataclass(frozen=True)
class StrongDecayReport:
    """Check of the strong-decay mass-vanishing statement.

    Hypotheses: ``|w-1| = O(r^-p)`` and adjacent-edge differences
    ``O(r^-p-1)``, with ``p > n-2``.  When both fitted exponents clear
    those rates (within slack), the report asserts the ring-gap bound
    ``|gap(r)| <= 2n(2r+1)^(n-1) C r^(-p-1)`` with the empirical C and
    that the mass partials trend to zero.  When the hypotheses fail the
    check is not applied and ``verdict`` is None."""

    w_decay: Optional[float]
    diff_decay: Optional[float]
    hypotheses_hold: bool
    applied: bool
    gap_bound_ok: Optional[bool]
    mass_trends_zero: Optional[bool]
    verdict: Optional[bool]


def strong_decay_check(win: GridWindow, p: float, slack: float = 0.25) -> StrongDecayReport:
    r_hi = win.rho - 2
    if r_hi < 4:
        raise InputError("insufficient shells for the strong decay check")

    w_rows = []
    diff_rows = []
    for r in range(1, r_hi + 1):
        boundary, _ = shell_edges(win, r)
        w_rows.append((r, max(abs(win.weight(*e) - 1) for e in boundary)))
        worst = win.mode.zero()
        for x in _shell_vertices(win.n, r):
            incident = []
            for i in range(win.n):
                for s in (1, -1):
                    try:
                        incident.append(win.signed_weight(x, i, s))
                    except OutOfWindowError:
                        pass
            for a, b in itertools.combinations(incident, 2):
                d = abs(a - b)
                if d > worst:
                    worst = d
        diff_rows.append((r, worst))

    w_slope = _series_slope(w_rows, "weight deviation")
    diff_slope = _series_slope(diff_rows, "adjacent-difference")
    w_decay = None if w_slope is None else -w_slope
    diff_decay = None if diff_slope is None else -diff_slope

    w_ok = w_decay is None or w_decay >= p - slack
    diff_ok = diff_decay is None or diff_decay >= p + 1 - slack
    hypotheses = w_ok and diff_ok and p > win.n - 2
    if not hypotheses:
        return StrongDecayReport(w_decay, diff_decay, False, False, None, None, None)

    c_emp = 0.0
    for r, d in diff_rows:
        c_emp = max(c_emp, float(d) * r ** (p + 1))
    gap_ok = True
    norm = 2 ** win.n * win.n
    partials = []
    for r in range(1, r_hi + 1):
        gap = mass_gap(win, r)
        bound = 2 * win.n * (2 * r + 1) ** (win.n - 1) * c_emp * r ** (-p - 1)
        if float(abs(gap)) > bound * (1 + slack) + 1e-12:
            gap_ok = False
        partials.append(float(gap) / norm)
    m_first, m_last = abs(partials[0]), abs(partials[-1])
    trends = m_last <= 1e-9 or m_last <= 0.5 * m_first
    return StrongDecayReport(
        w_decay, diff_decay, True, True, gap_ok, trends, gap_ok and trends
    )


@dataclass(frozen=True)
class LineConcavityReport:
    """Concavity scan of consecutive edge weights along one lattice line.

    Nonnegative curvature on a line's edges forces ``2 w_k >= w_(k-1) +
    w_(k+1)``; a positive concave sequence on the whole lattice line
    must be constant, so a strictly concave spot predicts where
    positivity would fail if the trend continued."""

    axis: int
    k_range: tuple
    weights: tuple
    concave: bool
    first_violation: Optional[int]
    constant: bool
    eventual_positivity_bound: Optional[int]


def line_concavity_check(win: GridWindow, base: tuple, axis: int) -> LineConcavityReport:
    if not (0 <= axis < win.n):
        raise InputError(f"axis {axis} out of range for dimension {win.n}")
    if _norm_inf(base) > win.rho:
        raise OutOfWindowError(f"base {base!r} outside window")
    lo, hi = -win.rho, win.rho - 1  # base coordinates of line edges
    ks = range(lo, hi + 1)
    weights = []
    for k in ks:
        x = base[:axis] + (k,) + base[axis + 1:]
        weights.append(win.weight(x, axis))

    concave = True
    first_violation = None
    for idx in range(1, len(weights) - 1):
        if 2 * weights[idx] < weights[idx - 1] + weights[idx + 1]:
            concave = False
            first_violation = lo + idx
            break
    constant = all(w == weights[0] for w in weights)

    bound = None
    if concave and not constant:
        # concavity caps the sequence by its end slopes; a nonzero end
        # slope sends some extension of the line to zero weight
        d_right = weights[-1] - weights[-2]
        d_left = weights[0] - weights[1]
        candidates = []
        if d_right < 0:
            steps = math.ceil(float(weights[-1] / -d_right))
            candidates.append(hi + steps)
        if d_left < 0:
            steps = math.ceil(float(weights[0] / -d_left))
            candidates.append(-(abs(lo) + steps))
        if candidates:
            bound = min(candidates, key=abs)
    return LineConcavityReport(
        axis, (lo, hi), tuple(weights), concave, first_violation, constant, bound
    )


# -- model weight fields -----------------------------------------------------


def shell_profile_field(
    n: int, rho: int, profile: Callable[[int], Weight], mode: NumericMode
) -> GridWindow:
    """Window whose axis-i edge weight depends only on the radial base
    coordinate: the edge crossing ring r (on either side of the axis)
    carries ``profile(r)``.  Lateral translation invariance makes Abs
    vanish identically."""
    cached = functools.lru_cache(maxsize=None)(profile)

    def fn(x: tuple, axis: int) -> Weight:
        t = x[axis]
        return cached(t if t >= 0 else -t - 1)

    return GridWindow(n, rho, FieldWeights(fn), mode=mode)


def schwarzschild_field(
    n: int, m, rho: int, mode: Optional[NumericMode] = None
) -> GridWindow:
    """Discrete Schwarzschild-type field in dimension n >= 3.

    Crossing-ring edges at radius r carry ``(1 + m/(r+1)^(n-2))^(1/(n-2))``,
    copied laterally so Abs vanishes.  Positive weights need m > -1."""
    if n < 3:
        raise InputError("the field needs dimension n >= 3")
    if not m > -1:
        raise InputError(f"mass parameter must exceed -1, got {m}")
    if mode is None:
        exactable = n == 3 and not isinstance(m, float)
        mode = EXACT if exactable else FLOAT
    if mode.exact:
        if n != 3:
            raise InputError("exact mode only supports n = 3 (rational roots)")
        m_exact = Fraction(m)

        def profile(r: int):
            return 1 + m_exact / (r + 1)

    else:
        mf = float(m)
        inv = 1.0 / (n - 2)

        def profile(r: int):
            return (1.0 + mf / (r + 1) ** (n - 2)) ** inv

    return shell_profile_field(n, rho, profile, mode)


def log_model_field(m, rho: int, mode: NumericMode = FLOAT) -> GridWindow:
    """Planar model with crossing-ring weight ``1 - m log r`` (and 1 on
    the innermost ring, where the formula has no value).  Requires the
    weights to stay positive out to the window radius."""
    if not mode.exact:
        mf = float(m)
        if mf > 0 and 1.0 - mf * math.log(rho) <= 0:
            raise InputError(
                f"weights vanish inside radius {rho}: need m < 1/log(rho)"
            )

        def profile(r: int):
            return 1.0 if r == 0 else 1.0 - mf * math.log(r)

    else:
        raise InputError("the log model is float-only (irrational weights)")
    return shell_profile_field(2, rho, profile, mode)


# -- JSON --------------------------------------------------------------------


def window_to_json(win: GridWindow) -> dict:
    """Materialized edge table; intended for windows of modest radius."""
    edges = [
        {"x": list(e.base), "axis": e.axis, "w": format_weight(win.weight(*e))}
        for e in win.edges()
    ]
    return {"n": win.n, "rho": win.rho, "edges": edges}


def window_from_json(data: Mapping, mode: Optional[NumericMode] = None) -> GridWindow:
    try:
        n = int(data["n"])
        rho = int(data["rho"])
        raw = data["edges"]
    except (TypeError, KeyError, ValueError) as exc:
        raise InputError("window JSON needs 'n', 'rho' and 'edges'") from exc
    if mode is None:
        floaty = any(isinstance(e.get("w", 1), float) for e in raw)
        mode = FLOAT if floaty else EXACT
    table = {}
    for e in raw:
        try:
            key = (tuple(int(c) for c in e["x"]), int(e["axis"]))
        except (TypeError, KeyError, ValueError) as exc:
            raise InputError(f"bad window edge record {e!r}") from exc
        if key in table:
            raise InputError(f"duplicate window edge {key!r}")
        table[key] = parse_weight(e.get("w", 1), mode)
    provider = TableWeights(n, rho, table, mode)
    return GridWindow(n, rho, provider, mode=mode)

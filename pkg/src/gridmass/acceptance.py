"""Go/no-go acceptance suite for the whole package.

Ten numbered criteria pin the library's claims at fixed tolerances:
exact zero curvature on flat windows, closed-form vs brute-force oracle
agreement, the cube/ring weight identity, the two counterexample
instances, mass recovery for the radial field families, monotone
partial mass sums with the flatness rigidity branch, the torus total
curvature theorem, the rigidity pipeline verdicts, and the extremal
extension property suite.

Each criterion runs deterministically (fixed seed per criterion) and
returns a :class:`CriterionResult` with a single pass/fail line.  A
criterion that raises is reported as failed with the exception text;
nothing downgrades a failure to a warning.  Wall-clock budgets, where a
criterion has one, are part of the pass condition.

Interior conventions on finite windows: brute-force curvature on a
materialized window equals the infinite-grid value only where the
relevant balls avoid the rim, so "every edge / every vertex" is always
checked over the faithful interior (endpoints within Q_{rho-2};
scalar curvature one layer deeper).  Cut artifacts outside that region
are properties of the truncation, not of the field.
"""

from __future__ import annotations

import itertools
import math
import random
import time
import warnings
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Optional

from .errors import GridmassError
from .graph import WeightedGraph, bfs_distances, is_lipschitz
from .grid import (
    FieldWeights,
    GridWindow,
    TableWeights,
    abs_term,
    cube_curvature_sums,
    kappa_grid,
    log_model_field,
    mass_estimate,
    mass_gap,
    scalar_grid,
    schwarzschild_field,
    shell_sums,
    standard_window,
)
from .instances import appendix1_core, appendix1_graph, appendix2_graph, example_torus
from .numeric import EXACT
from .ollivier import edge_curvature, scalar_curvature
from .salami import (
    extremal_extension,
    harmonicity_propagation_check,
    make_partition,
    rigidity_check,
    standard_afg,
)
from .torus import (
    TorusSpec,
    build_torus,
    closed_form_distance_condition,
    distance_condition,
    torus_kappa,
    total_scalar_curvature,
)

SEED = 20260819


@dataclass(frozen=True)
class CriterionResult:
    number: int
    title: str
    passed: bool
    details: str
    elapsed: float
    budget: Optional[float] = None

    def line(self) -> str:
        verdict = "PASS" if self.passed else "FAIL"
        budget = f" / budget {self.budget:.0f}s" if self.budget else ""
        return (
            f"{verdict}  criterion {self.number:2d}  {self.title}"
            f"  [{self.elapsed:.1f}s{budget}]  {self.details}"
        )


class CheckFailure(GridmassError):
    """A criterion assertion did not hold."""


def _require(cond: bool, message: str) -> None:
    if not cond:
        raise CheckFailure(message)


def _step(x: tuple, i: int, s: int = 1) -> tuple:
    return x[:i] + (x[i] + s,) + x[i + 1 :]


def _cube(n: int, b: int) -> Iterable[tuple]:
    return itertools.product(range(-b, b + 1), repeat=n)


def _random_window(rng: random.Random, n: int, rho: int) -> GridWindow:
    """Independent rational weight in [1/2, 2] per edge, denominator 10."""
    table = {}
    for x in _cube(n, rho):
        for i in range(n):
            if x[i] < rho:
                table[(x, i)] = Fraction(rng.randint(5, 20), 10)
    return GridWindow(n, rho, TableWeights(n, rho, table), mode=EXACT)


def _brute_kappa_map(win: GridWindow, g: WeightedGraph, b: int) -> dict:
    """Enumeration curvature for every edge with both endpoints in Q_b,
    keyed by (base, axis)."""
    out = {}
    for x in _cube(win.n, b):
        for i in range(win.n):
            if x[i] < b:
                y = _step(x, i)
                out[(x, i)] = edge_curvature(g, x, y, want_witness=False).kappa
    return out


# -- criterion 1 -------------------------------------------------------------


def _criterion_1() -> str:
    edges = vertices = 0
    for n in (2, 3):
        win = standard_window(n, 4)
        closed_b = win.rho - 1
        for x in _cube(n, closed_b):
            for i in range(n):
                if x[i] < closed_b:
                    _require(
                        kappa_grid(win, x, i) == 0,
                        f"closed-form kappa nonzero on flat window at {(x, i)}",
                    )
        for x in _cube(n, win.rho - 2):
            _require(
                scalar_grid(win, x) == 0,
                f"closed-form R nonzero on flat window at {x}",
            )
        g = win.to_graph()
        brute = _brute_kappa_map(win, g, win.rho - 2)
        for key, kappa in brute.items():
            _require(kappa == 0, f"brute kappa nonzero on flat window at {key}")
        edges += len(brute)
        for x in _cube(n, win.rho - 3):
            r = sum(brute[(x, i)] for i in range(n)) + sum(
                brute[(_step(x, i, -1), i)] for i in range(n)
            )
            _require(r == 0, f"brute R nonzero on flat window at {x}")
            vertices += 1
        # spot-check that the assembled sum is the engine's own R
        probe = (0,) * n
        _require(
            scalar_curvature(g, probe)
            == sum(brute[(probe, i)] for i in range(n))
            + sum(brute[(_step(probe, i, -1), i)] for i in range(n)),
            "incident-sum assembly disagrees with scalar_curvature",
        )
    return f"exact zeros: {edges} brute edges, {vertices} brute vertices, n=2,3"


# -- criterion 2 -------------------------------------------------------------


def _criterion_2(rng: random.Random) -> str:
    n_windows = 204
    checked_edges = 0
    checked_vertices = 0
    for idx in range(n_windows):
        n = 3 if idx % 6 == 0 else 2
        win = _random_window(rng, n, 3)
        g = win.to_graph()
        # every edge incident to Q_1 has both endpoints in Q_2, where the
        # truncated graph is faithful and the stencil fits
        keys = set()
        for x in _cube(n, 1):
            for i in range(n):
                keys.add((x, i))
                keys.add((_step(x, i, -1), i))
        brute = {}
        for base, i in sorted(keys):
            closed = kappa_grid(win, base, i)
            brute[(base, i)] = edge_curvature(
                g, base, _step(base, i), want_witness=False
            ).kappa
            _require(
                closed == brute[(base, i)],
                f"window {idx}: closed {closed} != brute {brute[(base, i)]} "
                f"at {(base, i)}",
            )
        checked_edges += len(keys)
        for x in _cube(n, 1):
            r_brute = sum(brute[(x, i)] for i in range(n)) + sum(
                brute[(_step(x, i, -1), i)] for i in range(n)
            )
            _require(
                scalar_grid(win, x) == r_brute,
                f"window {idx}: closed R != brute R at {x}",
            )
            checked_vertices += 1
    return (
        f"{n_windows} windows, {checked_edges} edge and "
        f"{checked_vertices} vertex agreements, all exact"
    )


# -- criterion 3 -------------------------------------------------------------


def _criterion_3(rng: random.Random) -> str:
    n_windows = 40
    checked = 0
    for idx in range(n_windows):
        n = 3 if idx % 4 == 0 else 2
        win = _random_window(rng, n, 6)
        for r in range(5):
            s = shell_sums(win, r)
            _require(
                s.identity_residual() == 0,
                f"window {idx}: identity residual {s.identity_residual()} "
                f"at r={r}",
            )
            checked += 1
    return f"{n_windows} windows x r<=4, {checked} exact identities"


# -- criterion 4 -------------------------------------------------------------


def _criterion_4() -> str:
    g1 = appendix1_graph()
    n1 = 0
    for u, v, _ in g1.edges():
        want = 5 if {u, v} == {"a", "b"} else 0
        kappa = edge_curvature(g1, u, v, want_witness=False).kappa
        _require(
            kappa == want,
            f"doubled-site instance: kappa({u},{v}) = {kappa}, want {want}",
        )
        n1 += 1
    # same edges with unit vertex weights: different answers, so the
    # generalized Laplacian path demonstrably carries the result
    g1u = WeightedGraph(list(g1.edges()), mode=EXACT)
    _require(
        edge_curvature(g1u, "a", "b", want_witness=False).kappa == Fraction(5, 2),
        "unit-vertex-weight variant: pair edge should drop to 5/2",
    )
    _require(
        edge_curvature(g1u, "a", (0, 1), want_witness=False).kappa == -1,
        "unit-vertex-weight variant: spoke should drop to -1",
    )
    g2 = appendix2_graph()
    n2 = 0
    for u, v, _ in g2.edges():
        kappa = edge_curvature(g2, u, v, want_witness=False).kappa
        _require(kappa == 0, f"doubled-line instance: kappa({u},{v}) = {kappa}")
        n2 += 1
    return f"pair edge 5, other {n1 - 1} edges 0; doubled line {n2} edges all 0"


# -- criterion 5 -------------------------------------------------------------


def _criterion_5(rng: random.Random) -> str:
    rel_errors = []
    for m in (0.5, 1.0, 2.0):
        win = schwarzschild_field(3, m, 52)
        est = mass_estimate(win, r_max=50)
        rel = abs(est.value - m) / m
        _require(
            rel <= 0.02,
            f"m={m}: mass estimate {est.value} off by {rel:.3%}",
        )
        rel_errors.append(rel)
        for _ in range(100):
            x = tuple(rng.randint(-51, 51) for _ in range(3))
            _require(
                abs_term(win, x) == 0.0,
                f"m={m}: Abs nonzero at {x}",
            )
        for _ in range(20):
            x = tuple(rng.randint(10, 50) for _ in range(3))
            r = scalar_grid(win, x)
            _require(r < 0, f"m={m}: R(x) = {r} not negative at far vertex {x}")
    worst = max(rel_errors)
    return f"masses 0.5/1/2 recovered, worst relative error {worst:.3%}"


# -- criterion 6 -------------------------------------------------------------


def _criterion_6() -> str:
    m = 0.01
    win = log_model_field(m, 102)
    worst = 0.0
    for r in range(1, 101):
        gap = mass_gap(win, r)
        formula = 4 * (2 * r + 1) * m * math.log(1 + 1 / r)
        worst = max(worst, abs(gap - formula))
        _require(
            abs(gap - formula) <= 1e-9,
            f"r={r}: unnormalized gap {gap} vs formula {formula}",
        )
    m_100 = mass_gap(win, 100) / 8
    _require(
        abs(m_100 - m) <= 0.01 * m,
        f"M_100 = {m_100} not within 1% of {m}",
    )
    return (
        f"gap formula matched to {worst:.2e} for r<=100, "
        f"M_100 = {m_100:.6f} vs m = {m}"
    )


# -- criterion 7 -------------------------------------------------------------


def _confined_table(rng: random.Random, rho: int) -> tuple:
    """2-d weight table perturbed on 1..3 random edges inside Q_2,
    trivial everywhere else.  Returns (window, is_flat)."""
    table = {}
    for x in _cube(2, rho):
        for i in range(2):
            if x[i] < rho:
                table[(x, i)] = Fraction(1)
    inner = [
        (x, i)
        for x in _cube(2, 2)
        for i in range(2)
        if max(abs(c) for c in _step(x, i)) <= 2
    ]
    flat = True
    for x, i in rng.sample(inner, rng.randint(1, 3)):
        w = Fraction(rng.randint(5, 20), 10)
        table[(x, i)] = w
        flat = flat and w == 1
    return GridWindow(2, rho, TableWeights(2, rho, table), mode=EXACT), flat


def _min_scalar(win: GridWindow, b: int):
    return min(scalar_grid(win, x) for x in _cube(win.n, b))


def _criterion_7(rng: random.Random) -> str:
    windows = []
    for _ in range(10):
        windows.append(("flat", standard_window(2, 6)))
    for _ in range(18):
        n = rng.choice((2, 3))
        rho = 6 if n == 2 else 5
        scales = tuple(Fraction(rng.randint(5, 20), 10) for _ in range(n))
        if all(c == 1 for c in scales):
            scales = (Fraction(3, 2),) + scales[1:]
        win = GridWindow(
            n, rho, FieldWeights(lambda x, i, c=scales: c[i]), mode=EXACT
        )
        windows.append(("anisotropic", win))
    # rejection sampler over confined perturbations; nonnegative scalar
    # curvature with trivial outer weights forces flatness, so accepted
    # nonflat candidates would contradict the rigidity theorem
    attempts = 0
    accepted_nonflat = 0
    while len(windows) < 50:
        chosen = None
        for _ in range(30):
            attempts += 1
            win, flat = _confined_table(rng, 6)
            if _min_scalar(win, 4) >= 0:
                chosen = win
                if not flat:
                    accepted_nonflat += 1
                break
        windows.append(("rejected", chosen or standard_window(2, 6)))

    rigid_checked = 0
    for kind, win in windows:
        b = win.rho - 2
        _require(
            _min_scalar(win, b) >= 0,
            f"{kind} window lost R >= 0 on Q_{b}",
        )
        sums = cube_curvature_sums(win, b)
        for a, bb in zip(sums, sums[1:]):
            _require(bb >= a, f"{kind} window: partial sums decrease")
        for r in range(b + 1):
            s = shell_sums(win, r)
            _require(
                sums[r] == s.inner_sum - s.far_sum,
                f"{kind} window: partial sum at r={r} does not telescope",
            )
        # rigidity branch: trivial outer weights and zero mass force w = 1
        trivial_outer = all(
            win.weight(x, i) == 1
            for x in _cube(win.n, win.rho)
            for i in range(win.n)
            if x[i] < win.rho and max(abs(c) for c in x) >= 3
        )
        if trivial_outer and mass_gap(win, b) == 0:
            for x in _cube(win.n, win.rho):
                for i in range(win.n):
                    if x[i] < win.rho:
                        _require(
                            win.weight(x, i) == 1,
                            f"{kind} window: M=0 and trivial outer but "
                            f"w != 1 at {(x, i)}",
                        )
            rigid_checked += 1

    # contrapositive at desk scale: every nonflat confined perturbation
    # has negative scalar curvature somewhere
    forced = 0
    while forced < 25:
        win, flat = _confined_table(rng, 6)
        if flat:
            continue
        forced += 1
        _require(
            _min_scalar(win, 4) < 0,
            "nonflat confined perturbation with R >= 0 would refute rigidity",
        )
    return (
        f"50 windows monotone and telescoping; rigidity branch on "
        f"{rigid_checked}; sampler accepted {accepted_nonflat} nonflat in "
        f"{attempts} tries; 25 nonflat perturbations all dip below 0"
    )


# -- criterion 8 -------------------------------------------------------------


def _random_torus_weights(rng: random.Random, t) -> dict:
    weights = {}
    seen = set()
    for rep in t.classes:
        for i in range(t.spec.n):
            v = t.neighbor(rep, i, 1)
            key = (rep, v) if rep <= v else (v, rep)
            if key not in seen:
                seen.add(key)
                weights[(rep, i)] = Fraction(rng.randint(5, 20), 10)
    return weights


def _criterion_8(rng: random.Random) -> str:
    eye = ((1, 0), (0, 1))

    # k=5 is excluded for cause: the wrap shortens a distance-3 pair in
    # every edge neighbourhood, the closed form no longer applies, and
    # even the unit-weight torus has kappa = 1 on all edges (total +100).
    # The theorem needs the edge-ball gate; k >= 6 is the identity
    # threshold for it (k >= 8 for the full radius-2 ball gate).
    small = build_torus(TorusSpec(eye, 5))
    _require(not closed_form_distance_condition(small).ok, "k=5 should fail the gate")
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        kappas = {
            torus_kappa(small, (rep, small.neighbor(rep, i, 1)))
            for rep in small.classes
            for i in range(2)
        }
    _require(kappas == {1}, f"unit 5-torus control: expected kappa 1, got {kappas}")

    tori = []
    for k in (6, 7, 8):
        flat = build_torus(TorusSpec(eye, k))
        _require(
            distance_condition(flat).ok == (k >= 8),
            f"identity k={k}: unexpected radius-2 gate verdict",
        )
        tori.append(flat)
        for _ in range(33):
            tori.append(
                build_torus(TorusSpec(eye, k), _random_torus_weights(rng, flat))
            )
    skew_flat = example_torus(k=3)
    _require(distance_condition(skew_flat).ok, "example torus should pass both gates")
    tori.append(skew_flat)
    for _ in range(2):
        tori.append(example_torus(k=3, weights=_random_torus_weights(rng, skew_flat)))

    nonneg = 0
    for idx, t in enumerate(tori):
        res = total_scalar_curvature(t)
        _require(res.gate_ok, f"torus {idx}: edge-ball gate unexpectedly failed")
        _require(res.total <= 0, f"torus {idx}: total {res.total} > 0")
        _require(res.decomposition_exact, f"torus {idx}: decomposition off")
        _require(
            res.total == 2 * sum(res.cycle_totals) / t.spec.q,
            f"torus {idx}: cycle recombination mismatch",
        )
        if min(res.scalar_by_class.values()) >= 0:
            nonneg += 1
            _require(
                all(v == 0 for v in res.scalar_by_class.values()),
                f"torus {idx}: R >= 0 everywhere but not identically 0",
            )
    _require(nonneg >= 4, "expected the flat tori to exercise the R>=0 branch")
    return (
        f"{len(tori)} tori (identity k=6,7,8 + det-7 example; unit k=5 pinned "
        f"as the gate-failing positive-curvature control): totals <= 0 and "
        f"decompositions exact, {nonneg} with R >= 0 all identically zero"
    )


# -- criterion 9 -------------------------------------------------------------


def _criterion_9() -> str:
    outcomes = []
    for n, r in ((2, 1), (2, 2), (3, 1)):
        relabel = lambda x: "core:" + ",".join(str(c) for c in x)
        afg = standard_afg(n, r, 4 * (r + 1), label=relabel)
        res = rigidity_check(afg)
        _require(
            res.is_standard_grid,
            f"relabeled standard grid n={n} r={r} judged nonstandard: "
            f"{res.failure.stage if res.failure else '?'}",
        )
        outcomes.append(f"standard n={n},r={r} true")

    res = rigidity_check(appendix1_core())
    _require(not res.is_standard_grid, "doubled-site core passed rigidity")
    _require(
        res.failure is not None and res.failure.stage == "multiplicity",
        f"doubled-site core failed at {res.failure.stage if res.failure else '?'}"
        " instead of multiplicity",
    )
    outcomes.append("doubled core false at multiplicity")

    perturbed = standard_afg(
        2, 1, 8, edge_overrides={((0, 0), (1, 0)): Fraction(3, 2)}
    )
    res = rigidity_check(perturbed)
    _require(not res.is_standard_grid, "perturbed-edge core passed rigidity")
    _require(
        res.failure is not None and res.failure.stage == "curvature",
        f"perturbed-edge core failed at "
        f"{res.failure.stage if res.failure else '?'} instead of curvature",
    )
    outcomes.append("perturbed edge false at curvature")
    return "; ".join(outcomes)


# -- criterion 10 ------------------------------------------------------------


def _criterion_10(rng: random.Random) -> str:
    def window_sample(weighted: str):
        n = 2
        rho = rng.randint(3, 5)
        if weighted == "anisotropic":
            scales = tuple(Fraction(rng.randint(5, 20), 10) for _ in range(n))
            win = GridWindow(
                n, rho, FieldWeights(lambda x, i, c=scales: c[i]), mode=EXACT
            )
        else:
            win = standard_window(n, rho)
        g = win.to_graph()
        axis = rng.randint(0, n - 1)
        level = rng.randint(-(rho - 2), rho - 2)
        x_side = {v for v in _cube(n, rho) if v[axis] < level}
        k_set = {v for v in _cube(n, rho) if v[axis] == level}
        y_side = {v for v in _cube(n, rho) if v[axis] > level}
        interior = {v for v in _cube(n, rho - 1)}
        return g, x_side, y_side, k_set, interior

    def path_sample():
        length = rng.randint(9, 15)
        weights = [Fraction(rng.randint(5, 20), 10) for _ in range(length - 1)]
        cut = rng.randint(2, length - 3)
        # A one-vertex separator extends to a cone, which is harmonic at
        # the cut iff the flanking weights agree; keeping them distinct
        # leaves the truncation artifacts to the crafted samples.
        while weights[cut] == weights[cut - 1]:
            weights[cut] = Fraction(rng.randint(5, 20), 10)
        g = WeightedGraph(
            [(i, i + 1, w) for i, w in enumerate(weights)], mode=EXACT
        )
        x_side = set(range(cut))
        k_set = {cut}
        y_side = set(range(cut + 1, length))
        interior = set(range(1, length - 1))
        return g, x_side, y_side, k_set, interior

    crafted = 0
    artifact_cases = 0
    harmonic_cases = 0
    total = 100
    for idx in range(total):
        if idx < 3:
            # crafted harmonic slab data: constant on the separator
            g, x_side, y_side, k_set, interior = window_sample("unit")
            f = {v: idx - 1 for v in k_set}
            crafted += 1
        elif idx % 3 == 0:
            g, x_side, y_side, k_set, interior = path_sample()
            f = None
        else:
            g, x_side, y_side, k_set, interior = window_sample(
                "anisotropic" if idx % 2 else "unit"
            )
            f = None
        if f is None:
            # largest 1-Lipschitz minorant of integer anchors: always
            # edge-feasible boundary data, whatever the anchors.  On a
            # slab separator the extension is harmonic there iff the
            # data is constant, so constant draws are rerolled; constant
            # data stays the crafted samples' job.
            dists = {w: bfs_distances(g, w) for w in k_set}
            while True:
                anchors = {v: rng.randint(-3, 3) for v in k_set}
                f = {
                    v: min(anchors[w] + dists[w][v] for w in k_set)
                    for v in k_set
                }
                if len(k_set) == 1 or len(set(f.values())) > 1:
                    break
        part = make_partition(g, x_side, y_side, k_set)
        ext = extremal_extension(g, part, f)
        check = is_lipschitz(g, ext)
        _require(check.ok, f"sample {idx}: extension not 1-Lipschitz")
        for v in k_set:
            _require(ext[v] == f[v], f"sample {idx}: extension moved f({v})")
        report = harmonicity_propagation_check(g, part, f, interior=interior)
        if idx < 3:
            _require(
                report.harmonic_on_separator and bool(report.artifact_violations),
                f"crafted sample {idx}: expected a counted truncation artifact",
            )
        if report.harmonic_on_separator:
            harmonic_cases += 1
            _require(
                report.propagates is True,
                f"sample {idx}: harmonic on separator but interior "
                f"violations {report.interior_violations[:3]}",
            )
            if report.artifact_violations:
                artifact_cases += 1
    _require(
        artifact_cases < 0.05 * total,
        f"{artifact_cases} truncation-artifact cases exceed the 5% budget",
    )
    _require(harmonic_cases >= crafted, "crafted harmonic samples missing")
    return (
        f"{total} triples: Lipschitz + restriction everywhere; "
        f"{harmonic_cases} harmonic cases all propagate; "
        f"{artifact_cases} artifact cases (< 5%)"
    )


# -- registry ----------------------------------------------------------------


@dataclass(frozen=True)
class _Spec:
    number: int
    title: str
    budget: Optional[float]
    run: Callable[..., str]
    seeded: bool


_SPECS = {
    s.number: s
    for s in (
        _Spec(1, "flat windows: exact zero curvature", 10.0, _criterion_1, False),
        _Spec(2, "closed form equals enumeration on random windows", 120.0, _criterion_2, True),
        _Spec(3, "cube/ring weight identity", None, _criterion_3, True),
        _Spec(4, "counterexample instances: pinned curvature", None, _criterion_4, False),
        _Spec(5, "radial field mass recovery (3-d)", 60.0, _criterion_5, True),
        _Spec(6, "log model gap formula and mass (2-d)", None, _criterion_6, False),
        _Spec(7, "monotone partial sums and flat rigidity", None, _criterion_7, True),
        _Spec(8, "torus total curvature theorem", 120.0, _criterion_8, True),
        _Spec(9, "rigidity pipeline verdicts", 120.0, _criterion_9, False),
        _Spec(10, "extremal extension property suite", None, _criterion_10, True),
    )
}

CRITERIA = tuple(sorted(_SPECS))


def run_criterion(number: int) -> CriterionResult:
    try:
        spec = _SPECS[number]
    except KeyError:
        raise GridmassError(f"no criterion {number}; have {CRITERIA}") from None
    start = time.perf_counter()
    try:
        if spec.seeded:
            details = spec.run(random.Random(SEED + number))
        else:
            details = spec.run()
        passed = True
    except CheckFailure as exc:
        details, passed = str(exc), False
    except GridmassError as exc:
        details, passed = f"error: {exc}", False
    elapsed = time.perf_counter() - start
    if passed and spec.budget is not None and elapsed > spec.budget:
        passed = False
        details = f"over budget: {elapsed:.1f}s > {spec.budget:.0f}s ({details})"
    return CriterionResult(number, spec.title, passed, details, elapsed, spec.budget)


def run_all(
    numbers: Optional[Iterable[int]] = None,
    progress: Optional[Callable[[str], None]] = None,
) -> list:
    results = []
    for number in numbers if numbers is not None else CRITERIA:
        res = run_criterion(number)
        if progress is not None:
            progress(res.line())
        results.append(res)
    return results

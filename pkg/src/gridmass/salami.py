"""Harmonic coordinates and grid rigidity for flat-outside graphs.

A *salami partition* slices a graph into two sides ``X`` and ``Y``
separated by a finite set ``K``: every path from one side to the other
passes through ``K``.  Extending a 1-Lipschitz function from ``K`` by
the extremal formulas

    ``Sf(v) = max_w (f(w) - d(v, w))``   on ``X``,
    ``Sf(v) = min_w (f(w) + d(v, w))``   on ``Y``,

yields the unique extremal 1-Lipschitz extension, and on nonnegatively
curved graphs harmonicity of ``Sf`` on ``K`` propagates to the whole
graph.  Slicing a flat-outside graph along coordinate slabs therefore
produces harmonic coordinate functions; this module constructs them and
uses them to decide whether a finite core glued into a flat grid window
is, up to relabeling, a piece of the standard grid.

The main objects are

* :class:`SalamiPartition` and :func:`extremal_extension`, the extension
  machinery on arbitrary weighted graphs;
* :func:`harmonicity_propagation_check`, which tests the propagation
  property on a concrete (truncated) instance and flags violations in
  the boundary layer as truncation artifacts;
* :class:`AsymptoticallyFlatGraph`, a finite core wired to a flat grid
  window along one shell;
* :func:`build_coordinates`, :func:`diagonal_edge_report`,
  :func:`multiplicity_and_cross_check`, the three diagnostic stages on
  an asymptotically flat graph; and
* :func:`rigidity_check`, which runs the stages while shrinking the
  core one shell at a time and reports, stage by stage, whether the
  graph is the standard grid in disguise.

Truncation caveat: all distances here are hop distances of the finite
window, so every guarantee that holds on the infinite object is checked
honestly on the finite one and failures near the window edge are
reported as artifacts rather than silently ignored.
"""

from __future__ import annotations

import heapq
import itertools
import json
from dataclasses import dataclass
from typing import Callable, Iterable, Mapping, Optional

from .errors import GridmassError, InputError, VertexNotFoundError
from .graph import (
    PotentialFunction,
    Vertex,
    WeightedGraph,
    _value_getter,
    bfs_multi_source,
    is_lipschitz,
    laplacian,
    vertex_key,
)
from .numeric import (
    EXACT,
    FLOAT,
    NumericMode,
    Weight,
    coerce_weight,
    format_weight,
    parse_weight,
)
from .ollivier import edge_curvature


# ---------------------------------------------------------------------------
# Salami partitions and extremal Lipschitz extensions


@dataclass(frozen=True)
class SalamiPartition:
    """Two sides and a finite separating set, covering all vertices.

    Use :func:`make_partition` to build a validated instance; the raw
    constructor trusts its input.
    """

    x_side: frozenset
    y_side: frozenset
    separator: frozenset

    def side_of(self, v: Vertex) -> str:
        if v in self.separator:
            return "K"
        if v in self.x_side:
            return "X"
        if v in self.y_side:
            return "Y"
        raise VertexNotFoundError(f"{v!r} not covered by the partition")


def make_partition(g: WeightedGraph, x_side, y_side, separator) -> SalamiPartition:
    """Validated salami partition of ``g``'s vertex set.

    Checks that the three sets are disjoint, cover the graph, the two
    sides are nonempty, and no edge joins ``X`` to ``Y``.
    """
    x = frozenset(x_side)
    y = frozenset(y_side)
    k = frozenset(separator)
    for v in itertools.chain(x, y, k):
        g._require(v)
    if x & y or x & k or y & k:
        raise InputError("partition classes overlap")
    if len(x) + len(y) + len(k) != len(g.vertices):
        missing = set(g.vertices) - x - y - k
        raise InputError(f"partition misses vertices {sorted(missing, key=vertex_key)!r}")
    if not x or not y:
        raise InputError("both sides of a salami partition must be nonempty")
    for u in x:
        for v in g.neighbors(u):
            if v in y:
                raise InputError(f"edge {{{u!r}, {v!r}}} joins the two sides")
    return SalamiPartition(x, y, k)


def _offset_bfs(g: WeightedGraph, seeds: Mapping[Vertex, Weight]) -> dict:
    """``min_w (seed(w) + d(v, w))`` for every vertex ``v``.

    Unit edge lengths with arbitrary start offsets; a small Dijkstra
    rather than a plain BFS because the offsets need not be equal.
    """
    if not seeds:
        raise InputError("empty seed set")
    best: dict = {}
    counter = itertools.count()
    heap = []
    for w, off in seeds.items():
        g._require(w)
        heapq.heappush(heap, (off, next(counter), w))
    while heap:
        val, _, v = heapq.heappop(heap)
        if v in best:
            continue
        best[v] = val
        for u in g.neighbors(v):
            if u not in best:
                heapq.heappush(heap, (val + 1, next(counter), u))
    return best


def extremal_extension(g: WeightedGraph, partition: SalamiPartition, f) -> PotentialFunction:
    """Extremal 1-Lipschitz extension of ``f`` across a salami partition.

    ``f`` (mapping, callable, or :class:`PotentialFunction`) must be
    defined on the separator and 1-Lipschitz there with respect to the
    full-graph distance; otherwise :class:`InputError` is raised.  The
    result agrees with ``f`` on the separator, takes the maximal
    admissible values on ``X`` and the minimal ones on ``Y``, and is
    1-Lipschitz on the whole graph (checked edge by edge, which for
    hop distances is equivalent to the pairwise condition).
    """
    k = sorted(partition.separator, key=vertex_key)
    if not k:
        raise InputError("extension needs a nonempty separator")
    get = _value_getter(f)
    base = {w: get(w) for w in k}
    lip = is_lipschitz(g, base, subset=k)
    if not lip.ok:
        raise InputError(f"boundary data is not 1-Lipschitz: violation {lip.violation!r}")

    # sup_w (f(w) - d) = -min_w ((-f(w)) + d); both sides in two sweeps.
    from_above = _offset_bfs(g, {w: -base[w] for w in k})
    from_below = _offset_bfs(g, {w: base[w] for w in k})

    values = {}
    for v in partition.x_side:
        values[v] = -from_above[v]
    for v in partition.y_side:
        values[v] = from_below[v]
    values.update(base)

    for u, v, _ in g.edges():
        if abs(values[u] - values[v]) > 1 + (0 if g.mode.exact else g.mode.epsilon):
            raise GridmassError(
                f"extension failed to be 1-Lipschitz on edge {{{u!r}, {v!r}}}; "
                "the partition likely violates the no-crossing-edge invariant"
            )
    return PotentialFunction(values)


@dataclass(frozen=True)
class PropagationReport:
    """Outcome of a harmonicity propagation test.

    ``propagates`` is None when the boundary data was not harmonic on
    the separator to begin with, True when no interior vertex violates
    harmonicity, False otherwise.  Violations outside the declared
    interior are listed separately as truncation artifacts.
    """

    harmonic_on_separator: bool
    propagates: Optional[bool]
    interior_violations: tuple
    artifact_violations: tuple
    extension: PotentialFunction


def harmonicity_propagation_check(
    g: WeightedGraph,
    partition: SalamiPartition,
    f,
    interior: Optional[Iterable[Vertex]] = None,
) -> PropagationReport:
    """Extend ``f`` and test whether harmonicity on ``K`` propagates.

    On a genuine (unbounded, nonnegatively curved) instance, vanishing
    Laplacian of the extension on the separator forces it to vanish
    everywhere.  On a finite window the statement can only hold away
    from the cut, so ``interior`` names the vertices where propagation
    is asserted; violations elsewhere are reported as artifacts, not
    failures.  ``interior`` defaults to all vertices.
    """
    sf = extremal_extension(g, partition, f)
    inner = set(interior) if interior is not None else set(g.vertices)
    for v in inner:
        g._require(v)

    harmonic_on_k = True
    interior_bad = []
    artifact_bad = []
    zero = g.mode.zero()
    for v in g.vertices:
        gap = laplacian(g, sf, v)
        if g.mode.isclose(gap, zero):
            continue
        if v in partition.separator:
            harmonic_on_k = False
        elif v in inner:
            interior_bad.append((v, gap))
        else:
            artifact_bad.append((v, gap))

    propagates: Optional[bool]
    if not harmonic_on_k:
        propagates = None
    else:
        propagates = not interior_bad
    return PropagationReport(
        harmonic_on_separator=harmonic_on_k,
        propagates=propagates,
        interior_violations=tuple(sorted(interior_bad, key=lambda t: vertex_key(t[0]))),
        artifact_violations=tuple(sorted(artifact_bad, key=lambda t: vertex_key(t[0]))),
        extension=sf,
    )


# ---------------------------------------------------------------------------
# Asymptotically flat graphs: finite core glued to a flat grid window


def _norm_inf(x: tuple) -> int:
    return max(abs(c) for c in x)


def _is_coord(v, n: int) -> bool:
    return (
        isinstance(v, tuple)
        and len(v) == n
        and all(isinstance(c, int) and not isinstance(c, bool) for c in v)
    )


class AsymptoticallyFlatGraph:
    """A finite core wired into a flat grid window along one shell.

    The vertex set is the core plus the grid coordinates ``x`` with
    ``r < max|x_i| <= rho``; the outer part carries the full lattice
    edge set with weight 1 unless ``outer_weights`` overrides some of
    it.  Interface edges join core vertices to coordinates on the shell
    ``max|x_i| = r + 1`` only; an edge from the core deeper into the
    grid would contradict flatness outside a compact set and is
    rejected.  ``rho >= 4 (r + 1)`` so that the coordinate construction
    has room to work with.

    Parameters
    ----------
    n, r, rho : int
        Dimension, core radius, window radius.
    core_edges : iterable of ``(u, v, w)`` or mapping ``{(u, v): w}``
        Edges among core vertices.  Ids are arbitrary hashables; ids
        that collide with outer coordinate tuples are rejected.
    interface : iterable
        ``(core_vertex, coord)`` or ``(core_vertex, coord, w)`` entries;
        the weight defaults to 1.
    core_vertices : iterable, optional
        Extra core vertices not mentioned by any core edge.
    core_vertex_weights : mapping, optional
        Positive vertex weights on the core; elsewhere weight 1.
    outer_weights : mapping, optional
        ``{(x, axis): w}`` overrides for outer edges, keyed by the
        lexicographically smaller endpoint.  Absent keys default to 1.
    mode : NumericMode
    """

    __slots__ = (
        "n",
        "r",
        "rho",
        "mode",
        "core_vertices",
        "core_edges",
        "core_vertex_weights",
        "interface",
        "outer_weights",
        "_graph",
    )

    def __init__(
        self,
        n: int,
        r: int,
        rho: int,
        core_edges,
        interface,
        core_vertices: Optional[Iterable[Vertex]] = None,
        core_vertex_weights: Optional[Mapping[Vertex, Weight]] = None,
        outer_weights: Optional[Mapping] = None,
        mode: NumericMode = EXACT,
    ):
        if not isinstance(n, int) or n < 1:
            raise InputError(f"dimension must be a positive integer, got {n!r}")
        if not isinstance(r, int) or r < 0:
            raise InputError(f"core radius must be a nonnegative integer, got {r!r}")
        if not isinstance(rho, int) or rho < 4 * (r + 1):
            raise InputError(
                f"window radius {rho!r} too small; need rho >= 4 (r + 1) = {4 * (r + 1)}"
            )
        self.n = n
        self.r = r
        self.rho = rho
        self.mode = mode

        if isinstance(core_edges, Mapping):
            triples = [(u, v, w) for (u, v), w in core_edges.items()]
        else:
            triples = [(u, v, w) for (u, v, w) in core_edges]
        core: set = set()
        for u, v, w in triples:
            core.add(u)
            core.add(v)
        if core_vertices is not None:
            core.update(core_vertices)
        if not core:
            raise InputError("the core must contain at least one vertex")
        for v in core:
            if _is_coord(v, n) and _norm_inf(v) > r:
                raise InputError(f"core id {v!r} collides with an outer grid coordinate")
        self.core_vertices = frozenset(core)
        self.core_edges = tuple(
            (u, v, coerce_weight(w, mode)) for u, v, w in triples
        )

        vw = {}
        for v, m in (core_vertex_weights or {}).items():
            if v not in core:
                raise InputError(f"vertex weight given for unknown core vertex {v!r}")
            vw[v] = coerce_weight(m, mode)
        self.core_vertex_weights = vw

        iface = []
        seen = set()
        for entry in interface:
            if len(entry) == 2:
                u, coord = entry
                w = 1
            elif len(entry) == 3:
                u, coord, w = entry
            else:
                raise InputError(f"bad interface entry {entry!r}")
            if u not in core:
                raise InputError(f"interface names unknown core vertex {u!r}")
            coord = tuple(coord)
            if not _is_coord(coord, n) or _norm_inf(coord) != r + 1:
                raise InputError(
                    f"interface endpoint {coord!r} must lie on the shell max|x_i| = {r + 1}"
                )
            if (u, coord) in seen:
                raise InputError(f"duplicate interface edge ({u!r}, {coord!r})")
            seen.add((u, coord))
            iface.append((u, coord, coerce_weight(w, mode)))
        if not iface:
            raise InputError("the interface must contain at least one edge")
        self.interface = tuple(iface)

        outer = {}
        for key, w in (outer_weights or {}).items():
            x, axis = key
            x = tuple(x)
            if not _is_coord(x, n) or not (0 <= axis < n):
                raise InputError(f"bad outer edge key {key!r}")
            y = x[:axis] + (x[axis] + 1,) + x[axis + 1 :]
            if not self.is_outer(x) or not self.is_outer(y):
                raise InputError(f"outer edge key {key!r} leaves the outer region")
            outer[(x, axis)] = coerce_weight(w, mode)
        self.outer_weights = outer

        self._graph = self._assemble()

    # -- region predicates ---------------------------------------------------

    def is_outer(self, v) -> bool:
        """True for grid coordinates with ``r < max|x_i| <= rho``."""
        return _is_coord(v, self.n) and self.r < _norm_inf(v) <= self.rho

    def shell(self, s: int) -> tuple:
        """All outer coordinates with ``max|x_i| = s``, sorted."""
        if not (self.r < s <= self.rho):
            raise InputError(f"shell {s} is not part of the outer region")
        out = [
            x
            for x in itertools.product(range(-s, s + 1), repeat=self.n)
            if _norm_inf(x) == s
        ]
        return tuple(sorted(out))

    def coordinates_of(self, v) -> tuple:
        """The grid label of an outer vertex (identity on coordinates)."""
        if not self.is_outer(v):
            raise VertexNotFoundError(f"{v!r} is not an outer vertex")
        return v

    def core_closure(self) -> tuple:
        """Core vertices plus the outer shell vertices they touch."""
        touched = {coord for _, coord, _ in self.interface}
        return tuple(
            sorted(self.core_vertices, key=vertex_key) + sorted(touched)
        )

    @property
    def graph(self) -> WeightedGraph:
        return self._graph

    def _assemble(self) -> WeightedGraph:
        edges = list(self.core_edges)
        for u, coord, w in self.interface:
            edges.append((u, coord, w))
        one = self.mode.one()
        for x in itertools.product(range(-self.rho, self.rho + 1), repeat=self.n):
            if _norm_inf(x) <= self.r:
                continue
            for i in range(self.n):
                if x[i] >= self.rho:
                    continue
                y = x[:i] + (x[i] + 1,) + x[i + 1 :]
                if _norm_inf(y) <= self.r:
                    continue
                edges.append((x, y, self.outer_weights.get((x, i), one)))
        return WeightedGraph(
            edges, vertex_weights=self.core_vertex_weights or None, mode=self.mode
        )


def standard_afg(
    n: int,
    r: int,
    rho: int,
    label: Optional[Callable] = None,
    edge_overrides: Optional[Mapping] = None,
    mode: NumericMode = EXACT,
) -> AsymptoticallyFlatGraph:
    """The grid window itself, packaged as a core plus outer region.

    The core is the cube ``max|x_i| <= r`` with its grid edges, relabeled
    through ``label`` (default: keep coordinate tuples).  A relabeled
    instance is the canonical positive test for :func:`rigidity_check`.
    ``edge_overrides`` maps core or interface edges, keyed by coordinate
    pairs ``(x, y)`` in either order, to replacement weights.
    """
    if label is None:
        label = lambda x: x
    overrides = {}
    for (x, y), w in (edge_overrides or {}).items():
        overrides[frozenset((tuple(x), tuple(y)))] = w

    def weight_of(x, y):
        return overrides.get(frozenset((x, y)), 1)

    core_edges = []
    interface = []
    core_vs = []
    for x in itertools.product(range(-r, r + 1), repeat=n):
        core_vs.append(label(x))
        for i in range(n):
            y = x[:i] + (x[i] + 1,) + x[i + 1 :]
            if _norm_inf(y) <= r:
                core_edges.append((label(x), label(y), weight_of(x, y)))
            elif _norm_inf(y) == r + 1:
                interface.append((label(x), y, weight_of(x, y)))
            # negative-direction interface edges, base outside the core
            z = x[:i] + (x[i] - 1,) + x[i + 1 :]
            if _norm_inf(z) == r + 1:
                interface.append((label(x), z, weight_of(x, z)))
    return AsymptoticallyFlatGraph(
        n,
        r,
        rho,
        core_edges,
        interface,
        core_vertices=core_vs,
        mode=mode,
    )


# ---------------------------------------------------------------------------
# Stage failures and reports


class StageFailure(GridmassError):
    """A diagnostic stage could not certify its claim.

    Carries the stage name, a short reason, and a witness object so the
    staged driver can turn it into a machine-readable report.
    """

    def __init__(self, stage: str, reason: str, witness=None):
        super().__init__(f"{stage}: {reason}" + (f" (witness {witness!r})" if witness is not None else ""))
        self.stage = stage
        self.reason = reason
        self.witness = witness


@dataclass(frozen=True)
class CoordinateMap:
    """Per-axis harmonic coordinates on an asymptotically flat graph.

    Each axis function is integer valued and 1-Lipschitz, agrees with
    the grid coordinate far out, and is harmonic on the core.
    """

    n: int
    axes: tuple  # one PotentialFunction per axis

    def label(self, v: Vertex) -> tuple:
        return tuple(int(h[v]) for h in self.axes)

    def __contains__(self, v: Vertex) -> bool:
        return all(v in h for h in self.axes)


def build_coordinates(afg: AsymptoticallyFlatGraph) -> CoordinateMap:
    """Harmonic coordinate functions from paired slab extensions.

    For each axis the constant functions ``+-R`` on the slabs
    ``{x_i = +-R}``, ``R = 4 (r + 1)``, are extended toward the core by
    the extremal formulas; the two one-sided extensions must coincide on
    the region ``|x_i| <= R`` (they always do on the standard grid, and
    any disagreement witnesses non-grid geometry).  Beyond the slabs the
    coordinate is pinned to the grid label.  The resulting axis function
    must map the core into ``[-r, r]`` and be harmonic on the core;
    violations raise :class:`StageFailure` with a witness vertex.
    """
    g = afg.graph
    n, r, rho = afg.n, afg.r, afg.rho
    bigr = 4 * (r + 1)
    core = sorted(afg.core_vertices, key=vertex_key)
    zero = g.mode.zero()

    axes = []
    for i in range(n):
        slab_plus = [v for v in g.vertices if afg.is_outer(v) and v[i] == bigr]
        slab_minus = [v for v in g.vertices if afg.is_outer(v) and v[i] == -bigr]
        d_plus = bfs_multi_source(g, slab_plus)
        d_minus = bfs_multi_source(g, slab_minus)

        values = {}
        for v in g.vertices:
            if afg.is_outer(v) and abs(v[i]) > bigr:
                values[v] = v[i]
                continue
            above = bigr - d_plus[v]
            below = -bigr + d_minus[v]
            if above != below:
                raise StageFailure(
                    "coordinates",
                    f"one-sided extensions along axis {i} disagree",
                    (i, v, above, below),
                )
            values[v] = above

        for u, v, _ in g.edges():
            if abs(values[u] - values[v]) > 1:
                raise StageFailure(
                    "coordinates",
                    f"axis-{i} coordinate is not 1-Lipschitz",
                    (i, u, v, values[u], values[v]),
                )
        for v in core:
            if abs(values[v]) > r:
                raise StageFailure(
                    "coordinates",
                    f"axis-{i} coordinate leaves [-{r}, {r}] on the core",
                    (i, v, values[v]),
                )
            gap = laplacian(g, values, v)
            if not g.mode.isclose(gap, zero):
                raise StageFailure(
                    "coordinates",
                    f"axis-{i} coordinate is not harmonic on the core",
                    (i, v, gap),
                )
        axes.append(PotentialFunction(values))
    return CoordinateMap(n=n, axes=tuple(axes))


@dataclass(frozen=True)
class DiagonalEdge:
    """A core-closure edge whose endpoint labels differ in l1 by > 1."""

    x: Vertex
    y: Vertex
    label_x: tuple
    label_y: tuple
    axes: tuple  # first two coordinates that differ
    sum_step: int  # (h_i + h_j)(y) - (h_i + h_j)(x); +-2 witnesses the violation
    rotated_mismatch: Optional[tuple]  # (vertex, extension value, h_i + h_j value)


@dataclass(frozen=True)
class DiagonalReport:
    ok: bool
    edges: tuple


def diagonal_edge_report(afg: AsymptoticallyFlatGraph, cm: CoordinateMap) -> DiagonalReport:
    """List label-diagonal edges in the core closure and corroborate.

    An edge whose endpoint labels differ by more than 1 in l1 cannot
    exist in a grid.  Each axis coordinate moves by at most 1 along an
    edge, so such an edge changes two axes at once, say i and j, and
    the rotated coordinate ``h_i +- h_j`` (sign chosen so both axes
    push the same way) jumps by 2 across it: a direct 1-Lipschitz
    violation for the extremal extension of the rotated grid label from
    the diagonal slab where it equals ``8 r + 2``.  The report records
    the jump and, as corroboration, a vertex where the actual slab
    extension disagrees with the rotated coordinate (the two must part
    ways somewhere, since the extension is 1-Lipschitz by construction).
    """
    g = afg.graph
    closure = set(afg.core_closure())
    found = []
    rotated_cache = {}
    bigr2 = 8 * afg.r + 2

    def rotated_extension(i: int, j: int, sign: int) -> dict:
        # one-sided extension of the rotated label x_i + sign * x_j from
        # the diagonal slab where it equals 8 r + 2
        key = (i, j, sign)
        if key in rotated_cache:
            return rotated_cache[key]
        slab = [
            v
            for v in g.vertices
            if afg.is_outer(v) and v[i] + sign * v[j] == bigr2
        ]
        if not slab:
            raise InputError(
                f"window too small for the rotated slab x_{i} {'+' if sign > 0 else '-'} x_{j} = {bigr2}"
            )
        dist = bfs_multi_source(g, slab)
        ext = {v: bigr2 - dist[v] for v in g.vertices}
        rotated_cache[key] = ext
        return ext

    for u, v, _ in g.edges():
        if u not in closure or v not in closure:
            continue
        lu = cm.label(u)
        lv = cm.label(v)
        gap = sum(abs(a - b) for a, b in zip(lu, lv))
        if gap <= 1:
            continue
        diff_axes = tuple(i for i in range(afg.n) if lu[i] != lv[i])[:2]
        i, j = diff_axes
        # rotate so both differing axes push the same way; the rotated
        # label then steps by 2 across this edge
        sign = 1 if (lv[i] - lu[i]) * (lv[j] - lu[j]) > 0 else -1
        step = (lv[i] + sign * lv[j]) - (lu[i] + sign * lu[j])
        ext = rotated_extension(i, j, sign)
        mismatch = None
        for w in sorted(cm.axes[0].domain, key=vertex_key):
            lw = cm.label(w)
            want = lw[i] + sign * lw[j]
            if ext[w] != want:
                mismatch = (w, ext[w], want)
                break
        found.append(
            DiagonalEdge(
                x=u,
                y=v,
                label_x=lu,
                label_y=lv,
                axes=diff_axes,
                sum_step=step,
                rotated_mismatch=mismatch,
            )
        )
    found.sort(key=lambda e: (vertex_key(e.x), vertex_key(e.y)))
    return DiagonalReport(ok=not found, edges=tuple(found))


@dataclass(frozen=True)
class StepSixRecord:
    """Curvature upper bound at a label shared by several core vertices.

    The test function is 0 on the shared fiber, 1 on the neighboring
    fibers except -1 behind along the chosen axis, 2 on the forward
    vertices past the chosen edge, and -1 on leftover neighbors of the
    base vertex.  When admissible (1-Lipschitz), the Laplacian
    difference upper-bounds the edge curvature; with unit vertex
    weights and a doubled label it comes out negative, which is the
    obstruction that rules multiplicities out of nonnegatively curved
    instances.  Vertex weights other than 1 can cancel the obstruction,
    and the report makes that visible.
    """

    label: tuple
    axis: int
    base: Vertex
    target: Vertex
    fiber: tuple
    bound: Weight
    admissible: bool
    kappa: Weight


@dataclass(frozen=True)
class MultiplicityReport:
    """Fiber sizes of the coordinate labeling over the core cube."""

    multiplicities: tuple  # ((label, count) pairs, sorted)
    all_single: bool
    covered: bool
    bijective: bool
    cross_failures: tuple  # (vertex, axis, sign) triples with no matching neighbor
    step_six: tuple
    ok: bool


def _fiber_test_bound(afg, cm, fiber, base, target, axis):
    g = afg.graph
    a = cm.label(base)
    domain = {base, target} | set(g.neighbors(base)) | set(g.neighbors(target))
    values = {}
    for w in domain:
        lab = cm.label(w)
        diff = tuple(l - c for l, c in zip(lab, a))
        total = sum(abs(d) for d in diff)
        if total == 0:
            values[w] = 0
        elif total == 1 and diff[axis] == 1:
            values[w] = 1
        elif total == 1 and diff[axis] == -1:
            values[w] = -1
        elif total == 1:
            values[w] = 1
    for w in g.neighbors(target):
        values.setdefault(w, 2)
    for w in g.neighbors(base):
        values.setdefault(w, -1)

    bound = laplacian(g, values, base) - laplacian(g, values, target)
    admissible = is_lipschitz(g, values, subset=domain).ok
    kappa = edge_curvature(g, base, target, want_witness=False).kappa
    return StepSixRecord(
        label=a,
        axis=axis,
        base=base,
        target=target,
        fiber=tuple(fiber),
        bound=bound,
        admissible=admissible,
        kappa=kappa,
    )


def multiplicity_and_cross_check(
    afg: AsymptoticallyFlatGraph, cm: CoordinateMap
) -> MultiplicityReport:
    """Count coordinate fibers over the core cube and probe doubled ones.

    Checks that every label in ``[-r, r]^n`` is hit, that each core
    vertex has, for every axis and sign, a neighbor one coordinate step
    away (the cross structure), and, for every label carried by more
    than one vertex, evaluates the explicit curvature upper bound of
    :class:`StepSixRecord` on an edge into the next fiber.
    """
    g = afg.graph
    n, r = afg.n, afg.r
    core = sorted(afg.core_vertices, key=vertex_key)

    fibers: dict = {}
    for v in core:
        fibers.setdefault(cm.label(v), []).append(v)
    cube = [p for p in itertools.product(range(-r, r + 1), repeat=n)]
    multiplicities = tuple((p, len(fibers.get(p, ()))) for p in sorted(cube))
    covered = all(count >= 1 for _, count in multiplicities)
    all_single = all(count <= 1 for _, count in multiplicities)
    bijective = covered and all_single and len(core) == len(cube)

    cross_failures = []
    for v in core:
        lab = cm.label(v)
        for i in range(n):
            for sign in (1, -1):
                want = lab[i] + sign
                if not any(cm.label(u)[i] == want for u in g.neighbors(v)):
                    cross_failures.append((v, i, sign))

    step_six = []
    for p, count in multiplicities:
        if count < 2:
            continue
        fiber = fibers[p]
        # prefer an edge whose far endpoint sees as much of the fiber as
        # possible; the bound sums over exactly those contacts
        best = None
        for axis in range(n):
            want = p[:axis] + (p[axis] + 1,) + p[axis + 1 :]
            for base in fiber:
                for tgt in g.neighbors(base):
                    if cm.label(tgt) != want:
                        continue
                    contacts = sum(1 for u in fiber if tgt in g.neighbors(u))
                    key = (-contacts, axis, vertex_key(base), vertex_key(tgt))
                    if best is None or key < best[0]:
                        best = (key, axis, base, tgt)
        if best is not None:
            _, axis, base, tgt = best
            step_six.append(_fiber_test_bound(afg, cm, fiber, base, tgt, axis))

    ok = covered and all_single and not cross_failures
    return MultiplicityReport(
        multiplicities=multiplicities,
        all_single=all_single,
        covered=covered,
        bijective=bijective,
        cross_failures=tuple(cross_failures),
        step_six=tuple(step_six),
        ok=ok,
    )


# ---------------------------------------------------------------------------
# Staged rigidity driver


@dataclass(frozen=True)
class StageReport:
    """One stage of the rigidity run, in machine-readable form."""

    stage: str
    level: Optional[int]
    passed: bool
    reason: Optional[str] = None
    witness: Optional[str] = None
    details: Optional[tuple] = None


@dataclass(frozen=True)
class RigidityResult:
    """Verdict of the staged rigidity run."""

    is_standard_grid: bool
    stages: tuple

    @property
    def failure(self) -> Optional[StageReport]:
        for s in self.stages:
            if not s.passed:
                return s
        return None


def _stage_json(stage: StageReport) -> dict:
    data = {"stage": stage.stage, "passed": stage.passed}
    if stage.level is not None:
        data["level"] = stage.level
    if stage.reason is not None:
        data["reason"] = stage.reason
    if stage.witness is not None:
        data["witness"] = stage.witness
    if stage.details is not None:
        data["details"] = list(stage.details)
    return data


def rigidity_result_to_json(result: RigidityResult) -> dict:
    return {
        "is_standard_grid": result.is_standard_grid,
        "stages": [_stage_json(s) for s in result.stages],
    }


def _weights_stage(afg: AsymptoticallyFlatGraph, cm: CoordinateMap):
    """Verify the outermost core shell is standard and peel it off.

    Assumes the earlier stages passed, so the labeling is bijective
    with no diagonal edges and full cross structure.  Ring vertices
    (label sup-norm equal to the core radius) must have unit vertex
    weight, unit-weight edges to the grid shell outside and to each
    other; their edges inward are carried into the returned shrunken
    instance as interface data and vetted one level later.  Returns
    ``(None, stage)`` once the whole core is verified.
    """
    g = afg.graph
    n, r, rho, mode = afg.n, afg.r, afg.rho, afg.mode
    one = mode.one()

    relabel = {v: cm.label(v) for v in afg.core_vertices}
    ring = {v for v, lab in relabel.items() if _norm_inf(lab) == r}
    inner = {v for v in afg.core_vertices if v not in ring}

    def fail(reason, witness):
        return None, StageReport(
            stage="weights",
            level=r,
            passed=False,
            reason=reason,
            witness=repr(witness),
        )

    for v in sorted(ring, key=vertex_key):
        m = g.vertex_weight(v)
        if not mode.isclose(m, one):
            return fail("ring vertex weight differs from 1", (v, format_weight(m)))
        for u in g.neighbors(v):
            w = g.weight(v, u)
            if u in inner:
                continue  # becomes interface data of the peeled instance
            if not mode.isclose(w, one):
                return fail("ring edge weight differs from 1", (v, u, format_weight(w)))

    if not inner:
        # level 0: the lone core vertex was the ring; everything checked
        return None, StageReport(stage="weights", level=r, passed=True)

    new_core_edges = []
    new_vw = {}
    new_interface = []
    for v in sorted(inner, key=vertex_key):
        lab = relabel[v]
        m = g.vertex_weight(v)
        if m != 1:
            new_vw[lab] = m
        for u in g.neighbors(v):
            if u in inner:
                if vertex_key(v) < vertex_key(u):
                    new_core_edges.append((lab, relabel[u], g.weight(v, u)))
            elif u in ring:
                new_interface.append((lab, relabel[u], g.weight(v, u)))
            else:
                return fail("inner core vertex touches the grid region", (v, u))

    peeled = AsymptoticallyFlatGraph(
        n,
        r - 1,
        rho,
        new_core_edges,
        new_interface,
        core_vertices=[relabel[v] for v in inner],
        core_vertex_weights=new_vw or None,
        mode=mode,
    )
    return peeled, StageReport(stage="weights", level=r, passed=True)


def _curvature_stage(afg: AsymptoticallyFlatGraph, budget: Optional[int]):
    """Brute-force nonnegativity of curvature near the core.

    Checks every edge with an endpoint within hop distance 2 of the
    core.  Outside that ball the instance is a unit-weight grid (the
    outer-weights stage has already said so), where the closed form
    gives curvature 0 for every interior edge, so no enumeration is
    needed there.
    """
    g = afg.graph
    dist = bfs_multi_source(g, afg.core_vertices)
    kwargs = {} if budget is None else {"budget": budget}
    for u, v, _ in g.edges():
        if min(dist[u], dist[v]) > 2:
            continue
        kappa = edge_curvature(g, u, v, want_witness=False, **kwargs).kappa
        bad = kappa < 0 if g.mode.exact else kappa < -g.mode.epsilon
        if bad:
            return StageReport(
                stage="curvature",
                level=afg.r,
                passed=False,
                reason="negative curvature near the core",
                witness=repr((u, v, format_weight(kappa))),
            )
    return StageReport(stage="curvature", level=afg.r, passed=True)


def rigidity_check(
    afg: AsymptoticallyFlatGraph,
    check_curvature: bool = True,
    budget: Optional[int] = None,
) -> RigidityResult:
    """Decide whether the instance is the standard grid in disguise.

    Stages, reported in order:

    * ``outer-weights``: every purely-outer edge has weight 1 (a
      weighted outer region can never be the standard grid, and the
      later stages rely on flatness there);
    * ``curvature`` (optional): brute-force curvature nonnegativity on
      every edge near the core, the hypothesis the remaining stages
      exploit;
    * per level ``r, r-1, ..., 0``: ``coordinates`` (harmonic
      coordinates exist and are grid-like), ``diagonals`` (no edge
      skips across the labeling), ``multiplicity`` (the labeling is a
      bijection with full cross structure), ``weights`` (the outermost
      core shell carries unit weights, after which it is absorbed into
      the grid region and the core shrinks by one).

    The result lists every stage that ran; the first failed stage, if
    any, explains the verdict.  ``is_standard_grid`` is True only when
    every stage passed, at which point every vertex has been relabeled
    and every weight checked.
    """
    stages = []
    one = afg.mode.one()
    for (x, axis), w in sorted(afg.outer_weights.items()):
        if not afg.mode.isclose(w, one):
            stages.append(
                StageReport(
                    stage="outer-weights",
                    level=afg.r,
                    passed=False,
                    reason="outer edge weight differs from 1",
                    witness=repr((x, axis, format_weight(w))),
                )
            )
            return RigidityResult(False, tuple(stages))
    stages.append(StageReport(stage="outer-weights", level=afg.r, passed=True))

    if check_curvature:
        report = _curvature_stage(afg, budget)
        stages.append(report)
        if not report.passed:
            return RigidityResult(False, tuple(stages))

    current: Optional[AsymptoticallyFlatGraph] = afg
    for level in range(afg.r, -1, -1):
        assert current is not None
        try:
            cm = build_coordinates(current)
        except StageFailure as exc:
            stages.append(
                StageReport(
                    stage=exc.stage,
                    level=level,
                    passed=False,
                    reason=exc.reason,
                    witness=repr(exc.witness),
                )
            )
            return RigidityResult(False, tuple(stages))
        stages.append(StageReport(stage="coordinates", level=level, passed=True))

        diag = diagonal_edge_report(current, cm)
        if not diag.ok:
            first = diag.edges[0]
            stages.append(
                StageReport(
                    stage="diagonals",
                    level=level,
                    passed=False,
                    reason="edge joins non-adjacent labels",
                    witness=repr((first.x, first.y, first.label_x, first.label_y)),
                    details=tuple(
                        repr((e.x, e.y, e.label_x, e.label_y)) for e in diag.edges
                    ),
                )
            )
            return RigidityResult(False, tuple(stages))
        stages.append(StageReport(stage="diagonals", level=level, passed=True))

        mult = multiplicity_and_cross_check(current, cm)
        if not mult.ok:
            if not mult.all_single:
                reason = "several core vertices share one label"
                witness = [p for p, c in mult.multiplicities if c > 1]
            elif not mult.covered:
                reason = "some labels in the core cube are never attained"
                witness = [p for p, c in mult.multiplicities if c == 0]
            else:
                reason = "missing cross neighbor"
                witness = mult.cross_failures[:4]
            stages.append(
                StageReport(
                    stage="multiplicity",
                    level=level,
                    passed=False,
                    reason=reason,
                    witness=repr(witness),
                    details=tuple(
                        repr((rec.label, format_weight(rec.bound), rec.admissible))
                        for rec in mult.step_six
                    ),
                )
            )
            return RigidityResult(False, tuple(stages))
        stages.append(StageReport(stage="multiplicity", level=level, passed=True))

        current, weight_stage = _weights_stage(current, cm)
        stages.append(weight_stage)
        if not weight_stage.passed:
            return RigidityResult(False, tuple(stages))

    return RigidityResult(True, tuple(stages))


# ---------------------------------------------------------------------------
# Serialization


def _vertex_to_json(v):
    if isinstance(v, tuple):
        return list(v)
    return v


def _vertex_from_json(v):
    if isinstance(v, list):
        return tuple(v)
    return v


def afg_to_json(afg: AsymptoticallyFlatGraph) -> dict:
    """Plain-dict form of an asymptotically flat graph."""
    core = {
        "vertices": [_vertex_to_json(v) for v in sorted(afg.core_vertices, key=vertex_key)],
        "edges": [
            {
                "u": _vertex_to_json(u),
                "v": _vertex_to_json(v),
                "w": format_weight(w),
            }
            for u, v, w in afg.core_edges
        ],
    }
    if afg.core_vertex_weights:
        core["vertex_weights"] = {
            json.dumps(_vertex_to_json(v)): format_weight(m)
            for v, m in sorted(afg.core_vertex_weights.items(), key=lambda kv: vertex_key(kv[0]))
        }
    data = {
        "n": afg.n,
        "r": afg.r,
        "rho": afg.rho,
        "core": core,
        "interface": [
            {
                "core_vertex": _vertex_to_json(u),
                "grid_vertex": list(coord),
                **({} if w == 1 else {"w": format_weight(w)}),
            }
            for u, coord, w in afg.interface
        ],
    }
    if afg.outer_weights:
        data["outer_weights"] = [
            {"x": list(x), "axis": axis, "w": format_weight(w)}
            for (x, axis), w in sorted(afg.outer_weights.items())
        ]
    return data


def afg_from_json(data: Mapping, mode: Optional[NumericMode] = None) -> AsymptoticallyFlatGraph:
    """Inverse of :func:`afg_to_json`; mode inferred from float weights."""
    try:
        n = data["n"]
        r = data["r"]
        rho = data["rho"]
        core = data["core"]
        interface = data["interface"]
    except (TypeError, KeyError) as exc:
        raise InputError(
            "flat-graph JSON needs 'n', 'r', 'rho', 'core', and 'interface'"
        ) from exc

    raw_outer = data.get("outer_weights", [])
    if mode is None:
        weights_seen = [e.get("w", 1) for e in core.get("edges", [])]
        weights_seen += list(core.get("vertex_weights", {}).values())
        weights_seen += [e.get("w", 1) for e in interface]
        weights_seen += [e.get("w", 1) for e in raw_outer]
        mode = FLOAT if any(isinstance(w, float) for w in weights_seen) else EXACT

    core_edges = []
    for e in core.get("edges", []):
        try:
            u = _vertex_from_json(e["u"])
            v = _vertex_from_json(e["v"])
        except (TypeError, KeyError) as exc:
            raise InputError(f"bad core edge record {e!r}") from exc
        core_edges.append((u, v, parse_weight(e.get("w", 1), mode)))
    core_vertices = [_vertex_from_json(v) for v in core.get("vertices", [])] or None
    vw = None
    if core.get("vertex_weights"):
        vw = {}
        for key, m in core["vertex_weights"].items():
            try:
                decoded = json.loads(key)
            except (ValueError, TypeError):
                decoded = key
            vid = _vertex_from_json(decoded) if isinstance(decoded, list) else decoded
            vw[vid] = parse_weight(m, mode)

    iface = []
    for e in interface:
        try:
            u = _vertex_from_json(e["core_vertex"])
            coord = tuple(e["grid_vertex"])
        except (TypeError, KeyError) as exc:
            raise InputError(f"bad interface record {e!r}") from exc
        iface.append((u, coord, parse_weight(e.get("w", 1), mode)))

    outer = {}
    for e in raw_outer:
        try:
            key = (tuple(e["x"]), e["axis"])
        except (TypeError, KeyError) as exc:
            raise InputError(f"bad outer weight record {e!r}") from exc
        outer[key] = parse_weight(e.get("w", 1), mode)

    return AsymptoticallyFlatGraph(
        n,
        r,
        rho,
        core_edges,
        iface,
        core_vertices=core_vertices,
        core_vertex_weights=vw,
        outer_weights=outer or None,
        mode=mode,
    )

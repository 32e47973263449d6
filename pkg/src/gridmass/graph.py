"""Weighted graphs with positive edge weights and optional vertex weights.

The graph model used everywhere in this package: finite, simple,
connected, undirected; every edge carries a positive weight and every
vertex a positive weight (default 1).  Distances are combinatorial
(hop counts) and ignore the weights entirely; weights enter only through
the Laplacian

    (Lf)(x) = (1/m(x)) * sum_{y ~ x} w(x,y) (f(y) - f(x)).

Vertex ids are opaque hashables (strings, ints, or tuples of ints).  All
iteration orders are canonical, so results are reproducible run to run.
"""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from typing import Hashable, Iterable, Mapping, NamedTuple, Optional, Sequence

from .errors import (
    DisconnectedGraphError,
    InputError,
    VertexNotFoundError,
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

__all__ = [
    "Vertex",
    "vertex_key",
    "WeightedGraph",
    "PotentialFunction",
    "Boundaries",
    "LipschitzReport",
    "distance",
    "ball",
    "boundaries",
    "laplacian",
    "gradient",
    "is_lipschitz",
    "graph_to_json",
    "graph_from_json",
]

Vertex = Hashable


def vertex_key(v: Vertex):
    """Total order on vertex ids of mixed types (type name, then value).

    Tuples are keyed element-wise so ids like ("core", 0) and (0, 1) can
    coexist without tripping int/str comparisons.
    """
    if isinstance(v, tuple):
        return (type(v).__name__, tuple(vertex_key(e) for e in v))
    return (type(v).__name__, v)


class WeightedGraph:
    """Immutable weighted graph.

    Parameters
    ----------
    edges : mapping or iterable
        Either ``{(u, v): w}`` or an iterable of ``(u, v, w)`` triples.
        Self-loops and duplicate edges with conflicting weights are
        rejected.
    vertices : iterable, optional
        Extra isolated-vertex check: every listed vertex must appear,
        and construction fails if the graph is disconnected anyway, so
        this is mostly for validating input files.
    vertex_weights : mapping, optional
        Positive vertex weights; missing vertices default to 1.
    mode : NumericMode
        Arithmetic mode; weights are coerced into it.

    Raises
    ------
    InputError
        Nonpositive weights, self-loops, conflicting duplicates.
    DisconnectedGraphError
        The resulting graph is not connected (or has no vertices).
    """

    __slots__ = ("_adj", "_vertices", "_vw", "mode")

    def __init__(
        self,
        edges,
        vertices: Optional[Iterable[Vertex]] = None,
        vertex_weights: Optional[Mapping[Vertex, Weight]] = None,
        mode: NumericMode = EXACT,
    ):
        if isinstance(edges, Mapping):
            triples = [(u, v, w) for (u, v), w in edges.items()]
        else:
            triples = [(u, v, w) for (u, v, w) in edges]

        adj: dict = {}
        for u, v, w in triples:
            if u == v:
                raise InputError(f"self-loop at {u!r}")
            w = coerce_weight(w, mode)
            if w <= 0:
                raise InputError(f"nonpositive weight {w} on edge {{{u!r}, {v!r}}}")
            prev = adj.get(u, {}).get(v)
            if prev is not None and prev != w:
                raise InputError(
                    f"conflicting weights {prev} and {w} on edge {{{u!r}, {v!r}}}"
                )
            adj.setdefault(u, {})[v] = w
            adj.setdefault(v, {})[u] = w

        if vertices is not None:
            declared = set(vertices)
            missing = {v for v in adj if v not in declared}
            if missing:
                raise InputError(f"edges mention undeclared vertices {missing!r}")
            isolated = declared - set(adj)
            if isolated:
                raise DisconnectedGraphError(
                    f"isolated vertices {sorted(isolated, key=vertex_key)!r}"
                )

        if not adj:
            raise DisconnectedGraphError("empty graph")

        self._vertices: tuple = tuple(sorted(adj, key=vertex_key))
        self._adj = {
            v: dict(sorted(adj[v].items(), key=lambda kv: vertex_key(kv[0])))
            for v in self._vertices
        }
        self.mode = mode

        vw: dict = {}
        if vertex_weights:
            for v, m in vertex_weights.items():
                if v not in self._adj:
                    raise VertexNotFoundError(f"vertex weight for unknown vertex {v!r}")
                m = coerce_weight(m, mode)
                if m <= 0:
                    raise InputError(f"nonpositive vertex weight {m} at {v!r}")
                vw[v] = m
        self._vw = vw

        # connectivity
        seen = {self._vertices[0]}
        queue = deque(seen)
        while queue:
            x = queue.popleft()
            for y in self._adj[x]:
                if y not in seen:
                    seen.add(y)
                    queue.append(y)
        if len(seen) != len(self._vertices):
            raise DisconnectedGraphError(
                f"graph has {len(self._vertices)} vertices but only "
                f"{len(seen)} reachable from {self._vertices[0]!r}"
            )

    # -- basic accessors -------------------------------------------------

    @property
    def vertices(self) -> tuple:
        return self._vertices

    def __len__(self) -> int:
        return len(self._vertices)

    def __contains__(self, v: Vertex) -> bool:
        return v in self._adj

    def neighbors(self, v: Vertex) -> tuple:
        self._require(v)
        return tuple(self._adj[v])

    def degree(self, v: Vertex) -> int:
        self._require(v)
        return len(self._adj[v])

    def has_edge(self, u: Vertex, v: Vertex) -> bool:
        return u in self._adj and v in self._adj[u]

    def weight(self, u: Vertex, v: Vertex) -> Weight:
        self._require(u)
        self._require(v)
        try:
            return self._adj[u][v]
        except KeyError:
            raise InputError(f"no edge {{{u!r}, {v!r}}}") from None

    def vertex_weight(self, v: Vertex) -> Weight:
        self._require(v)
        return self._vw.get(v, self.mode.one())

    @property
    def has_vertex_weights(self) -> bool:
        return bool(self._vw)

    def edges(self) -> list:
        """All ``(u, v, w)`` triples, once per edge, canonically ordered."""
        out = []
        for u in self._vertices:
            ku = vertex_key(u)
            for v, w in self._adj[u].items():
                if ku < vertex_key(v):
                    out.append((u, v, w))
        return out

    def edge_count(self) -> int:
        return sum(len(nbrs) for nbrs in self._adj.values()) // 2

    def _require(self, v: Vertex) -> None:
        if v not in self._adj:
            raise VertexNotFoundError(f"vertex {v!r} not in graph")

    # -- derived graphs ---------------------------------------------------

    def induced(self, vertices: Iterable[Vertex]) -> "WeightedGraph":
        """Induced subgraph on the given vertex set (must stay connected)."""
        keep = set(vertices)
        for v in keep:
            self._require(v)
        triples = [(u, v, w) for u, v, w in self.edges() if u in keep and v in keep]
        vw = {v: m for v, m in self._vw.items() if v in keep}
        return WeightedGraph(triples, vertex_weights=vw, mode=self.mode)

    def __repr__(self) -> str:
        return (
            f"WeightedGraph({len(self._vertices)} vertices, "
            f"{self.edge_count()} edges, "
            f"mode={'exact' if self.mode.exact else 'float'})"
        )


class PotentialFunction:
    """A function from an explicit vertex domain to numbers.

    Queries outside the domain raise :class:`VertexNotFoundError`; this
    is deliberate, since silent defaults would corrupt Laplacian and
    Lipschitz computations.
    """

    __slots__ = ("_values",)

    def __init__(self, values: Mapping[Vertex, Weight]):
        self._values = dict(values)

    @property
    def domain(self) -> frozenset:
        return frozenset(self._values)

    def __getitem__(self, v: Vertex) -> Weight:
        try:
            return self._values[v]
        except KeyError:
            raise VertexNotFoundError(f"{v!r} outside the potential's domain") from None

    def __contains__(self, v: Vertex) -> bool:
        return v in self._values

    def items(self):
        return sorted(self._values.items(), key=lambda kv: vertex_key(kv[0]))

    def __len__(self) -> int:
        return len(self._values)

    def __eq__(self, other) -> bool:
        if isinstance(other, PotentialFunction):
            return self._values == other._values
        return NotImplemented

    def __repr__(self) -> str:
        return f"PotentialFunction(on {len(self._values)} vertices)"


class Boundaries(NamedTuple):
    """Edge boundary, vertex boundary, and closure of a vertex set."""

    edge_boundary: tuple  # ((u, v) pairs, u inside, v outside)
    vertex_boundary: tuple  # vertices outside S adjacent to S
    closure: tuple  # S plus its vertex boundary


@dataclass(frozen=True)
class LipschitzReport:
    ok: bool
    violation: Optional[tuple] = None  # (u, v, |f(u)-f(v)|, d(u,v))


def bfs_distances(
    g: WeightedGraph, source: Vertex, max_depth: Optional[int] = None
) -> dict:
    """Hop distances from ``source`` to every vertex within ``max_depth``."""
    g._require(source)
    dist = {source: 0}
    queue = deque([source])
    while queue:
        x = queue.popleft()
        dx = dist[x]
        if max_depth is not None and dx >= max_depth:
            continue
        for y in g.neighbors(x):
            if y not in dist:
                dist[y] = dx + 1
                queue.append(y)
    return dist


def bfs_multi_source(g: WeightedGraph, sources: Iterable[Vertex]) -> dict:
    """Hop distances to the nearest of several sources."""
    dist = {}
    queue = deque()
    for s in sorted(set(sources), key=vertex_key):
        g._require(s)
        dist[s] = 0
        queue.append(s)
    if not dist:
        raise InputError("empty source set")
    while queue:
        x = queue.popleft()
        for y in g.neighbors(x):
            if y not in dist:
                dist[y] = dist[x] + 1
                queue.append(y)
    return dist


def distance(g: WeightedGraph, u: Vertex, v: Vertex) -> int:
    """Combinatorial (hop) distance between two vertices."""
    g._require(v)
    dist = bfs_distances(g, u)
    return dist[v]  # connected by construction


def ball(g: WeightedGraph, center: Vertex, radius: int) -> tuple:
    """Closed combinatorial ball, canonically sorted."""
    if radius < 0:
        raise InputError(f"negative radius {radius}")
    dist = bfs_distances(g, center, max_depth=radius)
    return tuple(sorted(dist, key=vertex_key))


def boundaries(g: WeightedGraph, subset: Iterable[Vertex]) -> Boundaries:
    """Edge boundary, vertex boundary, and closure of a vertex set."""
    inner = set(subset)
    for v in inner:
        g._require(v)
    eb = []
    vb = set()
    for u in sorted(inner, key=vertex_key):
        for v in g.neighbors(u):
            if v not in inner:
                eb.append((u, v))
                vb.add(v)
    vb_sorted = tuple(sorted(vb, key=vertex_key))
    closure = tuple(sorted(inner | vb, key=vertex_key))
    return Boundaries(tuple(eb), vb_sorted, closure)


def laplacian(g: WeightedGraph, f, x: Vertex) -> Weight:
    """Weighted graph Laplacian at one vertex.

    ``(Lf)(x) = (1/m(x)) * sum_{y ~ x} w(x,y) (f(y) - f(x))``.

    ``f`` may be a :class:`PotentialFunction`, a mapping, or a callable.
    All neighbors of ``x`` must be in its domain.
    """
    g._require(x)
    get = _value_getter(f)
    fx = get(x)
    acc = g.mode.zero()
    for y in g.neighbors(x):
        acc += g.weight(x, y) * (get(y) - fx)
    m = g.vertex_weight(x)
    return acc / m if m != 1 else acc


def gradient(g: WeightedGraph, f, x: Vertex, y: Vertex) -> Weight:
    """Normalized difference ``(f(x) - f(y)) / d(x, y)`` for distinct x, y."""
    if x == y:
        raise InputError("gradient needs two distinct vertices")
    get = _value_getter(f)
    return (get(x) - get(y)) / distance(g, x, y)


def is_lipschitz(
    g: WeightedGraph,
    f,
    k: int = 1,
    subset: Optional[Iterable[Vertex]] = None,
) -> LipschitzReport:
    """Check ``|f(u) - f(v)| <= k * d(u, v)`` over a vertex set.

    Distances are measured in the full graph; the subset only restricts
    which pairs are checked.  Returns the first violating pair in
    canonical order, if any.
    """
    verts = (
        tuple(sorted(set(subset), key=vertex_key))
        if subset is not None
        else g.vertices
    )
    for v in verts:
        g._require(v)
    get = _value_getter(f)
    for u in verts:
        dist = bfs_distances(g, u)
        fu = get(u)
        for v in verts:
            if vertex_key(v) <= vertex_key(u):
                continue
            gap = abs(fu - get(v))
            if gap > k * dist[v]:
                return LipschitzReport(False, (u, v, gap, dist[v]))
    return LipschitzReport(True)


def _value_getter(f):
    if isinstance(f, PotentialFunction):
        return f.__getitem__
    if isinstance(f, Mapping):
        def get(v):
            try:
                return f[v]
            except KeyError:
                raise VertexNotFoundError(f"{v!r} outside the function's domain") from None
        return get
    if callable(f):
        return f
    raise InputError(f"cannot evaluate {f!r} as a vertex function")


# -- JSON ------------------------------------------------------------------


def _id_to_json(v: Vertex):
    if isinstance(v, tuple):
        return list(v)
    if isinstance(v, (str, int)):
        return v
    raise InputError(f"vertex id {v!r} is not JSON-representable")


def _id_from_json(v) -> Vertex:
    if isinstance(v, list):
        return tuple(int(c) for c in v)
    if isinstance(v, (str, int)):
        return v
    raise InputError(f"bad vertex id {v!r} in graph JSON")


def _vw_key(v: Vertex) -> str:
    return v if isinstance(v, str) else json.dumps(_id_to_json(v))


def graph_to_json(g: WeightedGraph) -> dict:
    """Plain-dict form: vertices, edges with weights, vertex weights."""
    data = {
        "vertices": [_id_to_json(v) for v in g.vertices],
        "edges": [
            {"u": _id_to_json(u), "v": _id_to_json(v), "w": format_weight(w)}
            for u, v, w in g.edges()
        ],
    }
    if g.has_vertex_weights:
        vw = {}
        for v in g.vertices:
            m = g.vertex_weight(v)
            if m != 1:
                vw[_vw_key(v)] = format_weight(m)
        data["vertex_weights"] = vw
    return data


def graph_from_json(data: Mapping, mode: Optional[NumericMode] = None) -> WeightedGraph:
    """Inverse of :func:`graph_to_json`.

    If ``mode`` is omitted it is inferred: any float weight selects
    float mode, otherwise exact.
    """
    try:
        raw_edges = data["edges"]
        raw_vertices = data.get("vertices")
    except (TypeError, KeyError) as exc:
        raise InputError("graph JSON needs 'edges' (and usually 'vertices')") from exc

    raw_vw = data.get("vertex_weights", {})
    if mode is None:
        floaty = any(isinstance(e.get("w", 1), float) for e in raw_edges) or any(
            isinstance(w, float) for w in raw_vw.values()
        )
        mode = FLOAT if floaty else EXACT

    triples = []
    for e in raw_edges:
        try:
            u = _id_from_json(e["u"])
            v = _id_from_json(e["v"])
        except (TypeError, KeyError) as exc:
            raise InputError(f"bad edge record {e!r}") from exc
        triples.append((u, v, parse_weight(e.get("w", 1), mode)))

    vertices = None
    if raw_vertices is not None:
        vertices = [_id_from_json(v) for v in raw_vertices]

    vw = {}
    for key, m in raw_vw.items():
        try:
            decoded = json.loads(key)
        except (ValueError, TypeError):
            decoded = key
        vid = _id_from_json(decoded) if isinstance(decoded, list) else decoded
        vw[vid] = parse_weight(m, mode)

    return WeightedGraph(triples, vertices=vertices, vertex_weights=vw, mode=mode)

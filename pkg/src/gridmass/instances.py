"""Named example instances, ready to build or serialize.

Each entry in :data:`INSTANCES` produces one of the worked examples the
library's diagnostics are calibrated against:

``appendix1``
    Flat wrapped grid whose origin is split into two half-weight
    vertices sharing the origin's four spokes.  Nonnegatively curved
    everywhere (the split pair carries curvature 5) yet not a grid:
    the standard counterexample for rigidity without unit vertex
    weights.
``appendix2``
    Grid line wrapped into a cycle, with one edge replaced by a two-path
    diamond through half-weight edges; every edge has curvature 0.
``torus-example-4-1``
    Skew two-dimensional torus with generator matrix ((2, 1), (-1, 3)).
    The quotient at k = 1 is the 7-vertex circulant; the default k = 3
    is the smallest multiple where radius-2 balls embed, so the
    closed-form curvature machinery applies.
``schwarzschild``
    Radial shell-profile field v(s) = 1 + m / (s + 1) on a grid window,
    the discrete analogue of a point mass.
``log-model``
    Two-dimensional field with logarithmic decay, the borderline case
    whose mass is finite while the weights never settle to 1.

Builders return live objects; ``instance_json`` serializes them in the
same formats the command-line tools read.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Mapping, Optional

from .errors import InputError
from .graph import WeightedGraph, graph_to_json
from .grid import (
    GridWindow,
    log_model_field,
    schwarzschild_field,
    window_to_json,
)
from .numeric import EXACT
from .salami import AsymptoticallyFlatGraph, afg_to_json
from .torus import TorusGraph, TorusSpec, build_torus, torus_spec_to_json

HALF = Fraction(1, 2)
QUARTER = Fraction(1, 4)

EXAMPLE_TORUS_MATRIX = ((2, 1), (-1, 3))


def appendix1_graph(size: int = 8) -> WeightedGraph:
    """Flat torus with a doubled origin site.

    The plane vertex (0, 0) of a size x size wrapped grid is replaced by
    vertices ``a`` and ``b`` of vertex weight 1/2, each joined to the
    four former neighbors of the origin with edge weight 1/2; the pair
    itself is joined with weight 1/4.  All other edges have weight 1.

    Wrapping gives the finite graph the curvature profile of the
    infinite doubled-site plane: 5 on the pair edge and exactly 0
    everywhere else (brute-verified for size >= 6; an open window
    instead shows curvature 1 on its rim).
    """
    if size < 6:
        raise InputError("the doubled-site torus needs size >= 6 to stay flat")
    edges = []
    for x in range(size):
        for y in range(size):
            for dx, dy in ((1, 0), (0, 1)):
                u = (x, y)
                v = ((x + dx) % size, (y + dy) % size)
                if u == (0, 0) or v == (0, 0):
                    continue
                edges.append((u, v, Fraction(1)))
    for s in ("a", "b"):
        for z in ((1, 0), (size - 1, 0), (0, 1), (0, size - 1)):
            edges.append((s, z, HALF))
    edges.append(("a", "b", QUARTER))
    return WeightedGraph(
        edges, vertex_weights={"a": HALF, "b": HALF}, mode=EXACT
    )


def appendix1_core(rho: int = 4) -> AsymptoticallyFlatGraph:
    """The doubled origin packaged as a radius-0 core in a flat window."""
    iface = [
        (v, z, HALF)
        for v in ("a", "b")
        for z in ((1, 0), (-1, 0), (0, 1), (0, -1))
    ]
    return AsymptoticallyFlatGraph(
        2,
        0,
        rho,
        [("a", "b", QUARTER)],
        iface,
        core_vertex_weights={"a": HALF, "b": HALF},
    )


def appendix2_graph(length: int = 12) -> WeightedGraph:
    """Grid line with one edge opened into a half-weight diamond, wrapped
    into a cycle so the finite presentation has no endpoint artifacts.

    Cycle vertices ``0 .. length-1`` with unit edges, except the edge
    {0, 1} is replaced by the two-paths 0-t-1 and 0-b-1 with weight-1/2
    edges.  Every edge has curvature 0 once the effective girth reaches
    6, i.e. for length >= 5.  An open line would instead show curvature
    1 on its two endpoint edges, a truncation effect with no analogue
    in the infinite graph this models.
    """
    if length < 5:
        raise InputError("the doubled cycle needs length >= 5 to stay flat")
    edges = [(i, (i + 1) % length, Fraction(1)) for i in range(1, length)]
    for mid in ("t", "b"):
        edges.append((0, mid, HALF))
        edges.append((mid, 1, HALF))
    return WeightedGraph(edges, mode=EXACT)


def example_torus(k: int = 3, weights: Optional[Mapping] = None) -> TorusGraph:
    """The skew torus with generator matrix ((2, 1), (-1, 3))."""
    return build_torus(TorusSpec(EXAMPLE_TORUS_MATRIX, k), weights=weights)


def schwarzschild_window(n: int = 3, m=1, rho: int = 4) -> GridWindow:
    return schwarzschild_field(n, m, rho)


def log_model_window(m: float = 0.01, rho: int = 8) -> GridWindow:
    return log_model_field(m, rho)


@dataclass(frozen=True)
class InstanceSpec:
    """A named instance: what it is, how to build it, how to store it."""

    name: str
    kind: str  # graph | afg | torus | window
    description: str
    build: Callable
    serialize: Callable


INSTANCES = {
    spec.name: spec
    for spec in (
        InstanceSpec(
            name="appendix1",
            kind="graph",
            description=(
                "doubled origin site on a wrapped grid: vertex weights 1/2 "
                "on the pair, spoke weights 1/2, pair weight 1/4; curvature "
                "5 on the pair edge, 0 elsewhere"
            ),
            build=appendix1_graph,
            serialize=graph_to_json,
        ),
        InstanceSpec(
            name="appendix1-core",
            kind="afg",
            description=(
                "the doubled origin as a radius-0 core in a flat window; "
                "nonnegatively curved but fails the multiplicity stage"
            ),
            build=appendix1_core,
            serialize=afg_to_json,
        ),
        InstanceSpec(
            name="appendix2",
            kind="graph",
            description=(
                "cycle-doubled line: one edge opened into a half-weight "
                "diamond; every edge flat"
            ),
            build=appendix2_graph,
            serialize=graph_to_json,
        ),
        InstanceSpec(
            name="torus-example-4-1",
            kind="torus",
            description=(
                "skew torus ((2, 1), (-1, 3)); k = 3 is the smallest "
                "multiple whose quotient embeds radius-2 balls"
            ),
            build=example_torus,
            serialize=torus_spec_to_json,
        ),
        InstanceSpec(
            name="schwarzschild",
            kind="window",
            description="radial field v(s) = 1 + m / (s + 1), exact rationals",
            build=schwarzschild_window,
            serialize=window_to_json,
        ),
        InstanceSpec(
            name="log-model",
            kind="window",
            description="planar field with logarithmic decay, float weights",
            build=log_model_window,
            serialize=window_to_json,
        ),
    )
}


def instance_names() -> tuple:
    return tuple(sorted(INSTANCES))


def build_instance(name: str, **params):
    try:
        spec = INSTANCES[name]
    except KeyError:
        known = ", ".join(instance_names())
        raise InputError(f"unknown instance {name!r}; known: {known}") from None
    return spec.build(**params)


def instance_json(name: str, **params) -> dict:
    built = build_instance(name, **params)
    return INSTANCES[name].serialize(built)

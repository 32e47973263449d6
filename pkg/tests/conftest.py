"""Shared builders for the test suite."""

from __future__ import annotations

import itertools
import random
from fractions import Fraction

import pytest

from gridmass.graph import WeightedGraph
from gridmass.grid import GridWindow, TableWeights
from gridmass.numeric import EXACT, FLOAT


def random_window(rng: random.Random, n: int, rho: int, denom: int = 10) -> GridWindow:
    """Window with independent rational weights in [1/2, 2]."""
    table = {}
    for x in itertools.product(range(-rho, rho + 1), repeat=n):
        for i in range(n):
            if x[i] < rho:
                table[(x, i)] = Fraction(rng.randint(denom // 2, 2 * denom), denom)
    return GridWindow(n, rho, TableWeights(n, rho, table), mode=EXACT)


def flat_grid(n: int, rho: int, weight=1) -> WeightedGraph:
    """Unit-weight grid window: vertices with max-norm <= rho, axis edges."""
    edges = []
    for x in itertools.product(range(-rho, rho + 1), repeat=n):
        for i in range(n):
            if x[i] < rho:
                y = x[:i] + (x[i] + 1,) + x[i + 1:]
                edges.append((x, y, weight))
    return WeightedGraph(edges, mode=EXACT)


def path_graph(k: int, weight=1) -> WeightedGraph:
    return WeightedGraph([(i, i + 1, weight) for i in range(k - 1)], mode=EXACT)


def cycle_graph(k: int, weight=1) -> WeightedGraph:
    edges = [(i, (i + 1) % k, weight) for i in range(k)]
    return WeightedGraph(edges, mode=EXACT)


def circulant_graph(k: int, jumps, weights=None) -> WeightedGraph:
    """Cycle on Z_k with edges i ~ i+j for each jump j."""
    if weights is None:
        weights = {j: 1 for j in jumps}
    edges = []
    for i in range(k):
        for j in jumps:
            edges.append((i, (i + j) % k, weights[j]))
    return WeightedGraph(edges, mode=EXACT)


def complete_graph(k: int, weight=1) -> WeightedGraph:
    edges = [(i, j, weight) for i in range(k) for j in range(i + 1, k)]
    return WeightedGraph(edges, mode=EXACT)


def doubled_site_window(rho: int = 3) -> WeightedGraph:
    """Planar grid window with the origin split into two half-weight vertices.

    Vertices are those of the 2d window of radius rho, except the origin
    is replaced by 'a' and 'b'.  Both carry vertex weight 1/2 and connect
    to the four unit neighbors of the origin with edge weight 1/2; the
    pair {a, b} is joined with weight 1/4.  Every other vertex has weight
    1 and standard unit edges.
    """
    half = Fraction(1, 2)
    quarter = Fraction(1, 4)
    edges = []
    vw = {}
    origin_neighbors = [(1, 0), (-1, 0), (0, 1), (0, -1)]
    for x in itertools.product(range(-rho, rho + 1), repeat=2):
        for i in range(2):
            if x[i] < rho:
                y = x[:i] + (x[i] + 1,) + x[i + 1:]
                if x == (0, 0) or y == (0, 0):
                    continue
                edges.append((x, y, Fraction(1)))
    for v in ("a", "b"):
        vw[v] = half
        for z in origin_neighbors:
            edges.append((v, z, half))
    edges.append(("a", "b", quarter))
    g = WeightedGraph(edges, vertex_weights=vw, mode=EXACT)
    return g


def diamond_line(half_len: int = 4) -> WeightedGraph:
    """Integer line with one edge replaced by a two-path diamond.

    Hubs 0 and 1 are joined through 't' and 'b' with weight-1/2 edges;
    the remaining line edges have weight 1.  Vertex weights are all 1.
    """
    half = Fraction(1, 2)
    edges = []
    for i in range(-half_len, half_len):
        if i == 0:
            continue
        edges.append((i, i + 1, Fraction(1)))
    for mid in ("t", "b"):
        edges.append((0, mid, half))
        edges.append((mid, 1, half))
    return WeightedGraph(edges, mode=EXACT)


@pytest.fixture
def rng():
    return random.Random(20260819)


@pytest.fixture
def exact():
    return EXACT


@pytest.fixture
def floating():
    return FLOAT

"""Independent reference implementations and random generators for tests."""

from __future__ import annotations

import itertools
import math

import numpy as np

from phlink.graph import Graph, from_edges


def random_graph(rng, n, p=0.3, directed=False, weighted=False):
    edges = []
    for i in range(n):
        for j in range(n):
            if i == j or (not directed and j < i):
                continue
            if rng.random() < p:
                w = float(rng.integers(1, 6)) if weighted else 1.0
                edges.append((i, j, w))
    return from_edges([f"v{i}" for i in range(n)], edges, directed)


def float_weighted_graph(rng, n, p=0.3, directed=False):
    edges = [
        (i, j, float(rng.uniform(0.1, 3.0)))
        for i in range(n)
        for j in range(n)
        if i != j and (directed or i < j) and rng.random() < p
    ]
    return from_edges([f"v{i}" for i in range(n)], edges, directed)


def bellman_ford(g: Graph, sentinel_m: float) -> np.ndarray:
    """Naive all-pairs Bellman-Ford; unreachable pairs set to ``sentinel_m``."""
    n = g.n
    arcs = []
    for (i, j), w in g.edges.items():
        arcs.append((i, j, w))
        if not g.directed:
            arcs.append((j, i, w))
    d = np.full((n, n), math.inf)
    for s in range(n):
        d[s, s] = 0.0
        for _ in range(n - 1):
            changed = False
            for i, j, w in arcs:
                if d[s, i] + w < d[s, j]:
                    d[s, j] = d[s, i] + w
                    changed = True
            if not changed:
                break
    d[np.isinf(d)] = sentinel_m
    return d


def _linf(p, q):
    return max(abs(p[0] - q[0]), abs(p[1] - q[1]))


def _diag(p):
    return (p[1] - p[0]) / 2


def partial_matchings(p1, p2):
    """Yield every matching as a list of point-to-point and point-to-diagonal costs.

    Any bijection between the diagonal-augmented diagrams is determined by
    which points of ``p1`` pair with which points of ``p2``; the rest go to
    the diagonal and diagonal slots pair among themselves at no cost.
    """
    n1, n2 = len(p1), len(p2)
    for r in range(min(n1, n2) + 1):
        for left in itertools.combinations(range(n1), r):
            for right in itertools.permutations(range(n2), r):
                costs = [_linf(p1[i], p2[j]) for i, j in zip(left, right)]
                costs += [_diag(p1[i]) for i in range(n1) if i not in left]
                costs += [_diag(p2[j]) for j in range(n2) if j not in right]
                yield costs


def brute_wasserstein(p1, p2, q=2.0):
    best = min(sum(c**q for c in costs) for costs in partial_matchings(p1, p2))
    return best ** (1.0 / q)


def brute_bottleneck(p1, p2):
    return min(max(costs, default=0.0) for costs in partial_matchings(p1, p2))


def random_diagram(rng, max_points=5, births_zero=False):
    n = int(rng.integers(0, max_points + 1))
    b = np.zeros(n) if births_zero else rng.uniform(0, 5, n)
    d = b + rng.uniform(0, 5, n)
    # Some exact duplicates and round values to exercise ties.
    if n and rng.random() < 0.3:
        d = np.round(d)
        b = np.minimum(np.round(b), d)
    return [(float(x), float(y)) for x, y in zip(b, d)]


def brute_average_ranks(scores, ascending=True):
    """Rank = position among strictly better scores plus the mean tied offset."""
    out = []
    for s in scores:
        better = sum(1 for t in scores if (t < s if ascending else t > s))
        equal = sum(1 for t in scores if t == s)
        out.append(better + (1 + equal) / 2)
    return out


def clique_edges(nodes):
    return [(a, b) for a, b in itertools.combinations(nodes, 2)]

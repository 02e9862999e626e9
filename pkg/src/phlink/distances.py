"""Bottleneck and Wasserstein-q distances between persistence diagrams.

Diagrams of different sizes are compared by letting any point be matched to
its projection on the diagonal, with the usual augmentation: each side gets
one diagonal slot per point of the other side, and diagonal slots match
each other for free. Ground distance between points is the sup norm.
"""

from __future__ import annotations

import math

import numpy as np
from scipy.optimize import linear_sum_assignment
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import maximum_bipartite_matching

from .persistence import PersistenceDiagram


def _points(p) -> np.ndarray:
    if isinstance(p, PersistenceDiagram):
        return p.points
    return np.asarray(p, dtype=float).reshape(-1, 2)


def augmented_costs(p1, p2) -> np.ndarray:
    """Square cost matrix of size ``n1 + n2`` over the augmented diagrams.

    Rows are ``p1`` points then ``p2``'s diagonal slots; columns are ``p2``
    points then ``p1``'s diagonal slots. Point ``i`` of ``p1`` may only use
    its own diagonal slot (others are ``inf``), and likewise for ``p2``.
    """
    a, b = _points(p1), _points(p2)
    n1, n2 = len(a), len(b)
    c = np.full((n1 + n2, n1 + n2), np.inf)
    if n1 and n2:
        c[:n1, :n2] = np.abs(a[:, None, :] - b[None, :, :]).max(axis=2)
    c[np.arange(n1), n2 + np.arange(n1)] = (a[:, 1] - a[:, 0]) / 2
    c[n1 + np.arange(n2), np.arange(n2)] = (b[:, 1] - b[:, 0]) / 2
    c[n1:, n2:] = 0.0
    return c


def _ordered(a: np.ndarray, b: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    # Fixed argument order makes d(a, b) and d(b, a) bit-identical.
    if (len(a), a.tobytes()) > (len(b), b.tobytes()):
        return b, a
    return a, b


def _same(a: np.ndarray, b: np.ndarray) -> bool:
    if a.shape != b.shape:
        return False
    ka = a[np.lexsort((a[:, 0], a[:, 1]))]
    kb = b[np.lexsort((b[:, 0], b[:, 1]))]
    return bool(np.array_equal(ka, kb))


def wasserstein_q(p1, p2, q: float = 2.0) -> float:
    """Exact Wasserstein-q distance by optimal assignment on q-th power costs."""
    if not q >= 1:
        raise ValueError(f"q must be >= 1, got {q}")
    a, b = _points(p1), _points(p2)
    if _same(a, b):
        return 0.0
    if math.isinf(q):
        return bottleneck(a, b)
    a, b = _ordered(a, b)
    cq = augmented_costs(a, b) ** q
    rows, cols = linear_sum_assignment(cq)
    return float(cq[rows, cols].sum() ** (1.0 / q))


def bottleneck(p1, p2) -> float:
    """Exact bottleneck distance.

    Binary search over the sorted distinct finite costs; a candidate is
    feasible when the bipartite graph of pairs at or below it has a
    perfect matching.
    """
    a, b = _points(p1), _points(p2)
    if _same(a, b):
        return 0.0
    c = augmented_costs(a, b)
    size = c.shape[0]
    cand = np.unique(c[np.isfinite(c)])
    # Every point must be matched somewhere, so the answer is at least the
    # largest "cheapest option" of any row or column.
    lower = max(c.min(axis=1).max(), c.min(axis=0).max())
    lo = int(np.searchsorted(cand, lower))
    hi = len(cand) - 1
    while lo < hi:
        mid = (lo + hi) // 2
        if _perfect(c <= cand[mid], size):
            hi = mid
        else:
            lo = mid + 1
    return float(cand[lo])


def _perfect(mask: np.ndarray, size: int) -> bool:
    match = maximum_bipartite_matching(csr_matrix(mask), perm_type="column")
    return bool((match >= 0).sum() == size)

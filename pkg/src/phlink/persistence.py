"""Zero-dimensional persistence diagrams of graph metrics.

In dimension 0 the Rips filtration of a finite metric space only records
when connected components merge, so the finite deaths are exactly the edge
weights of a minimum spanning tree of the complete distance graph. The
remaining (essential) component is capped at the threshold ``tau``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .graph import DistanceMatrix, Graph, apsp, sentinel

TAU_FACTOR = 1.5


class PersistenceError(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class PersistenceDiagram:
    """Multiset of ``(birth, death)`` points, sorted by ``(death, birth)``."""

    points: np.ndarray
    tau: float

    def __post_init__(self):
        pts = np.asarray(self.points, dtype=float).reshape(-1, 2)
        if len(pts):
            pts = pts[np.lexsort((pts[:, 0], pts[:, 1]))]
            if np.any(pts[:, 0] > pts[:, 1]):
                raise PersistenceError("point dies before it is born")
            if np.any(pts[:, 1] > self.tau):
                raise PersistenceError("point dies after the threshold")
        pts.setflags(write=False)
        object.__setattr__(self, "points", pts)

    def __len__(self):
        return len(self.points)

    def __eq__(self, other):
        if not isinstance(other, PersistenceDiagram):
            return NotImplemented
        return self.tau == other.tau and np.array_equal(self.points, other.points)

    @property
    def deaths(self) -> np.ndarray:
        return self.points[:, 1]

    def finite_deaths(self) -> np.ndarray:
        """Deaths with one essential (``tau``) point removed."""
        d = self.deaths
        hits = np.flatnonzero(d == self.tau)
        if len(hits):
            d = np.delete(d, hits[-1])
        return d

    def to_text(self) -> str:
        return "".join(f"{_num(b)} {_num(d)}\n" for b, d in self.points)

    def to_json(self) -> list[list[float]]:
        return [[float(b), float(d)] for b, d in self.points]

    @classmethod
    def from_deaths(cls, deaths, tau: float) -> "PersistenceDiagram":
        deaths = np.asarray(deaths, dtype=float)
        return cls(np.column_stack([np.zeros_like(deaths), deaths]), tau)


def _num(x: float) -> str:
    return format(float(x), ".17g")


@dataclass(frozen=True)
class PdConfig:
    """``tau=None`` means: use ``TAU_FACTOR`` times the subgraph sentinel."""

    tau: float | None = None
    sym_weight: float = 0.5

    def __post_init__(self):
        if self.tau is not None and not self.tau > 0:
            raise PersistenceError(f"tau must be positive, got {self.tau}")
        if not 0.0 <= self.sym_weight <= 0.5:
            raise PersistenceError(f"symmetrization weight must be in [0, 1/2], got {self.sym_weight}")

    def tau_for(self, sentinel_m: float) -> float:
        if self.tau is None:
            return TAU_FACTOR * sentinel_m
        if not self.tau > sentinel_m:
            raise PersistenceError(
                f"tau={self.tau:g} must exceed the unreachable-distance sentinel M={sentinel_m:g}"
            )
        return self.tau


def symmetrize(d: DistanceMatrix, a: float = 0.5) -> DistanceMatrix:
    """Blend the two directed distances: ``a*min + (1-a)*max``.

    ``a = 1/2`` is the plain average; any ``a`` in ``[0, 1/2]`` yields a metric.
    """
    if not 0.0 <= a <= 0.5:
        raise PersistenceError(f"a must lie in [0, 1/2], got {a}")
    e = d.entries
    if e.ndim != 2 or e.shape[0] != e.shape[1]:
        raise PersistenceError("distance matrix must be square")
    if a == 0.5:
        s = (e + e.T) / 2
    else:
        s = a * np.minimum(e, e.T) + (1 - a) * np.maximum(e, e.T)
    return DistanceMatrix(s, d.sentinel_m)


def _check(d: DistanceMatrix | np.ndarray, tau: float) -> np.ndarray:
    e = d.entries if isinstance(d, DistanceMatrix) else np.asarray(d, dtype=float)
    if e.ndim != 2 or e.shape[0] != e.shape[1] or e.shape[0] == 0:
        raise PersistenceError("distance matrix must be square and nonempty")
    if not np.array_equal(e, e.T):
        raise PersistenceError("distance matrix is not symmetric")
    if np.any(np.diag(e) != 0):
        raise PersistenceError("distance matrix must have a zero diagonal")
    if not tau > e.max():
        raise PersistenceError(f"tau={tau:g} must exceed the largest distance {e.max():g}")
    return e


def persistence_diagram_0(d: DistanceMatrix | np.ndarray, tau: float) -> PersistenceDiagram:
    """Dimension-0 diagram via dense Prim's MST, O(n^2)."""
    e = _check(d, tau)
    n = e.shape[0]
    deaths = np.empty(n)
    deaths[-1] = tau
    in_tree = np.zeros(n, dtype=bool)
    in_tree[0] = True
    reach = e[0].copy()
    reach[0] = np.inf
    for step in range(n - 1):
        j = int(np.argmin(reach))
        deaths[step] = reach[j]
        in_tree[j] = True
        reach[j] = np.inf
        np.minimum(reach, np.where(in_tree, np.inf, e[j]), out=reach)
    return PersistenceDiagram.from_deaths(deaths, tau)


def pd_oracle_sweep(d: DistanceMatrix | np.ndarray, tau: float) -> PersistenceDiagram:
    """Reference diagram: sweep all pairs in ascending distance with union-find.

    Every pair whose edge joins two components records a death at that
    distance. Ties go by ascending ``(i, j)``.
    """
    e = _check(d, tau)
    n = e.shape[0]
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    pairs = sorted((e[i, j], i, j) for i in range(n) for j in range(i + 1, n))
    deaths = []
    for w, i, j in pairs:
        ri, rj = find(i), find(j)
        if ri != rj:
            parent[max(ri, rj)] = min(ri, rj)
            deaths.append(w)
            if len(deaths) == n - 1:
                break
    deaths.append(tau)
    return PersistenceDiagram.from_deaths(deaths, tau)


def graph_metric(g: Graph, a: float = 0.5) -> DistanceMatrix:
    """Shortest-path metric of ``g``, symmetrized when ``g`` is directed."""
    d = apsp(g)
    return symmetrize(d, a) if g.directed else d


def get_pd(g: Graph, cfg: PdConfig | None = None) -> PersistenceDiagram:
    cfg = cfg or PdConfig()
    if g.n == 0:
        raise PersistenceError("empty graph")
    tau = cfg.tau_for(sentinel(g))
    return persistence_diagram_0(graph_metric(g, cfg.sym_weight), tau)

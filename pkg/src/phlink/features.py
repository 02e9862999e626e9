"""Eight-distance topological feature vector for a candidate link.

For a query pair ``(u, v)`` five subgraphs are built from the ``k``-hop
balls: the two individual balls, their union with the edge forced present
(``plus``) and forced absent (``minus``), and the clique over the union
(``complete``). Their dimension-0 diagrams are compared against ``plus``
with Wasserstein-2 and bottleneck distances.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .distances import bottleneck, wasserstein_q
from .graph import (
    Graph,
    GraphError,
    combined_neighborhood,
    complete_graph,
    induce,
    khop_neighborhood,
    sentinel,
    toggle_edge,
)
from .persistence import TAU_FACTOR, PdConfig, PersistenceDiagram, graph_metric, persistence_diagram_0

FEATURE_PAIRS: tuple[tuple[str, str, str], ...] = (
    ("P+", "P-", "W2"),
    ("P+", "Pc", "W2"),
    ("P+", "Pu", "W2"),
    ("P+", "Pv", "W2"),
    ("P+", "P-", "B"),
    ("P+", "Pc", "B"),
    ("P+", "Pu", "B"),
    ("P+", "Pv", "B"),
)


def feature_distance_pairs() -> list[tuple[str, str, str]]:
    """Canonical order of ``(diagram, diagram, metric)`` for ``d1..d8``."""
    return list(FEATURE_PAIRS)


@dataclass(frozen=True)
class LinkFeatureVector:
    u: str
    v: str
    k: int
    d: tuple[float, ...]
    tau: float
    sizes: dict = field(default_factory=dict)

    def to_record(self) -> dict:
        return {"u": self.u, "v": self.v, "k": self.k, "d": list(self.d), "sizes": dict(self.sizes)}


@dataclass(frozen=True)
class _Part:
    finite: np.ndarray  # non-essential deaths, ascending
    sentinel_m: float
    n: int


def _part(g: Graph, a: float) -> _Part:
    pd = persistence_diagram_0(graph_metric(g, a), np.inf)
    return _Part(pd.deaths[:-1], sentinel(g), g.n)


class FeatureExtractor:
    """Computes feature vectors over one fixed graph, caching per-node balls.

    The ball diagrams of a source node recur for every candidate target, so
    their non-essential deaths are kept; the essential point is attached per
    query because all five diagrams of a query share one threshold.
    """

    def __init__(self, g: Graph, k: int = 2, cfg: PdConfig | None = None):
        if k < 1:
            raise GraphError(f"radius must be >= 1, got {k}")
        self.g = g
        self.k = k
        self.cfg = cfg or PdConfig()
        self._balls: dict[int, tuple[frozenset[int], _Part]] = {}

    def ball(self, u: int) -> tuple[frozenset[int], _Part]:
        hit = self._balls.get(u)
        if hit is None:
            nodes = khop_neighborhood(self.g, u, self.k)
            hit = (nodes, _part(induce(self.g, nodes), self.cfg.sym_weight))
            self._balls[u] = hit
        return hit

    def diagrams(self, u: int, v: int) -> tuple[dict[str, PersistenceDiagram], dict]:
        g = self.g
        g.check_node(u)
        g.check_node(v)
        if u == v:
            raise GraphError("query nodes must differ")
        a = self.cfg.sym_weight
        nu, part_u = self.ball(u)
        nv, part_v = self.ball(v)
        union = nu | nv
        sub = induce(g, union)
        members = sorted(union)
        lu, lv = members.index(u), members.index(v)
        plus = toggle_edge(sub, lu, lv, True)
        minus = toggle_edge(sub, lu, lv, False)
        parts = {
            "P+": _part(plus, a),
            "P-": _part(minus, a),
            "Pc": _part(complete_graph(sub), a),
            "Pu": part_u,
            "Pv": part_v,
        }
        tau = self._tau(max(p.sentinel_m for p in parts.values()))
        pds = {
            name: PersistenceDiagram.from_deaths(np.append(p.finite, tau), tau)
            for name, p in parts.items()
        }
        sizes = {"u": len(nu), "v": len(nv), "uv": len(union), "uv_edges": minus.m}
        return pds, {"tau": tau, "sizes": sizes}

    def _tau(self, largest_m: float) -> float:
        if self.cfg.tau is None:
            return TAU_FACTOR * largest_m
        return self.cfg.tau_for(largest_m)

    def vector(self, u: int, v: int) -> LinkFeatureVector:
        pds, meta = self.diagrams(u, v)
        d = []
        for left, right, metric in FEATURE_PAIRS:
            if metric == "W2":
                d.append(wasserstein_q(pds[left], pds[right], 2.0))
            else:
                d.append(bottleneck(pds[left], pds[right]))
        return LinkFeatureVector(
            self.g.labels[u], self.g.labels[v], self.k, tuple(d), meta["tau"], meta["sizes"]
        )


def link_feature_vector(
    g: Graph, u: int, v: int, k: int = 2, cfg: PdConfig | None = None
) -> LinkFeatureVector:
    return FeatureExtractor(g, k, cfg).vector(u, v)


def combined_subgraph(g: Graph, u: int, v: int, k: int) -> Graph:
    return induce(g, combined_neighborhood(g, u, v, k))

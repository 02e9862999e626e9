"""Graph container, edge-list ingestion, neighborhoods and shortest paths."""

from __future__ import annotations

import io
import logging
from collections import deque
from dataclasses import dataclass, field
from typing import Iterable

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import shortest_path

log = logging.getLogger(__name__)

Edge = tuple[int, int]


class GraphError(ValueError):
    pass


class EdgeListParseError(GraphError):
    def __init__(self, lineno: int, message: str):
        super().__init__(f"line {lineno}: {message}")
        self.lineno = lineno


@dataclass(frozen=True, eq=False)
class Graph:
    """Simple weighted graph over dense node indices ``0..n-1``.

    ``labels[i]`` is the external label of node ``i``. Undirected edges are
    stored once, keyed ``(min, max)``. ``parent`` maps each node to its index
    in the graph this one was induced from (``None`` for a root graph).
    """

    labels: tuple[str, ...]
    edges: dict[Edge, float]
    directed: bool = False
    parent: tuple[int, ...] | None = None
    _adj: list[tuple[int, ...]] | None = field(default=None, init=False, repr=False)

    def __post_init__(self):
        n = len(self.labels)
        ij, w = self._arrays()
        if len(w) == 0:
            return
        bad = (ij[:, 0] == ij[:, 1]) | (ij.min(axis=1) < 0) | (ij.max(axis=1) >= n) | ~(w > 0)
        if not self.directed:
            bad |= ij[:, 0] > ij[:, 1]
        if bad.any():
            (i, j), wt = ij[np.argmax(bad)], w[np.argmax(bad)]
            raise GraphError(f"invalid edge ({i}, {j}) with weight {wt} for {n}-node graph")

    def _arrays(self) -> tuple[np.ndarray, np.ndarray]:
        """Edges as an ``(m, 2)`` index array and an ``(m,)`` weight array."""
        cached = self.__dict__.get("_edge_arrays")
        if cached is None:
            m = len(self.edges)
            ij = np.fromiter((x for e in self.edges for x in e), dtype=np.int64, count=2 * m)
            w = np.fromiter(self.edges.values(), dtype=float, count=m)
            cached = (ij.reshape(m, 2), w)
            object.__setattr__(self, "_edge_arrays", cached)
        return cached

    @property
    def n(self) -> int:
        return len(self.labels)

    @property
    def m(self) -> int:
        return len(self.edges)

    @property
    def max_weight(self) -> float:
        # An edgeless graph scales its sentinel as if unweighted.
        w = self._arrays()[1]
        return float(w.max()) if len(w) else 1.0

    @property
    def is_unit_weighted(self) -> bool:
        return bool(np.all(self._arrays()[1] == 1.0))

    def key(self, u: int, v: int) -> Edge:
        if self.directed or u < v:
            return (u, v)
        return (v, u)

    def has_edge(self, u: int, v: int) -> bool:
        return self.key(u, v) in self.edges

    def index(self, label: str) -> int:
        try:
            return self._label_index[label]
        except KeyError:
            raise GraphError(f"unknown node label {label!r}") from None

    @property
    def _label_index(self) -> dict[str, int]:
        cache = self.__dict__.get("_label_cache")
        if cache is None:
            cache = {lab: i for i, lab in enumerate(self.labels)}
            object.__setattr__(self, "_label_cache", cache)
        return cache

    def undirected_neighbors(self, u: int) -> tuple[int, ...]:
        """Neighbors of ``u`` ignoring edge direction."""
        if self._adj is None:
            adj: list[set[int]] = [set() for _ in range(self.n)]
            for i, j in self.edges:
                adj[i].add(j)
                adj[j].add(i)
            object.__setattr__(self, "_adj", [tuple(sorted(s)) for s in adj])
        return self._adj[u]

    def in_neighbors(self, u: int) -> set[int]:
        if not self.directed:
            return set(self.undirected_neighbors(u))
        return {i for (i, j) in self.edges if j == u}

    def degree(self, u: int) -> int:
        return len(self.undirected_neighbors(u))

    def check_node(self, u: int) -> None:
        if not (isinstance(u, (int, np.integer)) and 0 <= u < self.n):
            raise GraphError(f"invalid node index {u!r} for graph with {self.n} nodes")

    def edge_list(self) -> list[tuple[int, int, float]]:
        return [(i, j, w) for (i, j), w in self.edges.items()]

    def __eq__(self, other):
        if not isinstance(other, Graph):
            return NotImplemented
        return (
            self.labels == other.labels
            and self.directed == other.directed
            and self.edges == other.edges
        )

    def __hash__(self):
        return hash((self.labels, self.directed, frozenset(self.edges.items())))


@dataclass(frozen=True)
class DistanceMatrix:
    entries: np.ndarray
    sentinel_m: float

    @property
    def n(self) -> int:
        return self.entries.shape[0]

    def is_symmetric(self) -> bool:
        return bool(np.array_equal(self.entries, self.entries.T))


def from_edges(
    labels: Iterable[str],
    edges: Iterable[tuple[int, int] | tuple[int, int, float]],
    directed: bool = False,
) -> Graph:
    """Build a graph from index pairs, dropping loops and duplicate edges."""
    store: dict[Edge, float] = {}
    for e in edges:
        i, j = int(e[0]), int(e[1])
        w = float(e[2]) if len(e) > 2 else 1.0
        if i == j:
            continue
        k = (i, j) if directed or i < j else (j, i)
        store.setdefault(k, w)
    return Graph(tuple(str(x) for x in labels), store, directed)


def load_edge_list(
    text: str | bytes | io.IOBase, directed: bool = False, weighted: bool = False
) -> Graph:
    """Parse a whitespace-separated edge list.

    Lines starting with ``#`` or ``%`` are comments. Each data line holds
    ``src dst`` or ``src dst weight``; the weight column is only read when
    ``weighted`` is set. Node labels get indices in order of first
    appearance. Duplicate edges keep the first weight and self-loops are
    dropped; both are counted in ``graph.__dict__['load_stats']``.
    """
    if isinstance(text, io.IOBase):
        text = text.read()
    if isinstance(text, bytes):
        text = text.decode("utf-8")

    index: dict[str, int] = {}
    labels: list[str] = []
    store: dict[Edge, float] = {}
    loops = dups = 0

    def idx(label: str) -> int:
        if label not in index:
            index[label] = len(labels)
            labels.append(label)
        return index[label]

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line[0] in "#%":
            continue
        tok = line.split()
        if len(tok) not in (2, 3):
            raise EdgeListParseError(lineno, f"expected 2 or 3 fields, got {len(tok)}")
        w = 1.0
        if len(tok) == 3:
            try:
                parsed = float(tok[2])
            except ValueError:
                raise EdgeListParseError(lineno, f"bad weight {tok[2]!r}") from None
            if not parsed > 0 or not np.isfinite(parsed):
                raise EdgeListParseError(lineno, f"weight must be positive, got {tok[2]}")
            if weighted:
                w = parsed
        i, j = idx(tok[0]), idx(tok[1])
        if i == j:
            loops += 1
            continue
        k = (i, j) if directed or i < j else (j, i)
        if k in store:
            dups += 1
            continue
        store[k] = w

    if not labels:
        raise GraphError("edge list is empty")
    if loops or dups:
        log.info("dropped %d self-loop(s) and %d duplicate edge(s)", loops, dups)
    g = Graph(tuple(labels), store, directed)
    object.__setattr__(g, "load_stats", {"self_loops": loops, "duplicates": dups})
    return g


def khop_neighborhood(g: Graph, u: int, k: int) -> frozenset[int]:
    """``u`` plus every node within ``k`` undirected hops."""
    g.check_node(u)
    if k < 1:
        raise GraphError(f"radius must be >= 1, got {k}")
    seen = {u}
    frontier = deque([(u, 0)])
    while frontier:
        x, d = frontier.popleft()
        if d == k:
            continue
        for y in g.undirected_neighbors(x):
            if y not in seen:
                seen.add(y)
                frontier.append((y, d + 1))
    return frozenset(seen)


def combined_neighborhood(g: Graph, u: int, v: int, k: int) -> frozenset[int]:
    if u == v:
        raise GraphError("combined neighborhood needs two distinct nodes")
    return khop_neighborhood(g, u, k) | khop_neighborhood(g, v, k)


def induce(g: Graph, nodes: Iterable[int]) -> Graph:
    """Subgraph on ``nodes`` (re-indexed in ascending parent order)."""
    members = sorted(set(int(x) for x in nodes))
    if not members:
        raise GraphError("cannot induce a subgraph on an empty node set")
    for x in members:
        g.check_node(x)
    local = {p: i for i, p in enumerate(members)}
    edges: dict[Edge, float] = {}
    if len(members) * 4 < g.n:
        # Small ball in a large graph: walk adjacency instead of all edges.
        for p in members:
            for q in g.undirected_neighbors(p):
                if q in local:
                    for a, b in ((p, q), (q, p)):
                        w = g.edges.get((a, b))
                        if w is not None:
                            edges[_canon(local[a], local[b], g.directed)] = w
    else:
        for (a, b), w in g.edges.items():
            if a in local and b in local:
                edges[_canon(local[a], local[b], g.directed)] = w
    labels = tuple(g.labels[p] for p in members)
    if g.parent is not None:
        members = [g.parent[p] for p in members]
    return Graph(labels, edges, g.directed, tuple(members))


def _canon(i: int, j: int, directed: bool) -> Edge:
    return (i, j) if directed or i < j else (j, i)


def toggle_edge(g: Graph, u: int, v: int, present: bool) -> Graph:
    """Copy of ``g`` with edge ``(u, v)`` added or removed.

    An added edge weighs 1 on unit-weighted graphs and the mean edge weight
    otherwise.
    """
    g.check_node(u)
    g.check_node(v)
    if u == v:
        raise GraphError("cannot toggle a self-loop")
    k = g.key(u, v)
    if (k in g.edges) == present:
        return g
    edges = dict(g.edges)
    if present:
        edges[k] = 1.0 if g.is_unit_weighted else float(np.mean(list(g.edges.values())))
    else:
        del edges[k]
    return Graph(g.labels, edges, g.directed, g.parent)


def complete_graph(nodes: Iterable[int] | Graph) -> Graph:
    """Undirected unit-weight clique over the given nodes (or a graph's nodes)."""
    if isinstance(nodes, Graph):
        labels, parent = nodes.labels, nodes.parent
    else:
        members = sorted(set(int(x) for x in nodes))
        labels, parent = tuple(str(x) for x in members), tuple(members)
    n = len(labels)
    if n == 0:
        raise GraphError("complete graph needs at least one node")
    edges = {(i, j): 1.0 for i in range(n) for j in range(i + 1, n)}
    return Graph(labels, edges, False, parent)


def sentinel(g: Graph) -> float:
    """Stand-in distance for unreachable pairs: node count times max weight."""
    return g.n * g.max_weight


def apsp(g: Graph, sentinel_m: float | None = None) -> DistanceMatrix:
    """All-pairs shortest paths; unreachable pairs get the sentinel."""
    n = g.n
    if n == 0:
        raise GraphError("empty graph")
    big = sentinel(g) if sentinel_m is None else float(sentinel_m)
    if g.m == 0:
        d = np.full((n, n), big)
        np.fill_diagonal(d, 0.0)
        return DistanceMatrix(d, big)
    ij, w = g._arrays()
    adj = csr_matrix((w, (ij[:, 0], ij[:, 1])), shape=(n, n))
    d = shortest_path(adj, directed=g.directed, unweighted=g.is_unit_weighted)
    d[np.isinf(d)] = big
    if not g.directed:
        # Float path sums can differ in the last bit between the two ends.
        np.minimum(d, d.T, out=d)
    return DistanceMatrix(d, big)

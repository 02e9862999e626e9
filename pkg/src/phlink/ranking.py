"""Ranking, rank-product aggregation, baselines and hold-out evaluation."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

import numpy as np

from .graph import Graph, GraphError, khop_neighborhood
from .persistence import PdConfig

METHODS = ("aa", "mw", "topology")
POOLS = ("all", "2khop")
DEFAULT_HITS = (1, 10, 50)


@dataclass(frozen=True)
class RankedList:
    """Targets for one source, best first.

    ``ascending`` records whether smaller scores are better.
    """

    source: str
    entries: tuple[tuple[str, float], ...]
    ascending: bool = False

    def __post_init__(self):
        targets = [t for t, _ in self.entries]
        if len(set(targets)) != len(targets):
            raise ValueError("duplicate target in ranked list")
        if self.source in targets:
            raise ValueError("source cannot rank itself")

    @property
    def targets(self) -> list[str]:
        return [t for t, _ in self.entries]

    def rank_of(self, target: str) -> int | None:
        for pos, (t, _) in enumerate(self.entries, start=1):
            if t == target:
                return pos
        return None

    @classmethod
    def from_scores(cls, source: str, scores: Mapping[str, float], ascending: bool = False):
        """Sort by score (direction per ``ascending``), ties by label."""
        sign = 1.0 if ascending else -1.0
        items = sorted(scores.items(), key=lambda kv: (sign * kv[1], kv[0]))
        return cls(source, tuple(items), ascending)


def tied_ranks(scores: Sequence[float], ascending: bool = True) -> np.ndarray:
    """1-based ranks; tied scores share the mean of their positions."""
    s = np.asarray(scores, dtype=float)
    if not ascending:
        s = -s
    order = np.argsort(s, kind="stable")
    ranks = np.empty(len(s))
    i = 0
    while i < len(s):
        j = i
        while j + 1 < len(s) and s[order[j + 1]] == s[order[i]]:
            j += 1
        ranks[order[i : j + 1]] = (i + j) / 2 + 1
        i = j + 1
    return ranks


def rank_product(lists: Sequence[RankedList]) -> RankedList:
    """Aggregate ranked lists by the geometric mean of each target's ranks.

    Returned scores are the rank products, ascending; equal products are
    ordered by label.
    """
    if not lists:
        raise ValueError("rank product needs at least one list")
    candidates = sorted(lists[0].targets)
    pool = set(candidates)
    m = len(lists)
    doubled = {c: 1 for c in candidates}
    for lst in lists:
        if set(lst.targets) != pool or len(lst.entries) != len(pool):
            missing = pool.symmetric_difference(lst.targets)
            raise ValueError(f"candidate sets differ across lists: {sorted(missing)[:5]}")
        targets = lst.targets
        ranks = tied_ranks([s for _, s in lst.entries], ascending=lst.ascending)
        for t, r in zip(targets, ranks):
            # Tie ranks are multiples of 1/2, so doubled ranks multiply exactly.
            doubled[t] *= int(round(2 * r))
    order = sorted(candidates, key=lambda c: (doubled[c], c))
    entries = tuple((c, (doubled[c] / 2**m) ** (1.0 / m)) for c in order)
    return RankedList(lists[0].source, entries, ascending=True)


def adamic_adar(g: Graph, u: int, v: int) -> float:
    """Sum of ``1/ln(deg w)`` over common (undirected) neighbors ``w``."""
    if u == v:
        raise GraphError("Adamic-Adar needs two distinct nodes")
    common = set(g.undirected_neighbors(u)) & set(g.undirected_neighbors(v))
    return sum(1.0 / math.log(g.degree(w)) for w in sorted(common))


def milne_witten(g: Graph, u: int, v: int) -> float:
    """Milne-Witten relatedness from shared in-neighbors, clamped to [0, 1]."""
    if u == v:
        raise GraphError("Milne-Witten needs two distinct nodes")
    a, b = g.in_neighbors(u), g.in_neighbors(v)
    common = len(a & b)
    if not a or not b or common == 0:
        return 0.0
    big, small = max(len(a), len(b)), min(len(a), len(b))
    denom = math.log(g.n) - math.log(small)
    if denom <= 0:
        return 1.0 if big == common else 0.0
    score = 1.0 - (math.log(big) - math.log(common)) / denom
    return min(1.0, max(0.0, score))


@dataclass
class SplitSpec:
    fraction: float
    seed: int
    test_edges: list[tuple[int, int]]
    train: Graph
    original: Graph = field(repr=False)

    def metadata(self) -> dict:
        return {"fraction": self.fraction, "seed": self.seed}


def holdout_split(g: Graph, fraction: float = 0.05, seed: int = 0) -> SplitSpec:
    """Hold out ``round(fraction * m)`` edges chosen uniformly at random."""
    if not 0 < fraction < 1:
        raise ValueError(f"test fraction must be in (0, 1), got {fraction}")
    if g.m < 2:
        raise ValueError("need at least two edges to split")
    edges = list(g.edges)
    n_test = math.floor(fraction * len(edges) + 0.5)
    if n_test == 0:
        raise ValueError(f"test fraction {fraction} leaves no test edges out of {len(edges)}")
    if n_test >= len(edges):
        raise ValueError(f"test fraction {fraction} leaves no training edges")
    rng = np.random.default_rng(seed)
    picked = np.sort(rng.choice(len(edges), size=n_test, replace=False))
    test = [edges[i] for i in picked]
    held = set(test)
    train_edges = {e: w for e, w in g.edges.items() if e not in held}
    train = Graph(g.labels, train_edges, g.directed, g.parent)
    return SplitSpec(fraction, seed, test, train, g)


def candidate_pool(g: Graph, source: int, pool: str = "all", k: int = 2, filtered: bool = False) -> list[int]:
    if pool == "all":
        cands = [x for x in range(g.n) if x != source]
    elif pool == "2khop":
        cands = sorted(khop_neighborhood(g, source, 2 * k) - {source})
    else:
        raise ValueError(f"unknown pool policy {pool!r}; expected one of {POOLS}")
    if filtered:
        taken = {j for (i, j) in g.edges if i == source}
        if not g.directed:
            taken |= set(g.undirected_neighbors(source))
        cands = [x for x in cands if x not in taken]
    return cands


def rank_targets(
    train: Graph,
    source: int,
    method: str,
    k: int = 2,
    cfg: PdConfig | None = None,
    pool: str = "all",
    filtered: bool = False,
    extractor=None,
) -> RankedList:
    if method not in METHODS:
        raise ValueError(f"unknown method {method!r}; expected one of {METHODS}")
    train.check_node(source)
    cands = candidate_pool(train, source, pool, k, filtered)
    src = train.labels[source]
    if method == "aa":
        return RankedList.from_scores(src, {train.labels[c]: adamic_adar(train, source, c) for c in cands})
    if method == "mw":
        return RankedList.from_scores(src, {train.labels[c]: milne_witten(train, source, c) for c in cands})

    from .features import FEATURE_PAIRS, FeatureExtractor

    if extractor is None:
        extractor = FeatureExtractor(train, k, cfg)
    vectors = {train.labels[c]: extractor.vector(source, c).d for c in cands}
    if not vectors:
        return RankedList(src, (), ascending=True)
    lists = [
        RankedList.from_scores(src, {t: d[j] for t, d in vectors.items()}, ascending=True)
        for j in range(len(FEATURE_PAIRS))
    ]
    return rank_product(lists)


@dataclass
class EvalReport:
    method: str
    hits: dict[int, float]
    num_test: int
    split: dict
    pool: str
    m: int = 1
    extra: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        out = {
            "method": self.method,
            "split": self.split,
            "pool": self.pool,
            "hits": {str(n): self.hits[n] for n in sorted(self.hits)},
            "num_test": self.num_test,
            "m": self.m,
        }
        out.update(self.extra)
        return out


def held_out_pairs(split: SplitSpec) -> list[tuple[int, int]]:
    """Held-out edges as ``(source, target)``, in split order."""
    return list(split.test_edges)


def hits_at_n(
    split: SplitSpec,
    rankings: Mapping[str, RankedList],
    ns: Iterable[int] = DEFAULT_HITS,
    method: str = "",
    pool: str = "all",
    m: int = 1,
) -> EvalReport:
    ns = sorted(set(int(n) for n in ns))
    if not ns or ns[0] < 1:
        raise ValueError("hit cutoffs must be positive integers")
    pairs = held_out_pairs(split)
    if not pairs:
        raise ValueError("empty test set")
    labels = split.train.labels
    ranks = []
    for s, t in pairs:
        ranking = rankings.get(labels[s])
        if ranking is None:
            raise KeyError(f"no ranking for source {labels[s]!r}")
        ranks.append(ranking.rank_of(labels[t]))
    hits = {n: sum(1 for r in ranks if r is not None and r <= n) / len(ranks) for n in ns}
    return EvalReport(method, hits, len(ranks), split.metadata(), pool, m)

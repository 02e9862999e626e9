import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from helpers import bellman_ford, float_weighted_graph, random_graph
from phlink.graph import (
    EdgeListParseError,
    GraphError,
    apsp,
    combined_neighborhood,
    complete_graph,
    from_edges,
    induce,
    khop_neighborhood,
    load_edge_list,
    sentinel,
    toggle_edge,
)


def path(n, directed=False):
    return from_edges([str(i) for i in range(1, n + 1)], [(i, i + 1) for i in range(n - 1)], directed)


def test_load_simple():
    g = load_edge_list("a b\nb c\n")
    assert (g.n, g.m) == (3, 2)
    assert g.labels == ("a", "b", "c")
    assert set(g.edges.values()) == {1.0}


def test_load_dedup_and_loops():
    g = load_edge_list("a b\na b\na a\n")
    assert (g.n, g.m) == (2, 1)
    assert g.load_stats == {"self_loops": 1, "duplicates": 1}


def test_load_undirected_reverse_duplicate():
    g = load_edge_list("a b\nb a\n")
    assert g.m == 1
    assert load_edge_list("a b\nb a\n", directed=True).m == 2


def test_load_comments_weights_and_bytes():
    g = load_edge_list(b"# header\n% konect\nx y 2.5\ny z 0.5\nx y 9\n", weighted=True)
    assert g.edges == {(0, 1): 2.5, (1, 2): 0.5}


@pytest.mark.parametrize(
    "text, lineno",
    [("a b\nc\n", 2), ("a b c d\n", 1), ("a b 0\n", 1), ("a b -1\n", 1), ("# c\na b x\n", 2)],
)
def test_load_errors_carry_line_number(text, lineno):
    with pytest.raises(EdgeListParseError) as exc:
        load_edge_list(text, weighted=True)
    assert exc.value.lineno == lineno


@pytest.mark.parametrize("text", ["", "# only comments\n\n"])
def test_load_empty(text):
    with pytest.raises(GraphError):
        load_edge_list(text)


def test_khop_examples():
    assert khop_neighborhood(path(3), 1, 1) == {0, 1, 2}
    assert khop_neighborhood(path(5), 0, 2) == {0, 1, 2}
    two = from_edges("1234", [(0, 1), (2, 3)])
    assert khop_neighborhood(two, 0, 3) == {0, 1}


def test_khop_ignores_direction():
    g = path(3, directed=True)
    assert khop_neighborhood(g, 2, 1) == {1, 2}


def test_khop_errors():
    with pytest.raises(GraphError):
        khop_neighborhood(path(3), 5, 1)
    with pytest.raises(GraphError):
        khop_neighborhood(path(3), 0, 0)


def test_combined_examples():
    assert combined_neighborhood(path(3), 0, 2, 1) == {0, 1, 2}
    two = from_edges("1234", [(0, 1), (2, 3)])
    assert combined_neighborhood(two, 0, 2, 1) == {0, 1, 2, 3}
    star = from_edges("cabd", [(0, 1), (0, 2), (0, 3)])
    assert combined_neighborhood(star, 1, 2, 1) == {0, 1, 2}
    with pytest.raises(GraphError):
        combined_neighborhood(star, 1, 1, 1)


def test_induce_examples():
    tri = from_edges("123", [(0, 1), (1, 2), (0, 2)])
    sub = induce(tri, {0, 1})
    assert sub.edges == {(0, 1): 1.0}
    assert sub.parent == (0, 1)
    assert induce(tri, range(3)) == tri
    sub = induce(path(3), {0, 2})
    assert (sub.n, sub.m) == (2, 0)
    assert sub.labels == ("1", "3")
    with pytest.raises(GraphError):
        induce(tri, set())


def test_induce_of_induced_keeps_root_indices():
    g = path(6)
    sub = induce(induce(g, {1, 2, 3, 4}), {1, 3})
    assert sub.parent == (2, 4)


def test_induce_small_ball_matches_full_scan():
    rng = np.random.default_rng(3)
    g = random_graph(rng, 40, 0.05, directed=True, weighted=True)
    nodes = {0, 1, 2, 3, 5}
    sub = induce(g, nodes)
    expected = {(a, b) for (a, b) in g.edges if a in nodes and b in nodes}
    assert sub.m == len(expected)


def test_toggle_examples():
    p = path(3)
    tri = toggle_edge(p, 0, 2, True)
    assert tri.m == 3 and tri.edges[(0, 2)] == 1.0
    assert toggle_edge(tri, 0, 2, False) == p
    assert toggle_edge(p, 0, 2, False) is p
    with pytest.raises(GraphError):
        toggle_edge(p, 1, 1, True)


def test_toggle_weighted_uses_mean():
    g = from_edges("abc", [(0, 1, 2.0), (1, 2, 4.0)])
    assert toggle_edge(g, 0, 2, True).edges[(0, 2)] == 3.0


def test_toggle_directed_adds_one_arc():
    g = toggle_edge(path(3, directed=True), 2, 0, True)
    assert (2, 0) in g.edges and (0, 2) not in g.edges


@pytest.mark.parametrize("size, m", [(4, 6), (1, 0), (2, 1)])
def test_complete_graph(size, m):
    c = complete_graph(range(size))
    assert c.m == m and not c.directed
    assert set(c.edges.values()) <= {1.0}


def test_apsp_examples():
    assert apsp(path(3)).entries[0, 2] == 2
    two = from_edges("1234", [(0, 1), (2, 3)])
    d = apsp(two, sentinel_m=8)
    assert d.entries[0, 2] == 8 and d.sentinel_m == 8
    assert apsp(two).entries[0, 2] == 4  # default sentinel: n * w_max
    dd = apsp(path(3, directed=True))
    assert dd.entries[0, 2] == 2 and dd.entries[2, 0] == dd.sentinel_m == 3


def test_sentinel_exceeds_any_path():
    g = from_edges("abc", [(0, 1, 2.5), (1, 2, 4.0)])
    assert sentinel(g) == 12.0
    assert apsp(g).entries.max() < 12.0


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10_000), st.integers(1, 10), st.booleans(), st.booleans())
def test_apsp_matches_bellman_ford(seed, n, directed, floats):
    rng = np.random.default_rng(seed)
    g = float_weighted_graph(rng, n, 0.35, directed) if floats else random_graph(rng, n, 0.35, directed, True)
    d = apsp(g)
    np.testing.assert_allclose(d.entries, bellman_ford(g, d.sentinel_m), rtol=0, atol=1e-12)


@settings(max_examples=50, deadline=None)
@given(st.integers(0, 10_000), st.integers(2, 12), st.booleans())
def test_graph_properties(seed, n, directed):
    rng = np.random.default_rng(seed)
    g = random_graph(rng, n, 0.3, directed, weighted=True)
    u = int(rng.integers(n))
    balls = [khop_neighborhood(g, u, k) for k in (1, 2, 3)]
    assert u in balls[0] and balls[0] <= balls[1] <= balls[2]

    full = induce(g, range(n))
    assert full.edges == g.edges

    d = apsp(g).entries
    fin = d < apsp(g).sentinel_m
    for i in range(n):
        for j in range(n):
            for k in range(n):
                if fin[i, j] and fin[j, k] and fin[i, k]:
                    assert d[i, j] + d[j, k] >= d[i, k] - 1e-12
    if not directed:
        assert np.array_equal(d, d.T)

    a, b = (int(x) for x in rng.choice(n, 2, replace=False))
    if not g.has_edge(a, b):
        assert toggle_edge(toggle_edge(g, a, b, True), a, b, False) == g

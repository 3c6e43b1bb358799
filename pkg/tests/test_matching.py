import itertools
import random

import networkx as nx
import pytest
from hypothesis import given
from hypothesis import strategies as st

from hitset.matching import BipartiteGraph, matching_size, max_matching, min_edge_cover


def brute_matching(edges) -> int:
    best = 0
    for k in range(len(edges), 0, -1):
        if k <= best:
            break
        for sub in itertools.combinations(edges, k):
            ends = [v for e in sub for v in (("L", e[0]), ("R", e[1]))]
            if len(set(ends)) == len(ends):
                return k
    return best


def brute_cover(vertices, edges):
    """Exhaustive minimum edge cover size over coverable vertices."""
    coverable = {v for e in edges for v in e}
    for k in range(len(edges) + 1):
        for sub in itertools.combinations(edges, k):
            if coverable <= {v for e in sub for v in e}:
                return k
    raise AssertionError


bip = st.integers(0, 5).flatmap(
    lambda nl: st.integers(0, 5).flatmap(
        lambda nr: st.lists(st.tuples(st.integers(0, max(nl - 1, 0)), st.integers(0, max(nr - 1, 0))), max_size=10)
        .map(lambda es, nl=nl, nr=nr: (nl, nr, sorted(set(es)) if nl and nr else []))
    )
)


def test_empty_graph():
    assert max_matching(BipartiteGraph()) == {}


def test_k23():
    g = BipartiteGraph([0, 1], ["a", "b", "c"], [(u, v) for u in (0, 1) for v in "abc"])
    assert matching_size(g) == 2


def test_rejects_wrong_side_edge():
    with pytest.raises(ValueError):
        BipartiteGraph([0], [1], [(1, 0)])


@given(bip)
def test_matching_is_maximum(case):
    nl, nr, edges = case
    g = BipartiteGraph(list(range(nl)), list(range(nr)), edges)
    m = max_matching(g)
    assert len(set(m.values())) == len(m)
    assert all((u, v) in set(edges) for u, v in m.items())
    assert len(m) == brute_matching(edges)


def test_matching_against_networkx_on_larger_graphs():
    rng = random.Random(8)
    for _ in range(40):
        nl, nr = rng.randint(1, 8), rng.randint(1, 8)
        edges = sorted({(rng.randrange(nl), rng.randrange(nr)) for _ in range(rng.randint(0, 20))})
        g = BipartiteGraph(list(range(nl)), list(range(nr)), edges)
        G = nx.Graph()
        G.add_nodes_from(("L", u) for u in range(nl))
        G.add_nodes_from(("R", v) for v in range(nr))
        G.add_edges_from((("L", u), ("R", v)) for u, v in edges)
        ref = nx.bipartite.maximum_matching(G, top_nodes=[("L", u) for u in range(nl)])
        assert matching_size(g) == len(ref) // 2


def test_long_augmenting_paths_do_not_recurse():
    n = 3000
    edges = [(i, i) for i in range(n)] + [(i, i + 1) for i in range(n - 1)]
    assert matching_size(BipartiteGraph(list(range(n)), list(range(n)), edges)) == n


class TestEdgeCover:
    def test_single_edge(self):
        c = min_edge_cover([1, 2], [(1, 2)])
        assert len(c) == 1 and c.isolated == []

    def test_path_of_three(self):
        assert len(min_edge_cover("abc", [("a", "b"), ("b", "c")])) == 2

    def test_isolated_reported(self):
        c = min_edge_cover([1, 2, 3], [(1, 2)])
        assert c.isolated == [3]

    def test_random_against_exhaustive_and_gallai(self):
        rng = random.Random(4)
        for _ in range(80):
            n = rng.randint(1, 8)
            vs = list(range(n))
            edges = sorted({tuple(sorted(rng.sample(vs, 2))) for _ in range(rng.randint(0, 10))} if n > 1 else set())
            c = min_edge_cover(vs, edges)
            coverable = {v for e in edges for v in e}
            assert coverable <= {v for e in c.edges for v in e}
            assert set(c.isolated) == set(vs) - coverable
            assert len(c) == brute_cover(vs, edges)
            G = nx.Graph(edges)
            mm = len(nx.max_weight_matching(G, maxcardinality=True)) if edges else 0
            assert len(c) == len(coverable) - mm

"""Bipartite maximum matching and minimum edge cover."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Hashable, Iterable

import networkx as nx


@dataclass
class BipartiteGraph:
    left: list[Hashable] = field(default_factory=list)
    right: list[Hashable] = field(default_factory=list)
    edges: list[tuple[Hashable, Hashable]] = field(default_factory=list)

    def __post_init__(self):
        ls, rs = set(self.left), set(self.right)
        for a, b in self.edges:
            if a not in ls or b not in rs:
                raise ValueError(f"edge {(a, b)} does not join left to right")

    def adjacency(self) -> dict:
        adj = {u: [] for u in self.left}
        for a, b in self.edges:
            adj[a].append(b)
        order = {v: i for i, v in enumerate(self.right)}
        for u in adj:
            adj[u] = sorted(set(adj[u]), key=order.__getitem__)
        return adj

    def without_left(self, u: Hashable) -> "BipartiteGraph":
        return BipartiteGraph(
            [v for v in self.left if v != u], list(self.right), [e for e in self.edges if e[0] != u]
        )


INF = float("inf")


def max_matching(g: BipartiteGraph) -> dict:
    """Hopcroft-Karp.  Returns ``{left: right}`` for matched pairs."""
    adj = g.adjacency()
    pair_l: dict = {}
    pair_r: dict = {}
    dist: dict = {}

    def bfs() -> bool:
        queue = deque()
        for u in g.left:
            if u not in pair_l:
                dist[u] = 0
                queue.append(u)
            else:
                dist[u] = INF
        found = False
        while queue:
            u = queue.popleft()
            for v in adj[u]:
                w = pair_r.get(v)
                if w is None:
                    found = True
                elif dist[w] == INF:
                    dist[w] = dist[u] + 1
                    queue.append(w)
        return found

    def dfs(u) -> bool:
        # explicit stack keeps deep augmenting paths off the recursion limit
        stack = [(u, iter(adj[u]))]
        path = []
        while stack:
            node, it = stack[-1]
            advanced = False
            for v in it:
                w = pair_r.get(v)
                if w is None:
                    path.append((node, v))
                    for a, b in path:
                        pair_l[a] = b
                        pair_r[b] = a
                    return True
                if dist[w] == dist[node] + 1:
                    path.append((node, v))
                    stack.append((w, iter(adj[w])))
                    advanced = True
                    break
            if not advanced:
                dist[node] = INF
                stack.pop()
                if path:
                    path.pop()
        return False

    while bfs():
        for u in g.left:
            if u not in pair_l:
                dfs(u)
    return dict(pair_l)


def matching_size(g: BipartiteGraph) -> int:
    return len(max_matching(g))


@dataclass
class EdgeCoverResult:
    edges: list[tuple[Hashable, Hashable]]
    isolated: list[Hashable]

    def __len__(self) -> int:
        return len(self.edges)


def min_edge_cover(vertices: Iterable[Hashable], edges: Iterable[tuple[Hashable, Hashable]]) -> EdgeCoverResult:
    """Minimum edge cover of a general graph.

    Maximum-cardinality matching (blossom algorithm from networkx), then
    each unmatched, non-isolated vertex takes its first incident edge.
    Vertices with no incident edge are reported in ``isolated``.
    """
    vertices = list(vertices)
    order = {v: i for i, v in enumerate(vertices)}
    G = nx.Graph()
    G.add_nodes_from(vertices)
    for a, b in edges:
        if a != b:
            G.add_edge(a, b)
    mate = nx.max_weight_matching(G, maxcardinality=True)
    chosen = [tuple(sorted(e, key=order.__getitem__)) for e in mate]
    chosen.sort(key=lambda e: (order[e[0]], order[e[1]]))
    covered = {v for e in chosen for v in e}
    isolated = []
    for v in vertices:
        if v in covered:
            continue
        nbrs = sorted(G.neighbors(v), key=order.__getitem__)
        if not nbrs:
            isolated.append(v)
            continue
        chosen.append((v, nbrs[0]))
        covered.add(v)
    return EdgeCoverResult(chosen, isolated)

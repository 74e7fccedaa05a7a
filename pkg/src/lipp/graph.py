"""Simple undirected graphs and the traversals every other module leans on.

Vertices are dense integers ``0..n-1``. Edges are stored as ``(u, v)`` with
``u < v``.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Mapping, Sequence

FLOW_TOL = 1e-9

Edge = tuple[int, int]


def _norm(u: int, v: int) -> Edge:
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class Graph:
    n: int
    edges: tuple[Edge, ...]
    adj: tuple[tuple[int, ...], ...] = field(repr=False, compare=False)

    @classmethod
    def from_edges(cls, n: int, pairs: Iterable[tuple[int, int]]) -> "Graph":
        """Build a graph, silently dropping self-loops and repeated edges.

        Use :func:`collapse_edges` first when the number of dropped pairs matters.
        """
        edges, _ = collapse_edges(pairs)
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge {(u, v)} out of range for n={n}")
        nbrs: list[list[int]] = [[] for _ in range(n)]
        for u, v in edges:
            nbrs[u].append(v)
            nbrs[v].append(u)
        adj = tuple(tuple(sorted(a)) for a in nbrs)
        return cls(n, tuple(sorted(edges)), adj)

    @property
    def m(self) -> int:
        return len(self.edges)

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def has_edge(self, u: int, v: int) -> bool:
        return _norm(u, v) in self.edge_set

    @cached_property
    def edge_set(self) -> frozenset[Edge]:
        return frozenset(self.edges)

    def induced(self, vertices: Iterable[int]) -> "Graph":
        """Subgraph induced by ``vertices``, keeping the original ids (other vertices isolated)."""
        keep = set(vertices)
        return Graph.from_edges(self.n, [(u, v) for u, v in self.edges if u in keep and v in keep])


def collapse_edges(pairs: Iterable[tuple[int, int]]) -> tuple[list[Edge], int]:
    """Normalize pairs; return (unique edges in first-seen order, number dropped)."""
    seen: set[Edge] = set()
    out: list[Edge] = []
    dropped = 0
    for u, v in pairs:
        if u == v:
            dropped += 1
            continue
        e = _norm(u, v)
        if e in seen:
            dropped += 1
            continue
        seen.add(e)
        out.append(e)
    return out, dropped


@dataclass(frozen=True)
class TransformedGraph:
    """``G`` plus a dummy vertex ``s = n`` adjacent to every original vertex.

    ``edges_s`` lists the base edges first (in ``base.edges`` order) followed by
    the dummy edges ``(v, s)`` for ``v = 0..n-1``.
    """

    base: Graph
    edges_s: tuple[Edge, ...]
    index: Mapping[Edge, int] = field(repr=False, compare=False)
    delta: tuple[tuple[int, ...], ...] = field(repr=False, compare=False)

    @property
    def s(self) -> int:
        return self.base.n

    @property
    def n(self) -> int:
        return self.base.n

    def dummy_edge(self, v: int) -> int:
        return self.base.m + v

    def edge_index(self, u: int, v: int) -> int:
        return self.index[_norm(u, v)]

    def cut_edges(self, S: Iterable[int]) -> list[int]:
        """Indices of edges of G_s with exactly one end in ``S`` (``S`` a subset of V)."""
        inside = set(S)
        out = []
        for i, (u, v) in enumerate(self.edges_s):
            if (u in inside) != (v in inside):
                out.append(i)
        return out

    def inner_edges(self, S: Iterable[int]) -> list[int]:
        """Indices of edges of G with both ends in ``S``."""
        inside = set(S)
        return [i for i, (u, v) in enumerate(self.base.edges) if u in inside and v in inside]


def transform(g: Graph) -> TransformedGraph:
    s = g.n
    edges_s = tuple(g.edges) + tuple((v, s) for v in range(g.n))
    index = {e: i for i, e in enumerate(edges_s)}
    delta: list[list[int]] = [[] for _ in range(g.n + 1)]
    for i, (u, v) in enumerate(edges_s):
        delta[u].append(i)
        delta[v].append(i)
    return TransformedGraph(g, edges_s, index, tuple(tuple(d) for d in delta))


def _adjacency(g: Graph | Iterable[Edge]) -> dict[int, list[int]]:
    if isinstance(g, Graph):
        return {v: list(g.adj[v]) for v in range(g.n)}
    nbrs: dict[int, list[int]] = {}
    for u, v in g:
        nbrs.setdefault(u, []).append(v)
        nbrs.setdefault(v, []).append(u)
    return nbrs


def bfs_reachable(g: Graph | Iterable[Edge], root: int) -> set[int]:
    """Vertices connected to ``root`` in a graph or in an edge support list."""
    nbrs = _adjacency(g)
    seen = {root}
    queue = deque([root])
    while queue:
        u = queue.popleft()
        for w in nbrs.get(u, ()):
            if w not in seen:
                seen.add(w)
                queue.append(w)
    return seen


def components(g: Graph) -> list[list[int]]:
    seen = [False] * g.n
    out = []
    for r in range(g.n):
        if seen[r]:
            continue
        comp = sorted(bfs_reachable(g, r))
        for v in comp:
            seen[v] = True
        out.append(comp)
    return out


def dfs_back_edge_cycles(
    nbrs: Mapping[int, Sequence[int]], roots: Sequence[int]
) -> list[tuple[int, ...]]:
    """Iterative DFS over ``nbrs``; one cycle per back edge.

    ``roots`` fixes the order in which new trees are started and neighbor lists
    fix the exploration order, so callers control tie-breaking. Each cycle runs
    from the ancestor down the tree path to the descendant that closes it.
    """
    parent: dict[int, int] = {}
    depth: dict[int, int] = {}
    on_stack: set[int] = set()
    cycles: list[tuple[int, ...]] = []
    for r in roots:
        if r in depth:
            continue
        depth[r] = 0
        parent[r] = -1
        on_stack.add(r)
        stack = [(r, iter(nbrs.get(r, ())))]
        while stack:
            u, it = stack[-1]
            for w in it:
                if w == parent[u]:
                    continue
                if w not in depth:
                    depth[w] = depth[u] + 1
                    parent[w] = u
                    on_stack.add(w)
                    stack.append((w, iter(nbrs.get(w, ()))))
                    break
                if w in on_stack:
                    # back edge u -> ancestor w
                    path = [u]
                    while path[-1] != w:
                        path.append(parent[path[-1]])
                    cycles.append(tuple(reversed(path)))
            else:
                stack.pop()
                on_stack.discard(u)
    return cycles


def dfs_cycles(g: Graph) -> list[tuple[int, ...]]:
    """One cycle per back edge of a DFS forest explored in ascending vertex id."""
    return dfs_back_edge_cycles({v: g.adj[v] for v in range(g.n)}, range(g.n))


def enumerate_cycles(g: Graph, limit: int | None = None) -> list[tuple[int, ...]]:
    """All simple cycles of length >= 3, each once.

    Cycles are rooted at their smallest vertex and oriented so the second vertex
    is smaller than the last. Raises ``OverflowError`` past ``limit`` cycles.
    """
    out: list[tuple[int, ...]] = []
    for start in range(g.n):
        path = [start]
        on_path = {start}
        stack = [iter([w for w in g.adj[start] if w > start])]
        while stack:
            for w in stack[-1]:
                if w in on_path:
                    continue
                path.append(w)
                on_path.add(w)
                if len(path) >= 3 and path[1] < w and g.has_edge(w, start):
                    out.append(tuple(path))
                    if limit is not None and len(out) > limit:
                        raise OverflowError(f"more than {limit} cycles")
                stack.append(iter([x for x in g.adj[w] if x > start]))
                break
            else:
                stack.pop()
                on_path.discard(path.pop())
    return out


def _residual_flow(
    n_nodes: int, capacity: Mapping[tuple[int, int], float], source: int, sink: int
) -> tuple[float, list[dict[int, float]]]:
    if source == sink:
        raise ValueError("source and sink must differ")
    res: list[dict[int, float]] = [{} for _ in range(n_nodes)]
    for (u, v), c in capacity.items():
        if c < 0:
            raise ValueError(f"negative capacity on arc {(u, v)}")
        res[u][v] = res[u].get(v, 0.0) + c
        res[v].setdefault(u, 0.0)
    value = 0.0
    while True:
        # shortest augmenting path
        pred = {source: source}
        queue = deque([source])
        while queue and sink not in pred:
            u = queue.popleft()
            for w, c in res[u].items():
                if c > FLOW_TOL and w not in pred:
                    pred[w] = u
                    queue.append(w)
        if sink not in pred:
            return value, res
        push = float("inf")
        w = sink
        while w != source:
            push = min(push, res[pred[w]][w])
            w = pred[w]
        w = sink
        while w != source:
            u = pred[w]
            res[u][w] -= push
            res[w][u] += push
            w = u
        value += push


def max_flow(
    n_nodes: int, capacity: Mapping[tuple[int, int], float], source: int, sink: int
) -> tuple[float, set[int]]:
    """Edmonds-Karp on a directed network with nodes ``0..n_nodes-1``.

    Returns the flow value and the source side of a minimum cut (everything
    reachable from ``source`` in the final residual network).
    """
    value, res = _residual_flow(n_nodes, capacity, source, sink)
    side = {source}
    queue = deque([source])
    while queue:
        u = queue.popleft()
        for w, c in res[u].items():
            if c > FLOW_TOL and w not in side:
                side.add(w)
                queue.append(w)
    return value, side


def min_cut_sink_side(
    n_nodes: int, capacity: Mapping[tuple[int, int], float], source: int, sink: int
) -> tuple[float, set[int]]:
    """Max-flow value and the smallest sink side of a minimum cut.

    The sink side is the set of nodes that can still reach ``sink`` in the
    residual network.
    """
    value, res = _residual_flow(n_nodes, capacity, source, sink)
    side = {sink}
    queue = deque([sink])
    while queue:
        w = queue.popleft()
        for u in res[w]:
            if u not in side and res[u].get(w, 0.0) > FLOW_TOL:
                side.add(u)
                queue.append(u)
    return value, side


def enumerate_maximal_cliques(g: Graph, min_size: int = 1) -> list[frozenset[int]]:
    """Bron-Kerbosch with Tomita pivoting and a degeneracy-ordered outer loop.

    Output is sorted lexicographically by the sorted vertex tuple.
    """
    if min_size < 1:
        raise ValueError("min_size must be >= 1")
    nbr = [set(a) for a in g.adj]
    found: list[tuple[int, ...]] = []

    def expand(R: list[int], P: set[int], X: set[int]) -> None:
        if not P and not X:
            if len(R) >= min_size:
                found.append(tuple(sorted(R)))
            return
        if len(R) + len(P) < min_size:
            return
        pivot = max(P | X, key=lambda u: (len(P & nbr[u]), -u))
        for v in sorted(P - nbr[pivot]):
            expand(R + [v], P & nbr[v], X & nbr[v])
            P.discard(v)
            X.add(v)

    order = degeneracy_order(g)
    for i, v in enumerate(order):
        later = set(order[i + 1 :])
        expand([v], nbr[v] & later, nbr[v] - later)
    found.sort()
    return [frozenset(c) for c in found]


def degeneracy_order(g: Graph) -> list[int]:
    """Repeatedly remove a minimum-degree vertex (ties by id)."""
    deg = [g.degree(v) for v in range(g.n)]
    removed = [False] * g.n
    order = []
    for _ in range(g.n):
        v = min((u for u in range(g.n) if not removed[u]), key=lambda u: (deg[u], u))
        removed[v] = True
        order.append(v)
        for w in g.adj[v]:
            if not removed[w]:
                deg[w] -= 1
    return order


def bfs_distances(g: Graph, root: int) -> dict[int, int]:
    dist = {root: 0}
    queue = deque([root])
    while queue:
        u = queue.popleft()
        for w in g.adj[u]:
            if w not in dist:
                dist[w] = dist[u] + 1
                queue.append(w)
    return dist


def eccentricities(g: Graph) -> tuple[list[int], bool]:
    """Per-vertex eccentricity within its own component, plus a connectivity flag."""
    ecc = []
    connected = True
    for v in range(g.n):
        dist = bfs_distances(g, v)
        if len(dist) < g.n:
            connected = False
        ecc.append(max(dist.values()))
    return ecc, connected

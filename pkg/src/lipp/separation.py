"""Separation oracles for cycle, cutset/subtour and clique rows.

Every oracle takes a :class:`Point` and returns only rows the point violates
by more than ``VIOLATION_TOL``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Sequence

import numpy as np

from .formulation import (
    LinearRow,
    Model,
    bcww_cutset_row,
    cutset_row,
    cycle_row,
    make_clique_rows,
    subtour_row,
)
from .graph import Graph, TransformedGraph, bfs_reachable, dfs_back_edge_cycles, enumerate_maximal_cliques, min_cut_sink_side

VIOLATION_TOL = 1e-6
SUPPORT_TOL = 1e-6


@dataclass(frozen=True)
class Point:
    y: np.ndarray
    x: np.ndarray

    @classmethod
    def from_vector(cls, values: Sequence[float], n: int) -> "Point":
        v = np.asarray(values, dtype=float)
        return cls(v[:n].copy(), v[n:].copy())

    @classmethod
    def from_dicts(cls, tg: TransformedGraph, y: dict[int, float], x: dict[tuple[int, int], float]) -> "Point":
        """Sparse constructor; missing entries are zero. ``x`` keys may use ``tg.s``."""
        yy = np.zeros(tg.n)
        for v, val in y.items():
            yy[v] = val
        xx = np.zeros(len(tg.edges_s))
        for (u, v), val in x.items():
            xx[tg.edge_index(u, v)] = val
        return cls(yy, xx)

    def vector(self) -> np.ndarray:
        return np.concatenate([self.y, self.x])

    def support(self) -> list[int]:
        return [v for v in range(len(self.y)) if self.y[v] > SUPPORT_TOL]


@dataclass
class SeparationResult:
    rows: list[LinearRow] = field(default_factory=list)
    certificates: list[Any] = field(default_factory=list)

    def add(self, row: LinearRow, cert: Any, values: np.ndarray) -> None:
        if row.violation(values) > VIOLATION_TOL:
            self.rows.append(row)
            self.certificates.append(cert)

    def __len__(self) -> int:
        return len(self.rows)

    def extend(self, other: "SeparationResult") -> None:
        self.rows += other.rows
        self.certificates += other.certificates


def _sep_adjacency(g: Graph, keep: set[int], order_key=None) -> dict[int, list[int]]:
    nbrs = {}
    for v in keep:
        ws = [w for w in g.adj[v] if w in keep]
        nbrs[v] = sorted(ws, key=order_key) if order_key else ws
    return nbrs


def separate_cycles_integer(p: Point, g: Graph) -> SeparationResult:
    """DFS in ascending vertex order on the support; every back-edge cycle becomes a row."""
    keep = set(p.support())
    values = p.vector()
    out = SeparationResult()
    for cyc in dfs_back_edge_cycles(_sep_adjacency(g, keep), sorted(keep)):
        out.add(cycle_row(cyc), cyc, values)
    return out


def separate_cycles_fractional(p: Point, g: Graph) -> SeparationResult:
    """Greedy DFS visiting vertices by non-increasing y value; keeps violated back-edge cycles."""
    keep = set(p.support())
    key = lambda v: (-p.y[v], v)  # noqa: E731
    values = p.vector()
    out = SeparationResult()
    for cyc in dfs_back_edge_cycles(_sep_adjacency(g, keep, key), sorted(keep, key=key)):
        out.add(cycle_row(cyc), cyc, values)
    return out


def _connectivity_row(tg: TransformedGraph, S, v, form: str) -> LinearRow:
    if form == "subtour":
        return subtour_row(tg, S, v)
    if form == "bcwwy":
        return bcww_cutset_row(tg, S, v)
    return cutset_row(tg, S, v)


def separate_cutset_integer(p: Point, tg: TransformedGraph, form: str = "cutset") -> SeparationResult:
    """BFS from the dummy vertex over selected edges; unreached components yield one row per vertex.

    ``form`` picks the row written for each (S, v): ``cutset``, ``subtour`` or
    the x-only ``bcwwy`` variant.
    """
    selected = [tg.edges_s[e] for e in range(len(tg.edges_s)) if p.x[e] >= 1 - SUPPORT_TOL]
    reached = bfs_reachable(selected, tg.s)
    inner = [(u, v) for u, v in selected if u != tg.s and v != tg.s]
    values = p.vector()
    out = SeparationResult()
    done: set[int] = set()
    for v in p.support():
        if v in reached or v in done:
            continue
        comp = bfs_reachable(inner, v)
        done |= comp
        S = frozenset(comp)
        for u in sorted(comp):
            if p.y[u] > SUPPORT_TOL:
                out.add(_connectivity_row(tg, S, u, form), (S, u), values)
    return out


def flow_network(p: Point, tg: TransformedGraph) -> dict[tuple[int, int], float]:
    """Two opposite arcs per edge of G_s, both with capacity x_e."""
    cap: dict[tuple[int, int], float] = {}
    for e, (u, v) in enumerate(tg.edges_s):
        c = float(p.x[e])
        if c > 0:
            cap[(u, v)] = c
            cap[(v, u)] = c
    return cap


def min_cut_to(p: Point, tg: TransformedGraph, v: int, cap=None) -> tuple[float, frozenset[int]]:
    """Minimum s-v cut value and its smallest v-side S (a subset of V)."""
    cap = flow_network(p, tg) if cap is None else cap
    value, side = min_cut_sink_side(tg.n + 1, cap, tg.s, v)
    return value, frozenset(side)


def separate_cutset_fractional(p: Point, tg: TransformedGraph, form: str = "cutset") -> SeparationResult:
    """Exact: one max-flow from the dummy vertex to every supported vertex."""
    values = p.vector()
    cap = flow_network(p, tg)
    if form == "bcwwy":
        # x-only rows: the demand at v is its own degree in x
        demand = {v: float(sum(p.x[e] for e in tg.delta[v])) for v in range(tg.n)}
    else:
        demand = {v: 2 * float(p.y[v]) for v in range(tg.n)}
    out = SeparationResult()
    for v in range(tg.n):
        if demand[v] <= SUPPORT_TOL:
            continue
        value, S = min_cut_to(p, tg, v, cap)
        if value < demand[v] - VIOLATION_TOL:
            out.add(_connectivity_row(tg, S, v, form), (S, v), values)
    return out


def greedy_clique(p: Point, g: Graph) -> list[int]:
    keep = p.support()
    deg = {v: sum(1 for w in g.adj[v] if p.y[w] > SUPPORT_TOL) for v in keep}
    order = sorted(keep, key=lambda v: (-p.y[v], -deg[v], v))
    K: list[int] = []
    for v in order:
        if all(g.has_edge(v, u) for u in K):
            K.append(v)
    return K


def lift_clique(K: Sequence[int], g: Graph) -> list[int]:
    """Greedily extend ``K`` to a maximal clique of ``g``, highest degree first."""
    K = list(K)
    inside = set(K)
    cands = [v for v in range(g.n) if v not in inside and all(g.has_edge(v, u) for u in K)]
    for v in sorted(cands, key=lambda v: (-g.degree(v), v)):
        if all(g.has_edge(v, u) for u in K):
            K.append(v)
    return K


def separate_cliques(p: Point, g: Graph) -> SeparationResult:
    """One greedy clique of the support; lifted and returned when its y-sum exceeds 2."""
    out = SeparationResult()
    K = greedy_clique(p, g)
    if len(K) < 3 or float(sum(p.y[v] for v in K)) <= 2 + VIOLATION_TOL:
        return out
    lifted = frozenset(lift_clique(K, g))
    out.add(make_clique_rows([lifted], "onY")[0], lifted, p.vector())
    return out


@dataclass(frozen=True)
class CliquePolicy:
    add_all: bool
    cliques: list[frozenset[int]]


def apriori_clique_policy(g: Graph, max_cl: int = 500) -> CliquePolicy:
    """Add every maximal clique (size >= 3) up front when there are at most ``max_cl`` of them."""
    if max_cl < 0:
        raise ValueError("max_cl must be >= 0")
    cliques = enumerate_maximal_cliques(g, 3)
    if len(cliques) <= max_cl:
        return CliquePolicy(True, cliques)
    return CliquePolicy(False, [])


def integer_separators(model: Model):
    """Callables (point -> SeparationResult) run on integral candidates."""
    g, tg = model.tg.base, model.tg
    if model.tag == "cec":
        return [lambda p: separate_cycles_integer(p, g)]
    form = "bcwwy" if model.tag == "bcwwy" else ("subtour" if "subtour" in model.dynamic_families else "cutset")
    return [lambda p: separate_cutset_integer(p, tg, form)]


def fractional_separators(model: Model):
    g, tg = model.tg.base, model.tg
    if model.tag == "cec":
        return [lambda p: separate_cycles_fractional(p, g)]
    form = "bcwwy" if model.tag == "bcwwy" else ("subtour" if "subtour" in model.dynamic_families else "cutset")
    return [lambda p: separate_cutset_fractional(p, tg, form)]

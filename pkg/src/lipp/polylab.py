"""Empirical checks on the three relaxation polyhedra and on clique-row strength.

Membership is decided exactly: static rows directly, cycle rows by full
enumeration, cutset rows by max-flow. Root bounds come from cutting-plane
loops with exact separators.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass, field
from typing import Iterable

import numpy as np

from .formulation import build, cutset_row, cycle_row, bcww_cutset_row
from .graph import Graph, enumerate_cycles, transform
from .heuristic import PathSolution, verify_induced_path
from .lp import FEAS_TOL, OPTIMAL, LpProblem, lp_solve
from .separation import Point, flow_network, min_cut_to

CYCLE_LIMIT = 10**6
BRUTE_FORCE_MAX_N = 16


@dataclass
class MembershipVerdict:
    feasible: bool
    violated: list[tuple[str, object, float]] = field(default_factory=list)


def encode_path(seq: Iterable[int], g: Graph) -> Point:
    """0/1 point of an induced path (the dummy vertex closes it into a cycle)."""
    tg = transform(g)
    seq = list(seq)
    y = {v: 1.0 for v in seq}
    x = {(a, b): 1.0 for a, b in zip(seq, seq[1:])}
    x[(seq[0], tg.s)] = 1.0
    x[(seq[-1], tg.s)] = 1.0
    if len(seq) == 1:
        raise ValueError("a single vertex cannot be encoded (needs two dummy edges)")
    return Point.from_dicts(tg, y, x)


def check_membership(p: Point, g: Graph, which: str, tol: float = FEAS_TOL) -> MembershipVerdict:
    """Decide whether ``p`` lies in Qcec, Qcut or Qbcwwy."""
    tg = transform(g)
    model = build(tg, {"Qcec": "cec", "Qcut": "cut", "Qbcwwy": "bcwwy"}[which])
    values = p.vector()
    violated: list[tuple[str, object, float]] = []
    for j, val in enumerate(values):
        if val < -tol or val > 1 + tol:
            violated.append(("bounds", j, float(max(-val, val - 1))))
    for i, row in enumerate(model.static_rows):
        amount = row.violation(values)
        if amount > tol:
            violated.append((row.family, i, amount))
    if which == "Qcec":
        if g.n > 20:
            cycles = enumerate_cycles(g, limit=CYCLE_LIMIT)
        else:
            cycles = enumerate_cycles(g)
        for cyc in cycles:
            amount = cycle_row(cyc).violation(values)
            if amount > tol:
                violated.append(("cycle", cyc, amount))
    else:
        cap = flow_network(p, tg)
        for v in range(g.n):
            value, S = min_cut_to(p, tg, v, cap)
            if which == "Qcut":
                demand = 2 * p.y[v]
            else:
                demand = float(sum(p.x[e] for e in tg.delta[v]))
            if demand - value > tol:
                violated.append(("cutset", (S, v), float(demand - value)))
    return MembershipVerdict(not violated, violated)


def check_clique_point(p: Point, clique: Iterable[int], g: Graph) -> tuple[bool, bool, tuple[float, float]]:
    """Edge-sum against 1 and vertex-sum against 2 for one clique.

    Returns ``(satisfies_x, satisfies_y, (edge_sum, vertex_sum))``.
    """
    K = sorted(clique)
    for i, u in enumerate(K):
        for v in K[i + 1 :]:
            if not g.has_edge(u, v):
                raise ValueError(f"{K} is not a clique")
    tg = transform(g)
    edge_sum = float(sum(p.x[e] for e in tg.inner_edges(K)))
    vertex_sum = float(sum(p.y[v] for v in K))
    return edge_sum <= 1 + FEAS_TOL, vertex_sum <= 2 + FEAS_TOL, (edge_sum, vertex_sum)


def min_weight_cycle(g: Graph, w: np.ndarray) -> tuple[float, tuple[int, ...] | None]:
    """Cheapest cycle under nonnegative vertex weights (Dijkstra per edge)."""
    best, best_cyc = np.inf, None
    for a, b in g.edges:
        # shortest a -> b path avoiding the edge ab, vertex-weighted
        dist = {a: w[a]}
        prev = {a: -1}
        heap = [(w[a], a)]
        while heap:
            d, u = heapq.heappop(heap)
            if d > dist[u] or d >= best:
                continue
            if u == b:
                break
            for x in g.adj[u]:
                if u == a and x == b:
                    continue
                nd = d + w[x]
                if nd < dist.get(x, np.inf):
                    dist[x] = nd
                    prev[x] = u
                    heapq.heappush(heap, (nd, x))
        if b in dist and dist[b] < best:
            path = [b]
            while prev[path[-1]] != -1:
                path.append(prev[path[-1]])
            if len(path) >= 3:
                best, best_cyc = dist[b], tuple(reversed(path))
    return best, best_cyc


def _closure_bound(g: Graph, formulation: str, max_rounds: int = 10_000, on_lp=None) -> float:
    tg = transform(g)
    model = build(tg, formulation)
    lp = LpProblem(model.vars.n_cols, model.objective_vector(), model.static_rows)
    for _ in range(max_rounds):
        sol = lp_solve(lp)
        if sol.status != OPTIMAL:
            raise RuntimeError(f"root LP status {sol.status}")
        p = Point.from_vector(sol.values, g.n)
        if on_lp is not None:
            on_lp(p, model)
        rows = []
        if formulation == "cec":
            weight, cyc = min_weight_cycle(g, 1.0 - np.clip(p.y, 0.0, 1.0))
            if cyc is not None and weight < 1 - 1e-9:
                rows.append(cycle_row(cyc))
        else:
            cap = flow_network(p, tg)
            for v in range(g.n):
                demand = 2 * p.y[v] if formulation == "cut" else float(sum(p.x[e] for e in tg.delta[v]))
                if demand <= 1e-9:
                    continue
                value, S = min_cut_to(p, tg, v, cap)
                if value < demand - 1e-9:
                    rows.append(cutset_row(tg, S, v) if formulation == "cut" else bcww_cutset_row(tg, S, v))
        if not rows:
            return model.report_value(sol.objective)
        lp.add_rows(rows)
    raise RuntimeError("cutting-plane loop did not converge")


@dataclass(frozen=True)
class RootBounds:
    cec: float
    cut: float
    bcwwy: float


def compare_root_bounds(g: Graph, on_lp=None) -> RootBounds:
    """LP optimum of each fully closed relaxation, in vertex units."""
    if g.m <= 1:
        raise ValueError("relaxations need at least two edges")
    return RootBounds(
        _closure_bound(g, "cec", on_lp=on_lp),
        _closure_bound(g, "cut", on_lp=on_lp),
        _closure_bound(g, "bcwwy", on_lp=on_lp),
    )


def brute_force_lipp(g: Graph) -> PathSolution:
    """Exhaustive backtracking over induced extensions from every start vertex."""
    if g.n > BRUTE_FORCE_MAX_N:
        raise ValueError(f"brute force limited to n <= {BRUTE_FORCE_MAX_N}")
    if g.n == 0:
        raise ValueError("graph has no vertices")
    nbr = [0] * g.n
    for u, v in g.edges:
        nbr[u] |= 1 << v
        nbr[v] |= 1 << u
    best = [0]

    def extend(path: list[int], closed: int) -> None:
        # closed: path vertices and every neighbour of a non-tail path vertex
        nonlocal best
        if len(path) > len(best):
            best = list(path)
        tail = path[-1]
        cand = nbr[tail] & ~closed
        while cand:
            low = cand & -cand
            w = low.bit_length() - 1
            cand ^= low
            path.append(w)
            extend(path, closed | nbr[tail] | low)
            path.pop()

    for v in range(g.n):
        extend([v], 1 << v)
    ok, why = verify_induced_path(best, g)
    assert ok, why
    return PathSolution(tuple(best))


def all_induced_paths_count(g: Graph) -> int:
    """Number of tail-maximal induced paths summed over all sources (what ghlipp enumerates)."""
    from .heuristic import maximal_induced_paths

    return sum(1 for v in range(g.n) for _ in maximal_induced_paths(g, v))

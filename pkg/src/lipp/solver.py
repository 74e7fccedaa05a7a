"""Branch-and-cut for the longest induced path problem."""

from __future__ import annotations

import heapq
import itertools
import logging
import math
import time
from collections import Counter
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .formulation import Model, build, make_clique_rows
from .graph import Graph, TransformedGraph, transform
from .heuristic import PathSolution, verify_induced_path
from .lp import INFEASIBLE, INT_TOL, OPTIMAL, LpProblem, lp_solve
from .separation import (
    Point,
    apriori_clique_policy,
    fractional_separators,
    integer_separators,
    separate_cliques,
)

log = logging.getLogger(__name__)

FORMULATIONS = ("cec", "cut", "bcwwy")
CLIQUE_MODES = ("apriori", "separate", "off")


class DecodeError(RuntimeError):
    """An integral point that does not encode one induced path (a cut is missing)."""


@dataclass
class SolverConfig:
    formulation: str = "cec"
    clique_mode: str = "apriori"
    max_cl: int = 500
    cut_variant: str = "cutset"
    time_limit: float = 1200.0
    gap_tol: float = 1e-6
    root_only_fractional: bool = True
    warm_start: PathSolution | None = None
    seed: int = 0
    threads: int = 1
    max_root_rounds: int = 50

    def __post_init__(self):
        if self.formulation not in FORMULATIONS:
            raise ValueError(f"unknown formulation {self.formulation!r}")
        if self.clique_mode not in CLIQUE_MODES:
            raise ValueError(f"unknown clique mode {self.clique_mode!r}")
        if self.cut_variant not in ("cutset", "subtour"):
            raise ValueError(f"unknown cut variant {self.cut_variant!r}")
        if self.gap_tol <= 0 or self.time_limit <= 0:
            raise ValueError("gap_tol and time_limit must be positive")
        if self.threads != 1:
            raise ValueError("the solver is single-threaded")


@dataclass
class SolveReport:
    status: str
    incumbent: PathSolution | None
    objective: int
    best_bound: float
    gap_percent: float
    nodes: int
    cuts: dict[str, int]
    root_bound: float
    timings: dict[str, float] = field(default_factory=dict)
    apriori_cliques: int = 0


def gap_percent(best_bound: float, objective: int) -> float:
    if not objective:
        return math.inf
    return max(0.0, 100.0 * (best_bound - objective) / objective)


def decode_path(p: Point, tg: TransformedGraph) -> PathSolution:
    """Walk from one dummy neighbour to the other along selected edges."""
    n = tg.n
    ends = [v for v in range(n) if p.x[tg.dummy_edge(v)] > 0.5]
    if len(ends) != 2:
        raise DecodeError(f"expected two path ends, found {len(ends)}")
    nbrs: dict[int, list[int]] = {}
    for e, (u, v) in enumerate(tg.base.edges):
        if p.x[e] > 0.5:
            nbrs.setdefault(u, []).append(v)
            nbrs.setdefault(v, []).append(u)
    seq = [ends[0]]
    prev = tg.s
    while seq[-1] != ends[1]:
        nxt = [w for w in nbrs.get(seq[-1], []) if w != prev]
        if len(nxt) != 1 or len(seq) > n:
            raise DecodeError(f"walk broke at vertex {seq[-1]}")
        prev = seq[-1]
        seq.append(nxt[0])
    selected = {v for v in range(n) if p.y[v] > 0.5}
    if selected != set(seq):
        raise DecodeError(f"selection not connected: {sorted(selected - set(seq))} left over")
    return PathSolution(tuple(seq))


def choose_branch(p: Point, model: Model) -> int:
    """Most fractional y column (ties: higher degree, lower id); x columns only once y is integral."""
    g = model.tg.base

    def pick(vals: np.ndarray, tiebreak) -> int | None:
        frac = np.abs(vals - np.round(vals))
        idx = [i for i in range(len(vals)) if frac[i] > INT_TOL]
        if not idx:
            return None
        dist = {i: abs(vals[i] - math.floor(vals[i]) - 0.5) for i in idx}
        best = min(dist.values())
        tied = [i for i in idx if dist[i] <= best + 1e-9]
        return min(tied, key=tiebreak)

    v = pick(p.y, lambda i: (-g.degree(i), i))
    if v is not None:
        return model.vars.y(v)
    e = pick(p.x, lambda i: i)
    if e is not None:
        return model.vars.x(e)
    raise ValueError("point is integral; nothing to branch on")


def _trivial(g: Graph, t0: float) -> SolveReport:
    if g.m == 1:
        path = PathSolution(g.edges[0])
    else:
        path = PathSolution((0,))
    k = path.cardinality
    return SolveReport("Optimal", path, k, float(k), 0.0, 0, {}, float(k), {"total": time.monotonic() - t0})


def solve(g: Graph, cfg: SolverConfig | None = None, on_lp: Callable[[Point, Model], None] | None = None) -> SolveReport:
    """Solve to optimality (or the time limit).

    ``on_lp`` is called with every optimal LP point and the model, which lets
    callers audit relaxations without reaching into the solver.
    """
    cfg = cfg or SolverConfig()
    t0 = time.monotonic()
    if g.n == 0:
        raise ValueError("graph has no vertices")
    if g.m <= 1:
        return _trivial(g, t0)

    deadline = t0 + cfg.time_limit
    tg = transform(g)
    model = build(tg, cfg.formulation, cfg.cut_variant)
    lp = LpProblem(model.vars.n_cols, model.objective_vector(), model.static_rows)
    timings = Counter()

    separate_clq = cfg.clique_mode == "separate"
    n_apriori = 0
    if cfg.clique_mode == "apriori":
        policy = apriori_clique_policy(g, cfg.max_cl)
        if policy.add_all:
            variant = "onX" if model.tag == "bcwwy" else "onY"
            rows = make_clique_rows(policy.cliques, variant, tg)
            lp.add_rows(rows)
            n_apriori = len(rows)
        else:
            separate_clq = True
    int_seps = integer_separators(model)
    frac_seps = fractional_separators(model)
    if separate_clq:
        int_seps = int_seps + [lambda p: separate_cliques(p, g)]
        frac_seps = frac_seps + [lambda p: separate_cliques(p, g)]
    timings["build"] = time.monotonic() - t0

    incumbent: PathSolution | None = None
    if cfg.warm_start is not None:
        ok, why = verify_induced_path(cfg.warm_start.sequence, g)
        if ok:
            incumbent = cfg.warm_start
        else:
            log.warning("ignoring invalid warm start: %s", why)
    inc_val = incumbent.cardinality if incumbent else 0

    cuts: Counter = Counter()
    n = g.n
    ids = itertools.count()
    root_lb, root_ub = lp.lb.copy(), lp.ub.copy()
    # heap entries: (-bound, -depth, id, lb, ub)
    heap = [(-float(n), 0, next(ids), root_lb, root_ub)]
    nodes = 0
    root_bound = math.inf
    best_bound = math.inf
    status = "Optimal"

    def run(seps, p: Point) -> list:
        ts = time.monotonic()
        rows = []
        for sep in seps:
            rows += sep(p).rows
        timings["separation"] += time.monotonic() - ts
        return rows

    def can_improve(bound: float) -> bool:
        return math.floor(bound + INT_TOL) > inc_val

    while heap:
        open_bound = -heap[0][0]
        best_bound = min(best_bound, max(open_bound, inc_val))
        if time.monotonic() > deadline:
            status = "TimeLimit"
            break
        neg_bound, neg_depth, _, lb, ub = heapq.heappop(heap)
        if not can_improve(-neg_bound):
            continue
        nodes += 1
        at_root = nodes == 1
        depth = -neg_depth
        rounds = 0
        branch_col = None
        node_bound = -neg_bound
        while True:
            lp.set_bounds(lb, ub)
            ts = time.monotonic()
            sol = lp_solve(lp)
            timings["lp"] += time.monotonic() - ts
            if sol.status == INFEASIBLE:
                break
            if sol.status != OPTIMAL:
                raise RuntimeError(f"LP solver returned {sol.status}")
            node_bound = model.report_value(sol.objective)
            p = Point.from_vector(sol.values, n)
            if on_lp is not None:
                on_lp(p, model)
            if at_root:
                root_bound = node_bound
            if not can_improve(node_bound):
                break
            if np.all(np.abs(sol.values - np.round(sol.values)) <= INT_TOL):
                rows = run(int_seps, p)
                if rows:
                    lp.add_rows(rows)
                    cuts.update(r.family for r in rows)
                    continue
                path = decode_path(p, tg)
                ok, why = verify_induced_path(path.sequence, g)
                if not ok:
                    raise DecodeError(f"decoded sequence is not an induced path: {why}")
                if path.cardinality > inc_val:
                    incumbent, inc_val = path, path.cardinality
                break
            y_integral = bool(np.all(np.abs(p.y - np.round(p.y)) <= INT_TOL))
            may_separate = at_root or not cfg.root_only_fractional or y_integral
            if may_separate and rounds < cfg.max_root_rounds:
                rows = run(frac_seps, p)
                if rows:
                    lp.add_rows(rows)
                    cuts.update(r.family for r in rows)
                    rounds += 1
                    continue
            branch_col = choose_branch(p, model)
            break
        if branch_col is not None:
            for val in (1.0, 0.0):
                clb, cub = lb.copy(), ub.copy()
                clb[branch_col] = cub[branch_col] = val
                heapq.heappush(heap, (-node_bound, -(depth + 1), next(ids), clb, cub))

    if status == "Optimal":
        best_bound = float(inc_val)
    else:
        best_bound = min(best_bound, max([-h[0] for h in heap] + [inc_val]))
    if root_bound == math.inf:
        root_bound = best_bound
    timings["total"] = time.monotonic() - t0
    return SolveReport(
        status,
        incumbent,
        inc_val,
        best_bound,
        gap_percent(best_bound, inc_val),
        nodes,
        dict(cuts),
        root_bound,
        dict(timings),
        n_apriori,
    )

"""Acceptance criteria 1-10, one test each.

Every test records a PASS/FAIL/SKIP line (printed in the terminal summary)
before asserting, so a failing criterion still reports its numbers.
"""

import math
import os
import random
import time
import warnings
from pathlib import Path

import numpy as np
import pytest

import lipp.solver
from conftest import record
from lipp.graph import Graph, transform
from lipp.heuristic import ghlipp, verify_induced_path
from lipp.instances import generate_hypercube, read_instance
from lipp.polylab import all_induced_paths_count, brute_force_lipp, check_clique_point, check_membership, compare_root_bounds
from lipp.separation import (
    Point,
    separate_cliques,
    separate_cutset_fractional,
    separate_cutset_integer,
    separate_cycles_fractional,
    separate_cycles_integer,
)
from lipp.solver import SolverConfig, solve
from oracles import cut_value, density_graph, exhaustive_min_cuts, g4_point, y_tight_point, x_tight_point, g4

FORMS = ("cec", "cut", "bcwwy")
DATA = Path(__file__).parent / "data"

ORACLE_GRAPHS = 200
ORACLE_N = (4, 12)
BOUND_SUITE = 50
WARM_GRAPHS = 50
WARM_N = (10, 14)
SWEEP_GRAPHS = 20
SWEEP_POINTS = 10_000
SWEEP_EXHAUSTIVE_N = 8
RWC_OPT = {"karate": 9, "high-tech": 13, "mexican": 16, "sawmill": 18, "chesapeake": 16, "attiro": 31}
RWC_LIMIT = 300.0
CUBE_LIMIT = 60.0
IDENTITY_TOL = 1e-7
DEGREE_TOL = 1e-7
BOUND_TOL = 1e-6
WITNESS_GAP = 1e-3
VIOLATION_TOL = 1e-6


class IdentityAudit:
    """on_lp callback: checks sum y = sum_E x + 1 at every LP point on the degree equations."""

    def __init__(self):
        self.checked = 0
        self.skipped = 0
        self.worst = 0.0

    def __call__(self, p: Point, model) -> None:
        vals = p.vector()
        eq_fams = ("linking", "dummyDegree") if model.tag == "bcwwy" else ("degree", "dummyDegree")
        rows = [r for r in model.static_rows if r.family in eq_fams]
        if max(abs(r.violation(vals)) for r in rows) > DEGREE_TOL:
            self.skipped += 1
            return
        m = model.tg.base.m
        self.checked += 1
        self.worst = max(self.worst, abs(p.y.sum() - p.x[:m].sum() - 1))


@pytest.fixture(scope="module")
def oracle_runs():
    audit = IdentityAudit()
    rng = random.Random(20240601)
    mismatches = []
    t0 = time.monotonic()
    for i in range(ORACLE_GRAPHS):
        g = density_graph(rng, *ORACLE_N)
        opt = brute_force_lipp(g).cardinality
        for form in FORMS:
            rep = solve(g, SolverConfig(formulation=form), on_lp=audit)
            ok = rep.status == "Optimal" and rep.objective == opt and verify_induced_path(rep.incumbent.sequence, g)[0]
            if not ok:
                mismatches.append((i, form, rep.status, rep.objective, opt))
    return mismatches, time.monotonic() - t0, audit


def two_triangles_joined(path_len: int) -> Graph:
    edges = [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)]
    prev, nxt = 2, 6
    for _ in range(path_len - 1):
        edges.append((prev, nxt))
        prev, nxt = nxt, nxt + 1
    edges.append((prev, 3))
    return Graph.from_edges(nxt, edges)


@pytest.fixture(scope="module")
def bound_runs():
    audit = IdentityAudit()
    rng = random.Random(77)
    suite = [("G4", g4())] + [(f"triangles+path{k}", two_triangles_joined(k)) for k in (2, 3)]
    while len(suite) < BOUND_SUITE:
        suite.append((f"random{len(suite)}", density_graph(rng, 4, 12)))
    results = [(name, g, compare_root_bounds(g, on_lp=audit)) for name, g in suite]
    return results, audit


def test_criterion_01_oracle_equivalence(oracle_runs):
    mismatches, secs, _ = oracle_runs
    ok = not mismatches and secs < 600
    record(1, ok, f"{ORACLE_GRAPHS} graphs x {len(FORMS)} formulations, {len(mismatches)} mismatches, {secs:.0f}s (limit 600s)")
    assert not mismatches, mismatches[:5]
    assert secs < 600


def test_criterion_02_g4_point():
    g, p = g4_point()
    opt = brute_force_lipp(g).cardinality
    objs = {f: solve(g, SolverConfig(formulation=f)).objective for f in FORMS}
    in_cec = check_membership(p, g, "Qcec").feasible
    cut = check_membership(p, g, "Qcut")
    certs = {c for fam, c, _ in cut.violated if fam == "cutset"}
    amounts = [a for fam, _, a in cut.violated if fam == "cutset"]
    S_abc = frozenset({0, 1, 2})
    ok = (
        opt == 4
        and all(v == 4 for v in objs.values())
        and in_cec
        and not cut.feasible
        and any(S == S_abc for S, _ in certs)
        and all(S == S_abc for S, _ in certs)
        and all(abs(a - 4 / 3) <= 1e-12 for a in amounts)
    )
    record(2, ok, f"OPT {objs} (brute force {opt}); Qcec feasible={in_cec}; Qcut certificates {sorted((sorted(S), v) for S, v in certs)} violation {amounts[:1]}")
    assert ok


def test_criterion_03_polyhedral_ordering(bound_runs):
    results, _ = bound_runs
    not_le = [(n, b) for n, _, b in results if b.cut > b.cec + BOUND_TOL]
    not_eq = [(n, b) for n, _, b in results if abs(b.cut - b.bcwwy) > BOUND_TOL]
    witness = [n for n, _, b in results if b.cut < b.cec - WITNESS_GAP]
    g4b = results[0][2]
    ok = not not_le and not not_eq and bool(witness)
    record(
        3,
        ok,
        f"{len(results)} graphs: zCut>zCec on {len(not_le)}, |zCut-zBcwwy|>1e-6 on {len(not_eq)}, "
        f"strict zCut<zCec on {len(witness)}; G4 zCec={g4b.cec:.4f} zCut={g4b.cut:.4f} zBcwwy={g4b.bcwwy:.4f}",
    )
    assert not not_le, not_le[:3]
    assert not not_eq, not_eq[:3]
    assert witness


def test_criterion_04_clique_strength():
    gy, py = y_tight_point()
    _, _, (exy, vyy) = check_clique_point(py, {2, 3, 4}, gy)
    gx, px = x_tight_point()
    _, _, (exx, vyx) = check_clique_point(px, {2, 3, 4}, gx)
    ok = (
        abs(vyy - 2) <= 1e-12
        and abs(exy - 4 / 3) <= 1e-9
        and abs(exx - 1) <= 1e-12
        and abs(vyx - 13 / 6) <= 1e-9
    )
    record(4, ok, f"y-tight point: y-sum {vyy:.12g} edge-sum {exy:.12g}; x-tight point: edge-sum {exx:.12g} y-sum {vyx:.12g}")
    assert ok


def _rwc_dirs():
    env = os.environ.get("LIPP_RWC_DIR")
    return ([Path(env)] if env else []) + [DATA / "rwc"]


def _find_rwc(name):
    for d in _rwc_dirs():
        if not d.is_dir():
            continue
        for f in sorted(d.iterdir()):
            if f.stem.lower() == name:
                return f
    return None


def test_criterion_05_rwc_spot_checks():
    found = {name: _find_rwc(name) for name in RWC_OPT}
    missing = [n for n, f in found.items() if f is None]
    if missing:
        warnings.warn(f"RWC instance files not found (set LIPP_RWC_DIR): {', '.join(missing)}")
    present = {n: f for n, f in found.items() if f is not None}
    if not present:
        record(5, None, "no RWC instance files available")
        pytest.skip("no RWC instance files available")
    lines, ok = [], True
    for name, path in present.items():
        g, _ = read_instance(path)
        best = None
        for form in ("cec", "cut"):
            t = time.monotonic()
            rep = solve(g, SolverConfig(formulation=form, time_limit=RWC_LIMIT))
            secs = time.monotonic() - t
            if rep.status == "Optimal" and rep.objective == RWC_OPT[name] and secs <= RWC_LIMIT:
                best = (form, secs)
                break
        ok &= best is not None
        lines.append(f"{name}={RWC_OPT[name]} " + (f"via {best[0]} in {best[1]:.1f}s" if best else "NOT reproduced"))
    detail = "; ".join(lines) + (f"; missing files: {', '.join(missing)}" if missing else "")
    record(5, ok, detail)
    assert ok


def test_criterion_06_snake_in_the_box():
    g = generate_hypercube(4)
    opt = brute_force_lipp(g).cardinality
    t = time.monotonic()
    rep = solve(g, SolverConfig(formulation="cec", time_limit=CUBE_LIMIT))
    secs = time.monotonic() - t
    ok = rep.status == "Optimal" and rep.objective == opt and secs <= CUBE_LIMIT
    record(6, ok, f"4-cube cec objective {rep.objective} vs brute force {opt}, {secs:.1f}s (limit {CUBE_LIMIT:.0f}s)")
    assert ok


def test_criterion_07_warm_start():
    rng = random.Random(4242)
    bad, exhaustive = [], 0
    for i in range(WARM_GRAPHS):
        g = density_graph(rng, *WARM_N)
        opt = brute_force_lipp(g).cardinality
        h = ghlipp(g)
        rep = solve(g, SolverConfig(warm_start=h))
        if not (rep.objective >= h.cardinality and h.cardinality <= opt and rep.objective == opt):
            bad.append((i, h.cardinality, rep.objective, opt))
        if all_induced_paths_count(g) < 5000:
            exhaustive += 1
            if h.cardinality != opt:
                bad.append((i, "exhaustive", h.cardinality, opt))
    ok = not bad
    record(7, ok, f"{WARM_GRAPHS} graphs n in {list(WARM_N)}, {exhaustive} with maxpaths > induced-path count, {len(bad)} violations")
    assert ok, bad[:5]


def _sweep_points(g, rng, k):
    tg = transform(g)
    e = len(tg.edges_s)
    for i in range(k):
        kind = i % 4
        if kind == 0:
            yield Point(rng.uniform(0, 1, g.n), rng.uniform(0, 1, e))
        elif kind == 1:
            yield Point(rng.uniform(0, 1, g.n) * (rng.uniform(size=g.n) < 0.7), rng.uniform(0, 1, e) * (rng.uniform(size=e) < 0.4))
        elif kind == 2:
            yield Point(rng.integers(0, 2, g.n).astype(float), rng.integers(0, 2, e).astype(float))
        else:
            # degree-consistent: y from x, dummy edges scaled to 2
            x = rng.uniform(0, 1, e) * (rng.uniform(size=e) < 0.5)
            dummy = [tg.dummy_edge(v) for v in range(g.n)]
            if x[dummy].sum() > 0:
                x[dummy] *= 2 / x[dummy].sum()
            y = np.array([0.5 * x[list(tg.delta[v])].sum() for v in range(g.n)])
            yield Point(np.clip(y, 0, 1), np.clip(x, 0, 1))


def _independent_violation(kind, cert, p, tg):
    if kind == "cycle":
        return sum(p.y[v] for v in cert) - (len(cert) - 1)
    if kind == "clique":
        return sum(p.y[v] for v in cert) - 2
    S, v = cert
    if kind == "cutset":
        return 2 * p.y[v] - cut_value(tg, p.x, S)
    if kind == "subtour":
        inner = sum(p.x[e] for e, (a, b) in enumerate(tg.edges_s) if a in S and b in S)
        return inner - sum(p.y[u] for u in S if u != v)
    if kind == "bcwwy":
        return sum(p.x[e] for e in tg.delta[v]) - cut_value(tg, p.x, S)
    raise ValueError(kind)


def test_criterion_08_separation_sweep():
    rng = np.random.default_rng(808)
    prng = random.Random(808)
    t0 = time.monotonic()
    graphs = [density_graph(prng, 4, 10) for _ in range(SWEEP_GRAPHS - 4)]
    graphs += [g4(), y_tight_point()[0], x_tight_point()[0], generate_hypercube(3)]
    per_graph = SWEEP_POINTS // len(graphs)
    unsound, disagree, emitted, exhaustive_checked, points = [], [], 0, 0, 0
    for gi, g in enumerate(graphs):
        tg = transform(g)
        for p in _sweep_points(g, rng, per_graph):
            points += 1
            integral = bool(np.all(p.y == np.round(p.y)) and np.all(p.x == np.round(p.x)))
            calls = [("cycle", separate_cycles_fractional(p, g)), ("clique", separate_cliques(p, g))]
            for form in ("cutset", "subtour", "bcwwy"):
                calls.append((form, separate_cutset_fractional(p, tg, form)))
            if integral:
                calls.append(("cycle", separate_cycles_integer(p, g)))
                for form in ("cutset", "subtour", "bcwwy"):
                    calls.append((form, separate_cutset_integer(p, tg, form)))
            vals = p.vector()
            for kind, res in calls:
                for row, cert in zip(res.rows, res.certificates):
                    emitted += 1
                    indep = _independent_violation(kind, cert, p, tg)
                    if not (indep > VIOLATION_TOL and abs(indep - row.violation(vals)) <= 1e-9):
                        unsound.append((gi, kind, cert, indep, row.violation(vals)))
            if g.n <= SWEEP_EXHAUSTIVE_N:
                exhaustive_checked += 1
                best = exhaustive_min_cuts(tg, p.x)
                want = {v for v in range(g.n) if p.y[v] > 1e-6 and 2 * p.y[v] - best[v] > VIOLATION_TOL}
                got = {v for _, v in calls[2][1].certificates}
                if want != got:
                    disagree.append((gi, sorted(want), sorted(got)))
    secs = time.monotonic() - t0
    ok = points >= SWEEP_POINTS and not unsound and not disagree and secs < 300
    record(8, ok, f"{points} points on {len(graphs)} graphs, {emitted} rows re-evaluated, {len(unsound)} unsound; "
                  f"exhaustive (S,v) agreement on {exhaustive_checked} points (n<={SWEEP_EXHAUSTIVE_N}), {len(disagree)} disagreements; {secs:.0f}s")
    assert not unsound, unsound[:3]
    assert not disagree, disagree[:3]
    assert points >= SWEEP_POINTS and secs < 300


def test_criterion_09_objective_identity(oracle_runs, bound_runs):
    g4_audit = IdentityAudit()
    g, _ = g4_point()
    for form in FORMS:
        solve(g, SolverConfig(formulation=form), on_lp=g4_audit)
    audits = [oracle_runs[2], bound_runs[1], g4_audit]
    checked = sum(a.checked for a in audits)
    skipped = sum(a.skipped for a in audits)
    worst = max(a.worst for a in audits)
    ok = checked > 0 and worst <= IDENTITY_TOL
    record(9, ok, f"{checked} LP points on the degree equations (skipped {skipped}), max |sum y - sum x_E - 1| = {worst:.2e}")
    assert ok


def test_criterion_10_edge_cases(monkeypatch):
    def forbidden(*a, **k):
        raise AssertionError("model built for a trivial instance")

    monkeypatch.setattr(lipp.solver, "build", forbidden)
    edgeless = solve(Graph.from_edges(5, []))
    single = solve(Graph.from_edges(2, [(0, 1)]))
    ok = edgeless.objective == 1 and single.objective == 2 and edgeless.status == single.status == "Optimal"
    record(10, ok, f"edgeless n=5 -> {edgeless.objective}; single edge -> {single.objective}; no model built")
    assert ok

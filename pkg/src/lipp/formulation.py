"""Variable space, static rows and dynamic row families for cec, cut and BCWWy.

Columns: ``y_v`` for ``v in V`` occupy ``0..n-1``; ``x_e`` for ``e in E_s``
follow in ``TransformedGraph.edges_s`` order. There is no column for ``y_s``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping

import numpy as np

from .graph import TransformedGraph

LE, EQ, GE = "<=", "=", ">="

STATIC_FAMILIES = (
    "degree",
    "dummyDegree",
    "edgeImpliesVertex",
    "inducedLower",
    "bcwwPairLower",
    "bcwwPairUpper",
    "linking",
)
DYNAMIC_FAMILIES = ("cycle", "cutset", "subtour", "cliqueX", "cliqueY")


@dataclass(frozen=True)
class LinearRow:
    coefs: Mapping[int, float]
    sense: str
    rhs: float
    family: str

    @classmethod
    def make(cls, coefs: Mapping[int, float], sense: str, rhs: float, family: str) -> "LinearRow":
        if sense not in (LE, EQ, GE):
            raise ValueError(f"bad sense {sense!r}")
        if not np.isfinite(rhs):
            raise ValueError("rhs must be finite")
        clean = {int(j): float(c) for j, c in coefs.items() if c != 0}
        return cls(clean, sense, float(rhs), family)

    def activity(self, values) -> float:
        return float(sum(c * values[j] for j, c in self.coefs.items()))

    def violation(self, values) -> float:
        """Amount by which ``values`` violates the row (<= 0 means satisfied)."""
        a = self.activity(values)
        if self.sense == LE:
            return a - self.rhs
        if self.sense == GE:
            return self.rhs - a
        return abs(a - self.rhs)


@dataclass(frozen=True)
class VariableSpace:
    n: int
    n_edges_s: int
    integer: tuple[bool, ...]

    @property
    def n_cols(self) -> int:
        return self.n + self.n_edges_s

    def y(self, v: int) -> int:
        return v

    def x(self, e: int) -> int:
        return self.n + e


@dataclass
class Model:
    tag: str  # cec | cut | bcwwy
    tg: TransformedGraph
    vars: VariableSpace
    static_rows: list[LinearRow]
    objective: dict[int, float]
    offset: float
    dynamic_families: frozenset[str]
    extra_rows: list[LinearRow] = field(default_factory=list)

    def objective_vector(self) -> np.ndarray:
        c = np.zeros(self.vars.n_cols)
        for j, v in self.objective.items():
            c[j] = v
        return c

    def report_value(self, lp_value: float) -> float:
        """LP/IP objective converted to vertex units."""
        return lp_value + self.offset


def _space(tg: TransformedGraph, y_int: bool, x_int: bool) -> VariableSpace:
    n, k = tg.n, len(tg.edges_s)
    return VariableSpace(n, k, tuple([y_int] * n + [x_int] * k))


def degree_rows(tg: TransformedGraph) -> list[LinearRow]:
    n = tg.n
    rows = []
    for v in range(n):
        coefs = {n + e: 1.0 for e in tg.delta[v]}
        coefs[v] = -2.0
        rows.append(LinearRow.make(coefs, EQ, 0.0, "degree"))
    return rows


def dummy_degree_row(tg: TransformedGraph) -> LinearRow:
    n = tg.n
    return LinearRow.make({n + e: 1.0 for e in tg.delta[tg.s]}, EQ, 2.0, "dummyDegree")


def _cec_static_rows(tg: TransformedGraph) -> list[LinearRow]:
    n = tg.n
    rows = degree_rows(tg)
    rows.append(dummy_degree_row(tg))
    for v in range(n):
        for e in tg.delta[v]:
            rows.append(LinearRow.make({n + e: 1.0, v: -1.0}, LE, 0.0, "edgeImpliesVertex"))
    for e, (u, v) in enumerate(tg.base.edges):
        rows.append(LinearRow.make({n + e: 1.0, u: -1.0, v: -1.0}, GE, -1.0, "inducedLower"))
    return rows


def build_cec(tg: TransformedGraph) -> Model:
    return Model(
        "cec",
        tg,
        _space(tg, True, True),
        _cec_static_rows(tg),
        {v: 1.0 for v in range(tg.n)},
        0.0,
        frozenset({"cycle"}),
    )


def build_cut(tg: TransformedGraph, variant: str = "cutset") -> Model:
    if variant not in ("cutset", "subtour"):
        raise ValueError(f"unknown cut variant {variant!r}")
    return Model(
        "cut",
        tg,
        _space(tg, True, True),
        _cec_static_rows(tg),
        {v: 1.0 for v in range(tg.n)},
        0.0,
        frozenset({variant}),
    )


def build_bcwwy(tg: TransformedGraph) -> Model:
    n = tg.n
    rows = [dummy_degree_row(tg)]
    for e, (u, v) in enumerate(tg.base.edges):
        around = sorted(set(tg.delta[u]) ^ set(tg.delta[v]))
        lower = {n + f: -1.0 for f in around}
        lower[n + e] = 2.0
        rows.append(LinearRow.make(lower, LE, 0.0, "bcwwPairLower"))
        rows.append(LinearRow.make({n + f: 1.0 for f in around}, LE, 2.0, "bcwwPairUpper"))
    for v in range(n):
        coefs = {n + e: -0.5 for e in tg.delta[v]}
        coefs[v] = 1.0
        rows.append(LinearRow.make(coefs, EQ, 0.0, "linking"))
    return Model(
        "bcwwy",
        tg,
        _space(tg, True, False),
        rows,
        {n + e: 1.0 for e in range(tg.base.m)},
        1.0,
        frozenset({"cutset"}),
    )


def build(tg: TransformedGraph, formulation: str, cut_variant: str = "cutset") -> Model:
    if formulation == "cec":
        return build_cec(tg)
    if formulation == "cut":
        return build_cut(tg, cut_variant)
    if formulation == "bcwwy":
        return build_bcwwy(tg)
    raise ValueError(f"unknown formulation {formulation!r}")


# dynamic rows


def cycle_row(cycle: Iterable[int]) -> LinearRow:
    c = list(cycle)
    return LinearRow.make({v: 1.0 for v in c}, LE, len(c) - 1, "cycle")


def cutset_row(tg: TransformedGraph, S: Iterable[int], v: int) -> LinearRow:
    """sum of x over delta_{G_s}(S) >= 2 y_v."""
    S = set(S)
    if v not in S:
        raise ValueError("v must belong to S")
    coefs: dict[int, float] = {tg.n + e: 1.0 for e in tg.cut_edges(S)}
    coefs[v] = -2.0
    return LinearRow.make(coefs, GE, 0.0, "cutset")


def subtour_row(tg: TransformedGraph, S: Iterable[int], v: int) -> LinearRow:
    """sum of x over E(S) <= sum of y over S minus v."""
    S = set(S)
    if v not in S:
        raise ValueError("v must belong to S")
    coefs: dict[int, float] = {tg.n + e: 1.0 for e in tg.inner_edges(S)}
    for u in S:
        if u != v:
            coefs[u] = -1.0
    return LinearRow.make(coefs, LE, 0.0, "subtour")


def bcww_cutset_row(tg: TransformedGraph, S: Iterable[int], v: int) -> LinearRow:
    """x-only form: sum over delta(v) <= sum over delta(S)."""
    S = set(S)
    if v not in S:
        raise ValueError("v must belong to S")
    coefs: dict[int, float] = {}
    for e in tg.cut_edges(S):
        coefs[tg.n + e] = coefs.get(tg.n + e, 0.0) + 1.0
    for e in tg.delta[v]:
        coefs[tg.n + e] = coefs.get(tg.n + e, 0.0) - 1.0
    return LinearRow.make(coefs, GE, 0.0, "cutset")


def connectivity_row(model: Model, S: Iterable[int], v: int) -> LinearRow:
    """The connectivity row this model separates for the pair (S, v)."""
    if model.tag == "bcwwy":
        return bcww_cutset_row(model.tg, S, v)
    if "subtour" in model.dynamic_families:
        return subtour_row(model.tg, S, v)
    return cutset_row(model.tg, S, v)


def make_clique_rows(cliques: Iterable[Iterable[int]], variant: str, tg: TransformedGraph | None = None) -> list[LinearRow]:
    """One clique row per clique: ``onY`` bounds vertices by 2, ``onX`` inner edges by 1."""
    rows = []
    for K in cliques:
        K = sorted(K)
        if len(K) < 3:
            raise ValueError(f"clique {K} has fewer than 3 vertices")
        if variant == "onY":
            rows.append(LinearRow.make({v: 1.0 for v in K}, LE, 2.0, "cliqueY"))
        elif variant == "onX":
            if tg is None:
                raise ValueError("onX clique rows need the transformed graph")
            rows.append(LinearRow.make({tg.n + e: 1.0 for e in tg.inner_edges(K)}, LE, 1.0, "cliqueX"))
        else:
            raise ValueError(f"unknown clique variant {variant!r}")
    return rows


def column_names(model: Model, labels: list[str] | None = None) -> list[str]:
    tg = model.tg
    name = (lambda v: "s" if v == tg.s else labels[v]) if labels else (lambda v: "s" if v == tg.s else str(v))
    cols = [f"y_{name(v)}" for v in range(tg.n)]
    cols += [f"x_{name(u)}_{name(v)}" for u, v in tg.edges_s]
    return cols


def to_lp_format(model: Model, labels: list[str] | None = None) -> str:
    """CPLEX LP text of the static model; dynamic families are listed as comments."""
    names = column_names(model, labels)

    def expr(coefs: Mapping[int, float]) -> str:
        parts = []
        for j, c in sorted(coefs.items()):
            sign = "-" if c < 0 else "+"
            mag = abs(c)
            parts.append(f"{sign} {names[j]}" if mag == 1 else f"{sign} {mag:g} {names[j]}")
        s = " ".join(parts)
        return s[2:] if s.startswith("+ ") else s

    out = [f"\\ {model.tag} model, objective offset {model.offset:g}"]
    for fam in sorted(model.dynamic_families):
        out.append(f"\\ dynamic family (separated lazily): {fam}")
    out += ["Maximize", f" obj: {expr(model.objective)}", "Subject To"]
    for i, row in enumerate(model.static_rows + model.extra_rows):
        out.append(f" {row.family}_{i}: {expr(row.coefs)} {row.sense} {row.rhs:g}")
    out.append("Bounds")
    out += [f" 0 <= {c} <= 1" for c in names]
    ints = [c for c, flag in zip(names, model.vars.integer) if flag]
    if ints:
        out.append("Binaries")
        out += [f" {c}" for c in ints]
    out.append("End")
    return "\n".join(out) + "\n"

"""Command-line front end: ``solve``, ``suite``, ``polylab`` and ``export-lp``."""

from __future__ import annotations

import argparse
import csv
import json
import logging
import math
import statistics
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Iterator

from .formulation import build, to_lp_format
from .graph import Graph, transform
from .heuristic import HeuristicConfig, ghlipp
from .instances import (
    InstanceMeta,
    generate_barabasi_albert,
    generate_hypercube,
    generate_torus,
    generated_meta,
    read_instance,
)
from .solver import CLIQUE_MODES, FORMULATIONS, SolverConfig, solve

log = logging.getLogger("lipp")

CSV_FIELDS = [
    "instance",
    "n",
    "m",
    "formulation",
    "cliqueMode",
    "status",
    "objective",
    "bestBound",
    "gapPercent",
    "nodes",
    "cuts.cycle",
    "cuts.cutset",
    "cuts.clique",
    "rootBound",
    "warmStartValue",
    "timeSeconds",
    "heuristicSeconds",
]


@dataclass
class RunRecord:
    instance: str
    n: int
    m: int
    formulation: str
    cliqueMode: str
    status: str
    objective: int | None
    bestBound: float | None
    gapPercent: float | None  # None when infinite
    nodes: int
    cuts: dict = field(default_factory=lambda: {"cycle": 0, "cutset": 0, "clique": 0})
    rootBound: float | None = None
    warmStartValue: int | None = None
    timeSeconds: float = 0.0
    heuristicSeconds: float = 0.0

    def to_json(self) -> str:
        return json.dumps(asdict(self), sort_keys=False)

    @classmethod
    def from_json(cls, text: str) -> "RunRecord":
        return cls(**json.loads(text))

    def csv_row(self) -> dict:
        d = asdict(self)
        cuts = d.pop("cuts")
        for k in ("cycle", "cutset", "clique"):
            d[f"cuts.{k}"] = cuts[k]
        return d

    @classmethod
    def from_csv_row(cls, row: dict) -> "RunRecord":
        def num(x, kind):
            return None if x in ("", None) else kind(x)

        return cls(
            row["instance"],
            int(row["n"]),
            int(row["m"]),
            row["formulation"],
            row["cliqueMode"],
            row["status"],
            num(row["objective"], int),
            num(row["bestBound"], float),
            num(row["gapPercent"], float),
            int(row["nodes"]),
            {k: int(row[f"cuts.{k}"]) for k in ("cycle", "cutset", "clique")},
            num(row["rootBound"], float),
            num(row["warmStartValue"], int),
            float(row["timeSeconds"]),
            float(row["heuristicSeconds"]),
        )


def _finite(x: float) -> float | None:
    return None if x is None or math.isinf(x) or math.isnan(x) else float(x)


def make_record(meta: InstanceMeta, cfg: SolverConfig, report, warm: int | None, h_secs: float) -> RunRecord:
    cuts = {"cycle": 0, "cutset": 0, "clique": 0}
    for fam, k in report.cuts.items():
        key = {"subtour": "cutset", "cliqueX": "clique", "cliqueY": "clique"}.get(fam, fam)
        cuts[key] += k
    return RunRecord(
        meta.name,
        meta.n,
        meta.m,
        cfg.formulation,
        cfg.clique_mode,
        report.status,
        report.objective,
        _finite(report.best_bound),
        _finite(report.gap_percent),
        report.nodes,
        cuts,
        _finite(report.root_bound),
        warm,
        report.timings.get("total", 0.0),
        h_secs,
    )


def error_record(name: str, cfg: SolverConfig, msg: str) -> RunRecord:
    log.error("%s: %s", name, msg)
    return RunRecord(name, 0, 0, cfg.formulation, cfg.clique_mode, "Error", None, None, None, 0)


def run_one(g: Graph, meta: InstanceMeta, cfg: SolverConfig, warm_start: bool = False,
            heuristic_time: float | None = None, maxpaths: int = 5000) -> RunRecord:
    """Solve one instance; with a warm start the heuristic gets 10% of the budget unless told otherwise."""
    warm_value = None
    h_secs = 0.0
    if warm_start:
        budget = heuristic_time if heuristic_time is not None else 0.1 * cfg.time_limit
        t = time.monotonic()
        path = ghlipp(g, HeuristicConfig(maxpaths=maxpaths, time_limit=budget, seed=cfg.seed))
        h_secs = time.monotonic() - t
        warm_value = path.cardinality
        cfg = SolverConfig(**{**asdict_config(cfg), "warm_start": path,
                              "time_limit": max(cfg.time_limit - budget, 1e-3)})
    report = solve(g, cfg)
    return make_record(meta, cfg, report, warm_value, h_secs)


def asdict_config(cfg: SolverConfig) -> dict:
    return {k: getattr(cfg, k) for k in cfg.__dataclass_fields__}


def generate(kind: str, n: int | None = None, d: int | None = None, k: int | None = None,
             seed: int = 0) -> tuple[Graph, InstanceMeta]:
    if kind == "ba":
        if n is None or d is None:
            raise ValueError("ba needs --n and --d")
        g = generate_barabasi_albert(n, d, seed)
        return g, generated_meta(f"ba_{n}_{d}_{seed}", g)
    if kind == "hypercube":
        if k is None:
            raise ValueError("hypercube needs --k")
        g = generate_hypercube(k)
        return g, generated_meta(f"{k}-cube", g)
    if kind == "torus":
        if n is None:
            raise ValueError("torus needs --n")
        g = generate_torus(n)
        return g, generated_meta(f"torus_{n}", g)
    raise ValueError(f"unknown generator {kind!r}")


def write_records(records: list[RunRecord], fmt: str, out) -> None:
    if fmt == "json":
        for r in records:
            out.write(r.to_json() + "\n")
    else:
        w = csv.DictWriter(out, fieldnames=CSV_FIELDS)
        w.writeheader()
        for r in records:
            w.writerow(r.csv_row())


# suite

SUMMARY_FIELDS = ["config", "runs", "solved", "timeouts", "errors", "medianSeconds"]


def _manifest_instances(entries) -> Iterator[tuple[str, dict | str]]:
    for entry in entries:
        if isinstance(entry, str):
            yield entry, entry
        elif "seeds" in entry:
            for s in entry["seeds"]:
                spec = {k: v for k, v in entry.items() if k != "seeds"} | {"seed": s}
                yield json.dumps(spec, sort_keys=True), spec
        else:
            yield json.dumps(entry, sort_keys=True), entry


def _suite_job(args) -> RunRecord:
    label, inst, cfg_dict, base_dir = args
    cfg_dict = dict(cfg_dict)
    warm = cfg_dict.pop("warmStart", False)
    maxpaths = cfg_dict.pop("maxpaths", 5000)
    h_time = cfg_dict.pop("heuristicTime", None)
    cfg = SolverConfig(**cfg_dict)
    try:
        if isinstance(inst, str):
            path = Path(inst)
            if not path.is_absolute() and base_dir is not None:
                path = Path(base_dir) / path
            g, meta = read_instance(path)
        else:
            spec = dict(inst)
            g, meta = generate(spec.pop("generate"), **spec)
        return run_one(g, meta, cfg, warm, h_time, maxpaths)
    except Exception as exc:  # recorded, suite continues
        return error_record(label, cfg, f"{type(exc).__name__}: {exc}")


def run_suite(manifest: dict, base_dir: str | None = None, jobs: int = 1) -> tuple[list[RunRecord], list[dict]]:
    """Run every (instance, config) pair of a manifest.

    Manifest keys: ``instances`` (paths or generator dicts such as
    ``{"generate": "ba", "n": 20, "d": 3, "seeds": [1, 2]}``), ``configs``
    (dicts of SolverConfig fields plus optional ``warmStart``/``maxpaths``/
    ``heuristicTime``) and an optional default ``time_limit``.
    """
    configs = manifest.get("configs") or [{}]
    default_tl = manifest.get("time_limit")
    jobs_list = []
    for cfg in configs:
        cfg = dict(cfg)
        if default_tl is not None:
            cfg.setdefault("time_limit", default_tl)
        for label, inst in _manifest_instances(manifest.get("instances", [])):
            jobs_list.append((label, inst, cfg, base_dir))
    if jobs > 1 and len(jobs_list) > 1:
        with ProcessPoolExecutor(jobs) as pool:
            records = list(pool.map(_suite_job, jobs_list))
    else:
        records = [_suite_job(j) for j in jobs_list]
    return records, summarize(records)


def summarize(records: list[RunRecord]) -> list[dict]:
    groups: dict[str, list[RunRecord]] = {}
    for r in records:
        groups.setdefault(f"{r.formulation}/{r.cliqueMode}", []).append(r)
    rows = []
    for label, rs in groups.items():
        ok = [r for r in rs if r.status == "Optimal"]
        rows.append({
            "config": label,
            "runs": len(rs),
            "solved": len(ok),
            "timeouts": sum(r.status == "TimeLimit" for r in rs),
            "errors": sum(r.status == "Error" for r in rs),
            "medianSeconds": round(statistics.median([r.timeSeconds for r in ok]), 4) if ok else "",
        })
    return rows


# argument parsing


def _config_from_args(a) -> SolverConfig:
    return SolverConfig(
        formulation=a.formulation,
        clique_mode=a.cliques,
        max_cl=a.maxcl,
        cut_variant=a.cut_variant,
        time_limit=a.time_limit,
        seed=a.seed,
    )


def _add_generator_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--generate", choices=["ba", "hypercube", "torus"])
    p.add_argument("--n", type=int, help="vertex count (ba) or side length (torus)")
    p.add_argument("--d", type=int, help="attachment count (ba)")
    p.add_argument("--k", type=int, help="hypercube dimension")
    p.add_argument("--seed", type=int, default=0)


def _instances(a) -> Iterator[tuple[Graph, InstanceMeta]]:
    if a.generate:
        yield generate(a.generate, a.n, a.d, a.k, a.seed)
    for path in a.instances:
        yield read_instance(path)


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="lipp", description="Branch-and-cut for the longest induced path problem.")
    ap.add_argument("-v", "--verbose", action="store_true")
    sub = ap.add_subparsers(dest="cmd", required=True)

    s = sub.add_parser("solve", help="solve instances and print one record per run")
    s.add_argument("instances", nargs="*")
    s.add_argument("--formulation", choices=FORMULATIONS, default="cec")
    s.add_argument("--cliques", choices=CLIQUE_MODES, default="apriori")
    s.add_argument("--maxcl", type=int, default=500)
    s.add_argument("--cut-variant", choices=["cutset", "subtour"], default="cutset")
    s.add_argument("--time-limit", type=float, default=1200.0)
    s.add_argument("--warm-start", action="store_true")
    s.add_argument("--heuristic-time", type=float)
    s.add_argument("--maxpaths", type=int, default=5000)
    s.add_argument("--output", choices=["json", "csv"], default="json")
    _add_generator_flags(s)

    st = sub.add_parser("suite", help="run a JSON manifest and print a summary CSV")
    st.add_argument("manifest")
    st.add_argument("--records", help="also write per-run records (CSV) here")
    st.add_argument("--jobs", type=int, default=1)

    pl = sub.add_parser("polylab", help="root bounds of the closed relaxations, optionally point membership")
    pl.add_argument("instances", nargs="*")
    pl.add_argument("--point", help="JSON file {'y': {label: value}, 'x': {'u v': value}} with 's' as dummy")
    _add_generator_flags(pl)

    ex = sub.add_parser("export-lp", help="write the static model in CPLEX LP format")
    ex.add_argument("instance")
    ex.add_argument("--formulation", choices=FORMULATIONS, default="cec")
    return ap


def _cmd_solve(a, out) -> int:
    cfg = _config_from_args(a)
    if not a.generate and not a.instances:
        raise ValueError("give instance paths or --generate")
    records = [
        run_one(g, meta, cfg, a.warm_start, a.heuristic_time, a.maxpaths) for g, meta in _instances(a)
    ]
    write_records(records, a.output, out)
    return 0


def _cmd_suite(a, out) -> int:
    path = Path(a.manifest)
    text = path.read_text()
    manifest = json.loads(text) if text.strip() else {}
    records, summary = run_suite(manifest, str(path.parent), a.jobs)
    if a.records:
        with open(a.records, "w", newline="") as fh:
            write_records(records, "csv", fh)
    w = csv.DictWriter(out, fieldnames=SUMMARY_FIELDS)
    w.writeheader()
    w.writerows(summary)
    return 0


def _load_point(path: str, g: Graph, meta: InstanceMeta):
    from .separation import Point

    data = json.loads(Path(path).read_text())
    tg = transform(g)
    pos = {lab: i for i, lab in enumerate(meta.labels)}
    pos["s"] = tg.s
    y = {pos[k]: float(v) for k, v in data.get("y", {}).items()}
    x = {}
    for k, v in data.get("x", {}).items():
        u, w = k.split()
        x[(pos[u], pos[w])] = float(v)
    return Point.from_dicts(tg, y, x)


def _cmd_polylab(a, out) -> int:
    from .polylab import check_membership, compare_root_bounds

    reports = []
    for g, meta in _instances(a):
        b = compare_root_bounds(g)
        rep = {
            "instance": meta.name,
            "n": g.n,
            "m": g.m,
            "zCec": b.cec,
            "zCut": b.cut,
            "zBcwwy": b.bcwwy,
            "cutLeCec": b.cut <= b.cec + 1e-6,
            "cutEqBcwwy": abs(b.cut - b.bcwwy) <= 1e-6,
        }
        if a.point:
            p = _load_point(a.point, g, meta)
            lab = meta.labels
            rep["membership"] = {}
            for which in ("Qcec", "Qcut", "Qbcwwy"):
                v = check_membership(p, g, which)
                rep["membership"][which] = {
                    "feasible": v.feasible,
                    "violated": [
                        {"family": fam, "certificate": _cert_json(c, lab), "amount": amt} for fam, c, amt in v.violated
                    ],
                }
        reports.append(rep)
    json.dump(reports, out, indent=2)
    out.write("\n")
    return 0


def _cert_json(c, labels):
    if isinstance(c, tuple) and len(c) == 2 and isinstance(c[0], frozenset):
        S, v = c
        return {"S": sorted(labels[u] for u in S), "v": labels[v]}
    if isinstance(c, tuple):
        return [labels[u] for u in c]
    return c


def _cmd_export(a, out) -> int:
    g, meta = read_instance(a.instance)
    out.write(to_lp_format(build(transform(g), a.formulation), meta.labels))
    return 0


def main(argv: list[str] | None = None, out=None) -> int:
    out = out or sys.stdout
    ap = build_parser()
    a = ap.parse_args(argv)
    logging.basicConfig(level=logging.INFO if a.verbose else logging.WARNING, format="%(levelname)s %(name)s: %(message)s")
    handler = {"solve": _cmd_solve, "suite": _cmd_suite, "polylab": _cmd_polylab, "export-lp": _cmd_export}[a.cmd]
    try:
        return handler(a, out)
    except (OSError, ValueError) as exc:
        print(f"lipp: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())

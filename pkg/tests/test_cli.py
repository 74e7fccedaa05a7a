import csv
import io
import json
import subprocess
import sys
from pathlib import Path

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from lipp.cli import CSV_FIELDS, RunRecord, main, run_suite, summarize

DATA = Path(__file__).parent / "data"
G4_FILE = str(DATA / "g4.edgelist")


def run(*argv):
    out = io.StringIO()
    code = main(list(argv), out)
    return code, out.getvalue()


def records(text):
    return [RunRecord.from_json(line) for line in text.splitlines() if line.strip()]


def test_solve_g4():
    code, text = run("solve", "--formulation", "cec", G4_FILE)
    assert code == 0
    (r,) = records(text)
    assert (r.instance, r.n, r.m, r.status, r.objective) == ("g4", 6, 7, "Optimal", 4)
    assert r.warmStartValue is None and r.gapPercent == 0


def test_solve_karate_warm_start():
    code, text = run("solve", "--formulation", "cut", "--warm-start", str(DATA / "rwc" / "karate.edgelist"))
    (r,) = records(text)
    assert code == 0 and r.objective == 9 and r.warmStartValue <= 9


def test_solve_generated_ba():
    code, text = run("solve", "--generate", "ba", "--n", "20", "--d", "3", "--seed", "1", "--formulation", "cec")
    (r,) = records(text)
    assert code == 0 and r.m == 51 and r.status == "Optimal"


def test_solve_csv():
    code, text = run("solve", "--output", "csv", "--generate", "hypercube", "--k", "3", G4_FILE)
    rows = list(csv.DictReader(io.StringIO(text)))
    assert code == 0 and list(rows[0]) == CSV_FIELDS
    assert [RunRecord.from_csv_row(r).objective for r in rows] == [5, 4]  # the 3-cube snake has 4 edges


@pytest.mark.parametrize(
    "argv",
    [
        ["solve", "/nonexistent/file.txt"],
        ["solve", "--generate", "ba", "--n", "3", "--d", "5"],
        ["solve", "--generate", "ba", "--n", "10"],
        ["solve"],
    ],
)
def test_solve_errors(argv):
    assert run(*argv)[0] != 0


def test_unknown_flag():
    with pytest.raises(SystemExit) as err:
        run("solve", "--bogus", G4_FILE)
    assert err.value.code != 0


def test_deterministic_output():
    def strip(text):
        return [{k: v for k, v in json.loads(line).items() if k not in ("timeSeconds", "heuristicSeconds")} for line in text.splitlines()]

    a = run("solve", "--formulation", "bcwwy", "--warm-start", G4_FILE)[1]
    b = run("solve", "--formulation", "bcwwy", "--warm-start", G4_FILE)[1]
    assert strip(a) == strip(b)


record_strategy = st.builds(
    RunRecord,
    instance=st.text(st.characters(blacklist_categories=("Cs", "Cc")), min_size=1, max_size=8),
    n=st.integers(0, 1000),
    m=st.integers(0, 1000),
    formulation=st.sampled_from(["cec", "cut", "bcwwy"]),
    cliqueMode=st.sampled_from(["apriori", "separate", "off"]),
    status=st.sampled_from(["Optimal", "TimeLimit", "Error"]),
    objective=st.one_of(st.none(), st.integers(0, 100)),
    bestBound=st.one_of(st.none(), st.floats(0, 100)),
    gapPercent=st.one_of(st.none(), st.floats(0, 100)),
    nodes=st.integers(0, 10**6),
    cuts=st.fixed_dictionaries({k: st.integers(0, 999) for k in ("cycle", "cutset", "clique")}),
    rootBound=st.one_of(st.none(), st.floats(0, 100)),
    warmStartValue=st.one_of(st.none(), st.integers(0, 100)),
    timeSeconds=st.floats(0, 1e4),
    heuristicSeconds=st.floats(0, 1e4),
)


@settings(max_examples=100)
@given(record_strategy)
def test_record_roundtrips(r):
    assert RunRecord.from_json(r.to_json()) == r
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=CSV_FIELDS)
    w.writeheader()
    w.writerow(r.csv_row())
    (row,) = csv.DictReader(io.StringIO(buf.getvalue()))
    assert RunRecord.from_csv_row(row) == r
    assert sorted(r.csv_row()) == sorted(CSV_FIELDS)


def test_suite_empty_manifest(tmp_path):
    m = tmp_path / "empty.json"
    m.write_text("")
    code, text = run("suite", str(m))
    assert code == 0 and text.strip() == ",".join(["config", "runs", "solved", "timeouts", "errors", "medianSeconds"])
    assert run_suite({}) == ([], [])


def test_suite_broken_path(tmp_path):
    m = tmp_path / "m.json"
    m.write_text(json.dumps({"instances": ["missing.edgelist", G4_FILE], "configs": [{"formulation": "cut"}]}))
    out_csv = tmp_path / "records.csv"
    code, text = run("suite", str(m), "--records", str(out_csv))
    assert code == 0
    rows = [RunRecord.from_csv_row(r) for r in csv.DictReader(out_csv.open())]
    assert [r.status for r in rows] == ["Error", "Optimal"]
    (summary,) = csv.DictReader(io.StringIO(text))
    assert summary["errors"] == "1" and summary["solved"] == "1"


@pytest.mark.slow
def test_suite_bas_cec_vs_cut():
    manifest = {
        "instances": [{"generate": "ba", "n": 20, "d": 3, "seeds": list(range(30))}],
        "configs": [{"formulation": "cec"}, {"formulation": "cut"}],
        "time_limit": 120,
    }
    recs, summary = run_suite(manifest, jobs=2)
    assert len(recs) == 60
    by = {s["config"]: s for s in summary}
    assert by["cec/apriori"]["timeouts"] == 0 and by["cut/apriori"]["timeouts"] == 0
    assert by["cec/apriori"]["solved"] == 30 and by["cut/apriori"]["solved"] == 30
    objs = {}
    for r in recs:
        objs.setdefault(r.instance, set()).add(r.objective)
    assert all(len(v) == 1 for v in objs.values())


def test_summarize_counts():
    base = dict(n=1, m=0, formulation="cec", cliqueMode="off", objective=1, bestBound=1.0, gapPercent=0.0, nodes=0)
    rs = [RunRecord("a", status="Optimal", timeSeconds=1.0, **base), RunRecord("b", status="TimeLimit", **base),
          RunRecord("c", status="Optimal", timeSeconds=3.0, **base)]
    (s,) = summarize(rs)
    assert (s["runs"], s["solved"], s["timeouts"], s["errors"], s["medianSeconds"]) == (3, 2, 1, 0, 2.0)


def test_polylab_point(tmp_path):
    point = {"y": {"a": 2 / 3, "b": 2 / 3, "c": 2 / 3, "e": 1, "f": 1},
             "x": {"a b": 2 / 3, "b c": 2 / 3, "a c": 2 / 3, "e f": 1, "e s": 1, "f s": 1}}
    pf = tmp_path / "p.json"
    pf.write_text(json.dumps(point))
    code, text = run("polylab", G4_FILE, "--point", str(pf))
    (rep,) = json.loads(text)
    assert code == 0
    assert rep["membership"]["Qcec"]["feasible"]
    viol = rep["membership"]["Qcut"]["violated"]
    assert {v["certificate"]["v"] for v in viol} == {"a", "b", "c"}
    assert all(v["certificate"]["S"] == ["a", "b", "c"] for v in viol)
    assert rep["zCec"] == pytest.approx(4.0)


def test_export_lp():
    code, text = run("export-lp", G4_FILE, "--formulation", "bcwwy")
    assert code == 0 and text.startswith("\\ bcwwy model")


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "lipp", "solve", G4_FILE], capture_output=True, text=True)
    assert proc.returncode == 0 and json.loads(proc.stdout)["objective"] == 4

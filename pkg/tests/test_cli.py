import csv
import io
import json
import subprocess
import sys
from pathlib import Path

import pytest

from nonauto import cli, corpus


def run(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_orbit_csv_alternates_components(capsys):
    code, out, _ = run(capsys, "orbit", "--system", "paper-example", "--x", "0:0.0", "--N", "10")
    rows = list(csv.DictReader(io.StringIO(out)))
    assert code == 0 and len(rows) == 11
    assert [int(r["component"]) for r in rows] == [0, 1] * 5 + [0]
    assert rows[0]["x"] == "1" and rows[0]["y"] == "0"


def test_orbit_json_stride(capsys):
    code, out, _ = run(capsys, "orbit", "--system", "paper-example", "--N", "5", "--stride", "2", "--offset", "1",
                       "--format", "json")
    rep = json.loads(out)
    assert code == 0 and [e["n"] for e in rep["orbit"]] == [1, 3, 5, 7, 9, 11]
    assert {e["component"] for e in rep["orbit"]} == {1}


def test_detect_proximal_collision(capsys):
    code, out, _ = run(capsys, "detect", "proximal", "--x", "0:0.0", "--y", "0:0.5", "--system", "doubling1")
    res = json.loads(out)["results"][0]
    assert code == 0 and res["status"] == "witnessed" and res["witness"]["collision_n"] == 1


def test_compare_min_disagreement_allowed(capsys):
    code, out, _ = run(capsys, "compare", "MIN", "--system", "paper-example", "--N", "100000", "--eps", "0.1")
    rep = json.loads(out)
    res = rep["results"][0]
    assert code == 0 and res["expected"] == "disagreement-allowed" and not rep["violation"]
    assert (res["side_family"]["status"], res["side_composed"]["status"]) == ("witnessed", "refuted")


@pytest.mark.parametrize("detector, extra", [
    ("equicontinuity", ["--eps", "0.1"]),
    ("sensitivity", []),
    ("cofinite", []),
    ("distality", []),
    ("li-yorke-pair", ["--y", "0:0.3"]),
    ("scrambled", ["--points", "0:0.1,0:0.2,0:0.35"]),
    ("li-yorke-sensitivity", []),
    ("minimality", ["--eps", "0.05", "--N", "300"]),
    ("limit-classes", []),
    ("surjectivity", ["--eps", "0.05"]),
])
def test_every_detector_runs(capsys, detector, extra):
    code, out, _ = run(capsys, "detect", detector, "--system", "rot-irrational", *extra)
    rep = json.loads(out)
    assert code == 0 and rep["results"] and rep["spec_digest"] == corpus.load("rot-irrational").digest


@pytest.mark.parametrize("claim", ["EQ", "PROX", "DIST", "SEN", "COFSEN", "LYS", "LYC", "POWMIN"])
def test_every_claim_runs(capsys, claim):
    code, out, _ = run(capsys, "compare", claim, "--system", "doubling2", "--N", "200", "--pairs", "20")
    rep = json.loads(out)
    assert code == 0 and rep["results"][0]["claim"] == claim and rep["violation"] is False


def test_environment_overrides(capsys, monkeypatch):
    monkeypatch.setenv("NONAUTO_SYSTEM", "doubling1")
    monkeypatch.setenv("NONAUTO_N", "40")
    code, out, _ = run(capsys, "detect", "sensitivity")
    assert code == 0 and json.loads(out)["params"]["N"] == 40
    code, out, _ = run(capsys, "detect", "sensitivity", "--N", "30")
    assert json.loads(out)["params"]["N"] == 30
    monkeypatch.setenv("NONAUTO_N", "many")
    code, _, err = run(capsys, "detect", "sensitivity")
    assert code == 1 and "NONAUTO_N" in err


def test_timings_only_on_request(capsys):
    _, out, _ = run(capsys, "compare", "DIST", "--system", "rot-rational", "--N", "50")
    assert "timings" not in json.loads(out)
    _, out, _ = run(capsys, "compare", "DIST", "--system", "rot-rational", "--N", "50", "--timings")
    assert "compare" in json.loads(out)["timings"]


@pytest.mark.parametrize("argv, needle", [
    (["detect", "proximal", "--system", "doubling1"], "needs --y"),
    (["detect", "sensitivity", "--system", "nowhere"], "neither a corpus system"),
    (["detect", "proximal", "--system", "doubling1", "--y", "zero"], "bad point literal"),
    (["detect", "sensitivity", "--system", "doubling1", "--tau", "0.5"], "tau"),
    (["detect", "sensitivity", "--system", "doubling1", "--grid", "1e-8"], "resource limit"),
    (["compare", "POWMIN", "--system", "doubling1", "--map-index", "3"], "map-index"),
])
def test_errors_exit_one(capsys, argv, needle):
    code, out, err = run(capsys, *argv)
    assert code == 1 and out == "" and needle in err


def test_bad_spec_file_lists_every_problem(capsys, tmp_path):
    path = tmp_path / "bad.json"
    path.write_text(json.dumps({"space": {"components": [{"kind": "interval", "a": 2, "b": 1}]},
                                "family": [{"kind": "spiral"}]}))
    code, _, err = run(capsys, "detect", "sensitivity", "--system", str(path))
    assert code == 1 and "a < b" in err


def test_violation_exit_code(capsys, monkeypatch):
    from nonauto import theorems as thm

    real = thm.compare_distality

    def broken(fam, params):
        rep = real(fam, params)
        rep.violation = True
        return rep

    monkeypatch.setattr(thm, "compare_distality", broken)
    code, out, _ = run(capsys, "compare", "DIST", "--system", "rot-rational", "--N", "20")
    assert code == 2 and json.loads(out)["violation"]


def test_corpus_listing(capsys, tmp_path):
    code, out, _ = run(capsys, "corpus")
    assert code == 0 and "paper-example" in out.split()
    out_file = tmp_path / "t.json"
    cli.main(["corpus", "tent2", "--out", str(out_file)])
    assert json.loads(out_file.read_text())["name"] == "tent2"


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "nonauto", "corpus"], capture_output=True, text=True)
    assert proc.returncode == 0 and "tent2" in proc.stdout



# (file, command args, horizon flags); horizon flags are what the report's params block must reproduce
GOLDEN = [
    ("detect_proximal", ["detect", "proximal", "--x", "0:0.0", "--y", "0:0.5"], ["--system", "doubling1", "--N", "20"]),
    ("compare_dist", ["compare", "DIST"], ["--system", "rot-rational", "--N", "30", "--grid", "0.1"]),
    ("compare_sen", ["compare", "SEN"], ["--system", "doubling2", "--N", "40", "--grid", "0.05"]),
    ("orbit", ["orbit", "--x", "0:0.0"], ["--system", "paper-example", "--N", "10"]),
]


@pytest.mark.parametrize("name, argv, flags", GOLDEN)
def test_golden_reports(capsys, name, argv, flags):
    golden = Path(__file__).parent / "golden" / (name + (".csv" if argv[0] == "orbit" else ".json"))
    _, out, _ = run(capsys, *argv, *flags)
    assert out == golden.read_text()


@pytest.mark.parametrize("name, argv, flags", GOLDEN[:3])
def test_embedded_params_replay(capsys, tmp_path, name, argv, flags):
    _, out, _ = run(capsys, *argv, *flags)
    rep = json.loads(out)
    path = tmp_path / "replay.json"
    path.write_text(json.dumps(corpus.spec_data(rep["system"]) | {"params": rep["params"]}))
    _, again, _ = run(capsys, *argv, "--system", str(path))
    replay = json.loads(again)
    assert replay["results"] == rep["results"] and replay["params"] == rep["params"]

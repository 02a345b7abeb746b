import json
import subprocess
import sys
from importlib import resources
from pathlib import Path

import jsonschema
import pytest

from ladderdist.cli import main

ROOT = Path(__file__).resolve().parents[1]
CX = str(ROOT / "universes" / "counterexample.uni")
SW = str(ROOT / "universes" / "sweep.uni")
SCHEMA = json.loads(resources.files("ladderdist").joinpath("schemas/report.schema.json").read_text())


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def run_json(capsys, *argv):
    code, out, err = run(capsys, *argv, "--format", "json")
    doc = json.loads(out)
    jsonschema.validate(doc, SCHEMA)
    return code, doc


def test_counterexample_json(capsys):
    code, doc = run_json(capsys, "classify", "--universe", CX, "--mode", "standard",
                         "--pi", "Delta(triv,0,0)+Delta(rho2,0,0)")
    assert code == 0
    assert (doc["dist"], doc["eta"]) == ("NO", "NO")
    assert doc["trace"][0]["rule"] == "FIRST-DIR"


@pytest.mark.parametrize("pi, mode", [
    ("Delta(T,0,2)+Delta(T,-2,0)", "auto"),
    ("Delta(T,0,2)+Delta(T,-2,0)", "standard"),
    ("Delta(T,3,4)+Delta(T,2,3)+Delta(T,-3,-2)+Delta(T,-4,-3)", "ladder"),
    ("Delta(T,0,0)+Delta(T,0,0)", "auto"),
    ("Delta(T,-1/2,1/2)", "segment"),
    ("", "auto"),
])
def test_text_and_json_agree(capsys, pi, mode):
    _, doc = run_json(capsys, "classify", "--universe", SW, "--pi", pi, "--mode", mode)
    code, out, _ = run(capsys, "classify", "--universe", SW, "--pi", pi, "--mode", mode)
    assert code == 0
    lines = dict(l.split(": ", 1) for l in out.splitlines() if l.startswith(("dist:", "eta:")))
    assert (lines["dist"], lines["eta"]) == (doc["dist"], doc["eta"])


def test_every_subcommand_validates(capsys):
    pi = "Delta(T,3,4)+Delta(T,2,3)+Delta(T,-3,-2)+Delta(T,-4,-3)"
    for cmd in ("decompose", "derivatives", "strata", "dual"):
        code, doc = run_json(capsys, cmd, "--universe", SW, "--pi", pi)
        assert code == 0 and doc["command"] == cmd
    code, doc = run_json(capsys, "strata", "--universe", SW, "--pi", "Delta(T,-1,1)+Delta(T,-1,1)")
    assert doc["total_bound"] == 2
    code, doc = run_json(capsys, "corpus", "--seed", "3", "--count", "5")
    assert len(doc["multisegments"]) == 5
    code, doc = run_json(capsys, "check", "deriv", "--corpus", "30", "--seed", "2")
    assert code == 0 and doc["status"] == "PASS"
    code, doc = run_json(capsys, "check", "key-lemma", "--max-segments", "2", "--max-span", "1")
    assert code == 0 and doc["status"] == "PASS" and doc["checked"] > 0


def test_decompose_output(capsys):
    _, doc = run_json(capsys, "decompose", "--universe", SW,
                      "--pi", "Delta(T,3,4)+Delta(T,2,3)+Delta(T,-3,-2)+Delta(T,-4,-3)")
    assert doc["ladder"] and len(doc["proper_ladders"]) == 2


def test_derivatives_flag_the_empty_member(capsys):
    _, doc = run_json(capsys, "derivatives", "--universe", SW, "--pi", "Delta(T,0,1)")
    assert [m["empty"] for m in doc["members"]] == [True, False]
    code, out, _ = run(capsys, "derivatives", "--universe", SW, "--pi", "Delta(T,0,1)")
    assert "(empty)" in out and "Delta(T,1,1)" in out


def test_dual_output(capsys):
    _, doc = run_json(capsys, "dual", "--universe", SW, "--pi", "Delta(S,0,1)+Delta(S2,-1,0)")
    assert doc["gd_closed"] is True


def test_exit_codes(capsys, tmp_path):
    code, _, err = run(capsys, "classify", "--universe", SW, "--pi", "Delta(Q,0,0)")
    assert code == 2 and "unknown tower" in err
    code, _, err = run(capsys, "classify", "--universe", SW, "--mode", "ladder",
                       "--pi", "Delta(T,0,0)+Delta(S,0,0)")
    assert code == 2 and "not a ladder" in err
    bad = tmp_path / "bad.uni"
    bad.write_text("tower t { degree 0; }")
    code, _, err = run(capsys, "classify", "--universe", str(bad), "--pi", "")
    assert code == 3 and "degree must be" in err
    bad.write_text("tower t { degree 1 }")
    code, _, err = run(capsys, "classify", "--universe", str(bad), "--pi", "")
    assert code == 2 and "1:20" in err
    code, _, err = run(capsys, "classify", "--universe", str(tmp_path / "missing.uni"), "--pi", "")
    assert code == 2
    code, _, err = run(capsys, "classify", "--pi", "Delta(T,0,0)")
    assert code == 2 and "--universe" in err
    with pytest.raises(SystemExit) as info:
        main(["classify", "--mode", "nonsense"])
    assert info.value.code == 2


def test_corpus_is_reproducible_across_processes():
    cmd = [sys.executable, "-m", "ladderdist.cli", "corpus", "--seed", "12345", "--count", "50"]
    a = subprocess.run(cmd, capture_output=True, text=True, check=True).stdout
    b = subprocess.run(cmd, capture_output=True, text=True, check=True).stdout
    assert a == b and len(a.splitlines()) == 50


def test_console_script_installed():
    out = subprocess.run(["ladderdist", "--help"], capture_output=True, text=True)
    assert out.returncode == 0 and "classify" in out.stdout

import json
import subprocess
import sys

import pytest

from sfm.cli import main
from sfm.scenarios import corpus_dir

C = corpus_dir()


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


def test_contrast_tweak_or_squad(capsys):
    code, out, _ = run(capsys, "contrast", C / "11_or_squad_tweak.sfm", "--tweak", "Assassin1:0")
    assert code == 0 and out.strip() == "{Assassin1:1} causes nothing"


def test_contrast_default_override(capsys):
    code, out, _ = run(
        capsys, "contrast", C / "16_match_strike.sfm", "--default", "Strike:1, Oxygen:0, Fire:0"
    )
    assert code == 0 and out.strip() == "{Oxygen:1} causes {Fire:1}"


def test_contrast_mutually_exclusive(capsys):
    code, _, err = run(capsys, "contrast", C / "16_match_strike.sfm", "--default", "Strike:0", "--tweak", "Strike:0")
    assert code == 2 and "exclusive" in err


def test_scenario_run(capsys):
    code, out, _ = run(capsys, "scenario", "run", C)
    assert code == 0
    assert out.strip().splitlines()[-1] == "26 passed, 0 failed"


def test_scenario_run_failure_exit(capsys, tmp_path):
    (tmp_path / "x.sfm").write_text("model { node A exo domain {0, 1} }\nvfi {A: 1}\nexpect answer {A: 0}\n")
    code, out, _ = run(capsys, "scenario", "run", tmp_path)
    assert code == 1 and "0 passed, 1 failed" in out


def test_gmt(capsys, tmp_path):
    f = tmp_path / "g.txt"
    f.write_text("A B\nB A\n")
    code, out, _ = run(capsys, "gmt", f)
    assert code == 0 and out.strip() == "cycle: A B A"
    f.write_text("A B\nB C\n")
    assert run(capsys, "gmt", f)[1].strip() == "root: A"


def test_validate(capsys, tmp_path):
    code, out, _ = run(capsys, "validate", C / "14_connected_preemption.sfm")
    assert code == 0 and "order: Assassin1 EarlyDeath Assassin2 LateDeath" in out
    bad = tmp_path / "bad.sfm"
    bad.write_text("model { node A exo domain {0, 1} node B endo parents (A) domain {0, 1} table { (0) -> 1 } }")
    code, out, _ = run(capsys, "validate", bad, "--format", "json")
    doc = json.loads(out)
    assert code == 1 and doc["ok"] is False
    assert doc["violations"][0]["message"] == "table not left-total at B"


def test_parse_error_exit(capsys, tmp_path):
    bad = tmp_path / "bad.sfm"
    bad.write_text("model { node }")
    code, _, err = run(capsys, "validate", bad)
    assert code == 2 and "1:14" in err


def test_infer_and_partial(capsys):
    code, out, _ = run(capsys, "infer", C / "24_shakespeare_subjunctive.sfm")
    assert code == 0 and out.splitlines()[0] == "{Shakespeare:0, Writer2:1, Hamlet:1}"
    code, out, _ = run(capsys, "infer", C / "14_connected_preemption.sfm", "--exo", "Assassin1:0",
                       "--targets", "Assassin2", "--format", "json")
    doc = json.loads(out)
    assert doc["world"] == {"Assassin2": "1"} and doc["evaluated"] == ["EarlyDeath", "Assassin2"]


def test_csp(capsys):
    code, out, _ = run(capsys, "csp", C / "25_shakespeare_indicative.sfm", "--format", "json")
    assert code == 0 and json.loads(out)["solutions"] == [{"Writer2": "1"}]


def test_team_fd_and_budget(capsys):
    code, out, _ = run(capsys, "team", C / "13_and_squad_tweak.sfm")
    assert code == 0 and out.strip().endswith("4 worlds")
    code, out, _ = run(capsys, "fd", C / "26_impossible_interventions.sfm", "--x", "Letter1,Letter2", "--y", "Word")
    assert code == 0 and "holds" in out and "not" not in out
    code, _, err = run(capsys, "team", C / "13_and_squad_tweak.sfm", "--budget", "3")
    assert code == 3 and "budget" in err


def test_bad_assignment_is_usage_error(capsys):
    code, _, err = run(capsys, "infer", C / "01_assassin_shoots.sfm", "--exo", "Nobody:1")
    assert code == 2
    code, _, _ = run(capsys, "infer", C / "01_assassin_shoots.sfm", "--exo", "Assassin:")
    assert code == 2


def test_argparse_usage_exit():
    with pytest.raises(SystemExit) as e:
        main(["nonsense"])
    assert e.value.code == 2


CPT = """# X -> Y
X - 0 1/3
X - 1 2/3
Y X=0 a 1/2
Y X=0 b 1/2
Y X=1 a 1/4
Y X=1 b 3/4
"""


def test_prob_commands(capsys, tmp_path):
    f = tmp_path / "bn.txt"
    f.write_text(CPT)
    code, out, _ = run(capsys, "prob", "push", f)
    assert code == 0
    assert out.splitlines() == ["{X:0, Y:a} 1/6", "{X:0, Y:b} 1/6", "{X:1, Y:a} 1/6", "{X:1, Y:b} 1/2"]
    code, out, _ = run(capsys, "prob", "import-bn", f, "--format", "json")
    doc = json.loads(out)
    assert doc["noise"]["U_Y"] == [["0/1", "1/4"], ["1/4", "1/4"], ["1/2", "1/2"]]
    a = run(capsys, "prob", "sample", f, "--seed", "4", "--n", "2000", "--format", "json")[1]
    b = run(capsys, "prob", "sample", f, "--seed", "4", "--n", "2000", "--format", "json")[1]
    assert a == b
    assert sum(r["count"] for r in json.loads(a)["counts"]) == 2000


def test_prob_bad_cpt(capsys, tmp_path):
    f = tmp_path / "bn.txt"
    f.write_text("X - 0 1/2\n")
    code, _, err = run(capsys, "prob", "push", f)
    assert code == 2 and "sum" in err


def test_bench(capsys):
    code, out, _ = run(capsys, "bench", C / "15_disconnected_preemption.sfm", "--format", "json")
    doc = json.loads(out)
    assert code == 0
    assert doc["rows"] == [{"tweak": "{Assassin1:0}", "vfi": 2, "cfi": 2, "saved": 0}]
    assert doc["totals"] == {"vfi": 2, "cfi": 2, "saved": 0}


def test_json_is_byte_identical(capsys):
    a = run(capsys, "scenario", "run", C, "--format", "json")[1]
    b = run(capsys, "scenario", "run", C, "--format", "json")[1]
    assert a == b and json.loads(a)["passed"] == 26


def test_module_entry_point():
    r = subprocess.run(
        [sys.executable, "-m", "sfm", "contrast", str(C / "11_or_squad_tweak.sfm")],
        capture_output=True, text=True,
    )
    assert r.returncode == 0 and r.stdout.strip() == "{Assassin1:1} causes nothing"

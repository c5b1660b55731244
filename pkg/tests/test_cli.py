import json

import pytest

from qdslab.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    return code, capsys.readouterr().out


def exit_code(argv) -> int:
    try:
        return main(list(argv))
    except SystemExit as e:  # argparse usage errors
        return e.code


def test_roots_a2(capsys):
    code, out = run(capsys, "roots", "--type", "A", "--rank", "2")
    rep = json.loads(out)
    assert code == 0
    assert len(rep["roots"]) == 6 and rep["plus_condition_set_size"] == 4
    assert rep["bruteforce_agrees"] and rep["dual_coxeter_number"] == 3


def test_roots_a1(capsys):
    code, out = run(capsys, "roots", "--type", "A", "--rank", "1")
    assert code == 0 and json.loads(out)["plus_condition_set"] == ["-α1+δ"]


@pytest.mark.parametrize("argv", [
    ("roots", "--type", "A", "--rank", "0"),
    ("roots", "--type", "G", "--rank", "2"),
    ("check", "--kappa", "0"),
    ("check", "--kappa", "x/"),
    ("check", "--side", "sideways"),
    ("roots", "--bogus"),
])
def test_config_errors_exit_2(argv):
    assert exit_code(argv) == 2


def test_check_examples(capsys):
    _, out = run(capsys, "check", "--kappa", "2/3", "--weight=-k")
    rep = json.loads(out)
    assert rep["minus"]["pass"] and rep["admissible"]["principal"] and rep["admissible"]["nondegenerate"]
    _, out = run(capsys, "check", "--kappa", "3", "--weight", "1")
    rep = json.loads(out)
    assert not rep["minus"]["pass"] and rep["minus"]["witnesses"] == ["α1"]
    _, out = run(capsys, "check", "--kappa", "generic", "--weight", "1")
    assert json.loads(out)["plus"]["pass"]


def test_verify_and_negative_control(capsys):
    code, out = run(capsys, "verify", "--depth-t", "1", "--depth-h", "3", "--side", "both")
    assert code == 0 and json.loads(out)["ok"]
    code, out = run(capsys, "verify", "--depth-t", "1", "--depth-h", "3", "--corrupt", "0,1,3")
    rep = json.loads(out)
    assert code == 1 and not rep["ok"]
    bad = [r for side in rep["sides"] for r in side["identities"] if not r["ok"]]
    assert bad and any(r.get("dump") for r in bad)


def test_cohomology_exit_codes(capsys):
    code, out = run(capsys, "cohomology", "--weight", "2/7", "--depth-t", "3", "--depth-h", "7",
                    "--eigenvalues", "4")
    rep = json.loads(out)
    assert code == 0 and rep["predicted_h0"] == [1, 1, 2, 3]
    assert [d for _, d in rep["certified_h0"]] == [1, 1, 2, 3]
    # nothing can be certified in an empty window
    code, _ = run(capsys, "cohomology", "--depth-t", "0", "--depth-h", "0")
    assert code == 1


def test_config_file_and_override(tmp_path, capsys):
    cfg = tmp_path / "run.ini"
    cfg.write_text("[run]\ntype = A\nrank = 2\nformat = text\n")
    code, out = run(capsys, "roots", "--config", str(cfg))
    assert code == 0 and out.startswith("roots:") and "A2" in out
    code, out = run(capsys, "roots", "--config", str(cfg), "--rank", "1", "--format", "json")
    assert json.loads(out)["algebra"] == "A1"
    bad = tmp_path / "bad.ini"
    bad.write_text("[run]\ncolour = blue\n")
    assert exit_code(["roots", "--config", str(bad)]) == 2


def test_csv_output(capsys):
    code, out = run(capsys, "roots", "--format", "csv")
    lines = out.splitlines()
    assert code == 0 and lines[0] == "root,positive,in_condition_set"
    assert "-α1+δ,True,True" in lines


def test_output_is_deterministic(tmp_path, capsys):
    paths = [tmp_path / "a.json", tmp_path / "b.json"]
    for p in paths:
        assert main(["cohomology", "--depth-t", "2", "--depth-h", "5", "--jobs", "2", "--out", str(p)]) == 0
    assert paths[0].read_bytes() == paths[1].read_bytes()

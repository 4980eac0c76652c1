import json
import subprocess
import sys

from alexlab.cli import main


def run_cli(args, capsys):
    code = main(args)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def run_json(args, capsys):
    code, out, err = run_cli(args, capsys)
    assert code == 0, err
    return json.loads(out)


def test_chen_free2(capsys):
    doc = run_json(["chen", "--max-n", "6", "builtin:free(2)"], capsys)
    assert doc["schema"] == "alexlab/1"
    assert doc["input"] == "<x1,x2 | >"
    # theta_1 = b_1(F_2) = 2 (the Massey correspondence starts at n = 2)
    assert doc["theta"] == [2, 1, 2, 3, 4, 5]


def test_cv_member_klein(capsys):
    doc = run_json(["cv-member", "--depth", "1", "--point",
                    "free=[−1];torsion=[1]", "builtin:klein_bottle"],
                   capsys)
    assert doc["member"] is True
    doc2 = run_json(["cv-member", "--depth", "1", "--point",
                     "free=[-1];torsion=[-1]", "builtin:klein_bottle"],
                    capsys)
    assert doc2["member"] is False


def test_abelianize_dihedral(capsys):
    doc = run_json(["abelianize", "<x1,x2 | x1^2, x2^2>"], capsys)
    assert doc["rank"] == 0 and doc["torsion"] == [2, 2]


def test_alexander_routes(capsys):
    doc = run_json(["alexander", "builtin:trefoil"], capsys)
    assert doc["route"] == "univariate"
    assert doc["presentation"]["relations"] == [["t^2 - t + 1"]]
    doc = run_json(["alexander", "builtin:free(3)"], capsys)
    assert doc["route"] == "koszul"
    doc = run_json(["alexander", "--p", "2", "builtin:free(2)"], capsys)
    assert doc["dimension"] == 5
    doc = run_json(["alexander", "--matrix", "builtin:trefoil"], capsys)
    assert doc["presentation"]["relations"] == [["t^2 - t + 1", "-t^2 + t - 1"]]


def test_chen_p(capsys):
    doc = run_json(["chen-p", "--p", "3", "--max-n", "5", "builtin:free(1)"],
                   capsys)
    assert doc["theta_p"] == [1, 1, 0, 0, 0]


def test_cv_ideal(capsys):
    doc = run_json(["cv-ideal", "--depth", "1", "builtin:trefoil"], capsys)
    assert doc["ideal"]["generators"] == ["t^2 - t + 1"]


def test_resonance(capsys):
    doc = run_json(["resonance", "--depth", "1", "--point", "[1,0]",
                    "builtin:heisenberg_quotient"], capsys)
    assert doc["member"] is True
    doc = run_json(["resonance", "--depth", "1", "--point", "[1,1]", "--ideal",
                    "builtin:raag(complete(2))"], capsys)
    assert doc["member"] is False
    assert doc["ideal"]["generators"] == ["x1", "x2"]


def test_holonomy_chen(capsys):
    doc = run_json(["holonomy-chen", "--max-n", "6",
                    "builtin:raag(path(3))"], capsys)
    assert doc["theta_bar"] == [3, 1, 2, 3, 4, 5]


def test_finiteness(capsys):
    assert run_json(["finiteness", "--depth", "1", "builtin:trefoil"],
                    capsys)["finite"] is True
    assert run_json(["finiteness", "--depth", "1", "builtin:free(2)"],
                    capsys)["finite"] is False


def test_check_extension_bb(capsys):
    doc = run_json(["check-extension", "--bb-tree", "path(3)",
                    "--max-n", "5"], capsys)
    report = doc["report"]
    assert report["verdict"] == "EQUAL_FROM_2"
    assert report["theta_K"][1:] == report["theta_G"][1:]


def test_check_extension_file(tmp_path, capsys):
    data = {
        "kernel": "<a,b | >",
        "quotient": "<t | >",
        "action": [["a", "a b a^-1"]],
    }
    path = tmp_path / "ext.json"
    path.write_text(json.dumps(data))
    doc = run_json(["check-extension", "-f", str(path), "--max-n", "4",
                    "--p", "2"], capsys)
    report = doc["report"]
    assert report["verdict"] == "EQUAL_FROM_2"
    assert report["flags"]["p_exact_split(2)"] is True


def test_builtin_verb(capsys):
    doc = run_json(["builtin", "klein_bottle"], capsys)
    assert doc["input"] == "<t,a | t a t^-1 a>"


def test_exit_codes(capsys):
    code, _out, err = run_cli(["abelianize", "<x1 x2 |"], capsys)
    assert code == 2 and "line" in err
    code, _out, err = run_cli(["chen", "--max-n", "99", "builtin:free(2)"],
                              capsys)
    assert code == 3 and "guard" in err
    code, _out, err = run_cli(["alexander", "builtin:klein_bottle"], capsys)
    assert code == 3  # neither Koszul nor univariate applies


def test_table_format(capsys):
    code, out, _err = run_cli(["abelianize", "--format", "table",
                               "builtin:trefoil"], capsys)
    assert code == 0
    assert "rank" in out and "torsion" in out


def test_determinism(capsys):
    args = ["chen", "--max-n", "5", "builtin:raag(path(3))"]
    _c, out1, _e = run_cli(args, capsys)
    _c, out2, _e = run_cli(args, capsys)
    assert out1 == out2


def test_console_script_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "alexlab.cli", "chen", "--max-n", "3",
         "builtin:free(2)"],
        capture_output=True, text=True)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["theta"] == [2, 1, 2]

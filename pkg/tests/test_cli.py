import json

import pytest

from sscurves.cli import main
from sscurves.report import BatchReport, render_report


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_mass_text_and_json(capsys):
    code, out, _ = run(capsys, "mass")
    assert code == 0
    assert "1395421/82944" in out and "8485039/497664" in out
    code, out, _ = run(capsys, "mass", "--out", "json", "--check")
    assert code == 0
    rows = {r["p"]: r for r in json.loads(out)["mass"]}
    assert rows[2]["M4_indecomposable"] == "1/3317760"
    assert rows[11]["curve_mass"] == ">= 5/8"


def test_solve(capsys):
    code, out, _ = run(capsys, "solve", "--vars", "x,y", "--poly", "x^2 - y", "--poly", "y - 4")
    assert code == 0
    assert out.splitlines() == ["field F_11, 2 points", "(2, 4)", "(9, 4)"]
    code, out, _ = run(capsys, "solve", "--vars", "x", "--poly", "x^2 + 7x + 2",
                       "--field", "closure", "--out", "json")
    doc = json.loads(out)
    assert code == 0 and doc["field"]["k"] == 2 and len(doc["points"]) == 2


def test_solve_from_file(capsys, tmp_path):
    f = tmp_path / "sys.txt"
    f.write_text("# a system\nx - 1\ny - 2\n")
    code, out, _ = run(capsys, "solve", "--vars", "x,y", "--file", str(f))
    assert code == 0 and "(1, 2)" in out


def test_input_errors(capsys):
    assert run(capsys, "solve", "--vars", "x", "--poly", "x^^2")[0] == 1
    assert run(capsys, "solve", "--vars", "x")[0] == 1
    assert run(capsys, "aut", "N1:99")[0] == 1
    code, _, err = run(capsys, "solve", "--vars", "x,y", "--poly", "x*y - 1")
    assert code == 1 and "error" in err


def test_resource_exit_code(capsys):
    code, _, err = run(capsys, "solve", "--vars", "a,b,c,d", "--time-budget", "0",
                       "--poly", "a^2*b + c*d + 1", "--poly", "b^2*c + a*d + 2",
                       "--poly", "c^2*d + a*b + 3", "--poly", "d^2*a + b*c + 4")
    assert code == 3 and "resource" in err


def test_aut_check(capsys):
    code, out, _ = run(capsys, "aut", "Dege:12", "--check", "--out", "json")
    assert code == 0
    row = json.loads(out)["curves"][0]
    assert (row["curve"], row["order"], row["group_name"]) == ("Dege:12", 24, "S4")


def test_aut_text_is_deterministic(capsys):
    a = run(capsys, "aut", "Dege:10")[1]
    b = run(capsys, "aut", "Dege:10")[1]
    strip = lambda t: [ln.rsplit(None, 1)[0] for ln in t.splitlines() if ln.startswith("Dege:10")]
    assert strip(a) == strip(b) != []
    assert "D6" in a and "12" in a


def test_empty_batch():
    assert json.loads(render_report(BatchReport(), "json")) == {"curves": []}
    assert render_report(BatchReport(), "json") == render_report(BatchReport(), "json")
    assert render_report(BatchReport(), "text").startswith("no curves")


def test_batch_writes_report_and_figures(capsys, tmp_path):
    out = tmp_path / "rep.json"
    code, _, _ = run(capsys, "batch", "--only", "N1:2,N1:4,alc", "--no-closure", "--check",
                     "--out", "json", "--output", str(out))
    assert code == 0
    doc = json.loads(out.read_text())
    assert [c["curve"] for c in doc["curves"]] == ["N1:2", "N1:4"]
    assert (tmp_path / "rep_orders.png").stat().st_size > 0
    out2 = tmp_path / "plain.txt"
    code, _, _ = run(capsys, "batch", "--only", "Dege:6", "--no-closure", "--no-figures",
                     "--output", str(out2))
    assert code == 0
    assert "Dege:6" in out2.read_text()
    assert not (tmp_path / "plain_orders.png").exists()


def test_curve_file(capsys, tmp_path):
    f = tmp_path / "c.json"
    f.write_text(json.dumps([{"id": "mine", "kind": "Dege",
                              "P": [{"coef": 1, "exps": [3, 0, 0, 0]},
                                    {"coef": 1, "exps": [0, 3, 0, 0]},
                                    {"coef": 2, "exps": [0, 0, 0, 3]}]}]))
    code, out, _ = run(capsys, "aut", "mine", "--curve-file", str(f), "--out", "json")
    assert code == 0
    assert json.loads(out)["curves"][0]["order"] == 4
    bad = tmp_path / "bad.json"
    bad.write_text("[{}]")
    assert run(capsys, "aut", "mine", "--curve-file", str(bad))[0] == 1


@pytest.mark.parametrize("argv", [["--help"], ["aut", "--help"]])
def test_help(argv, capsys):
    with pytest.raises(SystemExit) as info:
        main(argv)
    assert info.value.code == 0

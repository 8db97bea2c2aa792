import json
import subprocess
import sys

import pytest

from cuspcalc.cli import main, read_config, run
from cuspcalc.errors import ParseError
from cuspcalc.report import emit, parse
from cuspcalc.reproduce import CUSPIDAL_B, GENERIC_AB, NODO


def _strip_duration(text: str) -> dict:
    d = json.loads(text)
    d.pop("duration")
    return d


@pytest.fixture
def weierstrass_cfg(tmp_path):
    p = tmp_path / "w.cfg"
    p.write_text(f"# generic data\ntype = weierstrass\nA = {GENERIC_AB[0]}\nB = {GENERIC_AB[1]}\n", encoding="utf-8")
    return str(p)


def test_germ_classify_cusp():
    code, report, text = run(["germ", "classify", "--poly", "x^2 - y^3 - z^2 + w^3"])
    assert code == 0 and report is not None
    assert report.results["germ_class"] == "ThreefoldCusp_IIxII"
    assert "ThreefoldCusp_IIxII" in text


@pytest.mark.parametrize("action, expected", [("milnor", 4), ("tyurina", 4)])
def test_germ_numbers(action, expected):
    code, report, _ = run(["--json", "germ", action, "--poly", "x^2 - y^3 - z^2 + w^3"])
    assert code == 0
    assert expected in report.results.values()


def test_germ_t1_with_variable_order():
    code, report, text = run(["germ", "t1", "--poly", "x^2 - y^3", "--vars", "x,y"])
    assert code == 0
    assert sorted(report.results["t1_basis"]) == ["1", "y"]


def test_parse_errors_exit_1():
    assert run(["germ", "classify", "--poly", "x^^2"])[0] == 1
    assert run(["germ", "bogus", "--poly", "x"])[0] == 1
    assert run([])[0] == 1
    assert run(["cohomology", "bott", "--args", "a,b"])[0] == 1


def test_precondition_errors_exit_2(tmp_path):
    assert run(["germ", "t1", "--poly", "x^2 - y^3 - z^2", "--vars", "x,y,z,w"])[0] == 2
    assert run(["deform", "critical"])[0] == 2
    assert run(["germ", "classify", "--poly", "1 + x"])[0] == 2
    assert run(["cohomology", "bott", "--args", "5,0,2,0"])[0] == 2
    cfg = tmp_path / "bad.cfg"
    cfg.write_text("type = weierstrass\nA = 0\nB = 0\n", encoding="utf-8")
    assert run(["fibration", "census", "--config", str(cfg)])[0] == 2


def test_config_tolerance_checked(tmp_path):
    cfg = tmp_path / "tol.cfg"
    cfg.write_text(f"A = {GENERIC_AB[0]}\nB = {GENERIC_AB[1]}\ntolerance = 0.5\n", encoding="utf-8")
    code, report, text = run(["fibration", "census", "--config", str(cfg)])
    assert code == 2 and report is None and "tolerance" in text
    cfg.write_text(f"A = {GENERIC_AB[0]}\nB = {GENERIC_AB[1]}\ntolerance = tiny\n", encoding="utf-8")
    assert run(["fibration", "census", "--config", str(cfg)])[0] == 1
    cfg.write_text(f"A = {GENERIC_AB[0]}\nB = {GENERIC_AB[1]}\ntolerance = 1e-8\nexact = no\n", encoding="utf-8")
    code, report, _ = run(["fibration", "census", "--config", str(cfg)])
    assert code == 0 and "numeric tolerance 1e-08" in report.notes


def test_read_config(tmp_path):
    p = tmp_path / "c.cfg"
    p.write_text("a = 1  # note\n\n# skipped\nb=x = y\n", encoding="utf-8")
    assert read_config(str(p)) == {"a": "1", "b": "x = y"}
    p.write_text("novalue\n", encoding="utf-8")
    with pytest.raises(ParseError):
        read_config(str(p))
    with pytest.raises(ParseError):
        read_config(str(tmp_path / "missing.cfg"))


def test_weierstrass_census(weierstrass_cfg):
    code, report, _ = run(["fibration", "census", "--config", weierstrass_cfg])
    assert code == 0
    assert report.results["totals"] == {"Node_A1": 12}
    code, report, _ = run(["fibration", "discriminant", "--config", weierstrass_cfg])
    assert report.results["degree"] == 12 and report.results["squarefree"]


def test_cuspidal_census(tmp_path):
    cfg = tmp_path / "c.cfg"
    cfg.write_text(f"A = 0\nB = {CUSPIDAL_B}\n", encoding="utf-8")
    code, report, _ = run(["fibration", "census", "--config", str(cfg)])
    assert code == 0 and report.results["totals"] == {"ThreefoldCusp_IIxII": 6}


def test_pencil_commands(tmp_path):
    cfg = tmp_path / "p.cfg"
    cfg.write_text(f"type = pencil\na = {NODO[0]}\nb = {NODO[1]}\n", encoding="utf-8")
    code, report, _ = run(["fibration", "census", "--config", str(cfg)])
    assert code == 0 and report.results["euler"] == {"X": 12, "resolution": 24}
    code, report, _ = run(["fibration", "discriminant", "--config", str(cfg)])
    assert report.results["root_count"] == 12 and report.results["exact_roots"] == ["0"]
    assert len(report.numeric["roots"]) == 12


def test_json_round_trip_and_exact_strings(weierstrass_cfg):
    code, report, text = run(["--json", "fibration", "census", "--config", weierstrass_cfg])
    assert code == 0
    again = parse(text)
    assert emit(again) == text
    d = json.loads(text)
    assert d["schema"] == 1
    assert list(d) == sorted(d)
    # floats only in the numeric block
    def floats(x):
        if isinstance(x, float):
            return 1
        if isinstance(x, dict):
            return sum(floats(v) for v in x.values())
        if isinstance(x, list):
            return sum(floats(v) for v in x)
        return 0

    assert floats(d["results"]) == 0
    assert floats(d["numeric"]) > 0


def test_reruns_are_byte_identical_except_duration(weierstrass_cfg):
    a = run(["--json", "fibration", "census", "--config", weierstrass_cfg])[2]
    b = run(["--json", "fibration", "census", "--config", weierstrass_cfg])[2]
    assert _strip_duration(a) == _strip_duration(b)
    strip = lambda t: "\n".join(line for line in t.splitlines() if '"duration"' not in line)
    assert strip(a) == strip(b)


def test_output_file(tmp_path):
    out = tmp_path / "r.json"
    code, report, _ = run(["--output", str(out), "cohomology", "bott", "--args", "0,0,2,3"])
    assert code == 0
    assert parse(out.read_text(encoding="utf-8")).results["dimension"] == 10


def test_deform_commands():
    code, report, _ = run(["deform", "critical", "--params", "16,1,13,1"])
    assert code == 0 and report.results["critical_system"][0] == "3*y^2 - w - 1"
    code, report, _ = run(["deform", "fiber", "--params", "0,0,0,0"])
    assert code == 0
    assert report.results["singular_points"] == [{"class": "ThreefoldCusp_IIxII", "point": ["0", "0", "0", "0"]}]
    code, report, _ = run(["deform", "factored", "--params=-omega,1,0"])
    assert code == 0 and report.results["on_plane"] is True
    code, report, _ = run(["deform", "locus"])
    assert code == 0 and len(report.results["solutions"]) == 4


def test_transition_commands(tmp_path):
    code, report, text = run(["transition", "table"])
    assert code == 0 and len(report.results["rows"]) == 10
    assert text.splitlines()[0].split()[0] == "Variety"
    cfg = tmp_path / "t.cfg"
    cfg.write_text("h11 = 2\nh21 = 86\nN = 16\nk = 1\n", encoding="utf-8")
    code, report, _ = run(["transition", "propagate", "--config", str(cfg)])
    assert code == 0
    smooth = report.results["rows"][2]
    assert (smooth["rho"], smooth["dimdef"]) == (1, 101)
    cfg.write_text("h11 = 2\nh21 = 86\nn = 3\nm = 4\nk = 1\n", encoding="utf-8")
    assert run(["transition", "propagate", "--config", str(cfg)])[0] == 2
    cfg.write_text("chi_W = -161\n", encoding="utf-8")
    assert run(["transition", "table", "--config", str(cfg)])[0] == 2


def test_cohomology_bicubic():
    code, report, _ = run(["cohomology", "bicubic"])
    assert code == 0 and (report.results["h21"], report.results["chi"], report.results["b3"]) == (83, -162, 168)


def test_reproduce_subset():
    code, report, text = run(["reproduce-paper", "--criteria", "1,8"])
    assert code == 0 and report.results["passed"]
    assert len(text.splitlines()) == 2
    assert run(["reproduce-paper", "--criteria", "11"])[0] == 2


def test_main_prints(capsys):
    assert main(["cohomology", "bott", "--args", "0,0,1,6"]) == 0
    assert "= 7" in capsys.readouterr().out
    assert main(["germ", "classify", "--poly", "x^^"]) == 1
    assert capsys.readouterr().err.startswith("error:")


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "cuspcalc", "--json", "cohomology", "bott", "--args", "1,1,2,0"],
        capture_output=True, text=True, encoding="utf-8", check=False,
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["results"]["dimension"] == 1


def test_reproduce_failure_lists_expected_and_got(monkeypatch):
    from cuspcalc import reproduce

    broken = lambda: [reproduce._check(8, "broken check", 1, 2)]
    monkeypatch.setitem(reproduce.CRITERIA, 8, ("transition table", broken))
    code, report, text = run(["reproduce-paper", "--criteria", "8"])
    assert code == 3 and not report.results["passed"]
    assert "[FAIL] 8. broken check: expected 1, got 2" in text
    (entry,) = report.results["criteria"]
    assert entry["failing"] == [{"name": "broken check", "expected": "1", "got": "2"}]

import json
import subprocess
import sys

import pytest

from crnobstruct.cli import main

FIXTURE_EXITS = {
    "paper-4sp.crn": 10,
    "paper-3sp-core.crn": 10,
    "paper-6sp-ma.crn": 10,
    "inflow-outflow.crn": 0,
    "simple-zero.crn": 0,
    "degenerate.crn": 11,
}


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


@pytest.mark.parametrize("name, code", sorted(FIXTURE_EXITS.items()))
def test_analyze_exit_codes(capsys, fixtures_dir, name, code):
    assert run(capsys, "analyze", fixtures_dir / name, "--json")[0] == code


def test_analyze_json(capsys, fixtures_dir):
    code, out, _ = run(capsys, "analyze", fixtures_dir / "paper-4sp.crn", "--json")
    rep = json.loads(out)
    assert rep["det"] == "1*r[1,A]*r[3,B]*r[4,C]*r[5,D] - 2*r[2,A]*r[3,B]*r[4,C]*r[5,D]"
    assert rep["verdict"]["kind"] == "OBSTRUCTED"
    assert rep["verdict"]["certificate"]["factor"] == "1*r[1,A] - 2*r[2,A]"
    assert rep["det_matches_cofactor_expansion"] is True
    assert rep["positive_kernel_vector"] == ["1"] * 6


def test_analyze_is_byte_identical(capsys, fixtures_dir):
    a = run(capsys, "analyze", fixtures_dir / "paper-6sp-ma.crn", "--json", "--seed", "9")[1]
    b = run(capsys, "analyze", fixtures_dir / "paper-6sp-ma.crn", "--json", "--seed", "9")[1]
    assert a == b


def test_analyze_text_with_rates(capsys, fixtures_dir):
    code, out, _ = run(capsys, "analyze", fixtures_dir / "paper-4sp.crn",
                       "--rates", fixtures_dir / "paper-4sp-singular.rates")
    assert code == 10
    assert "verdict: OBSTRUCTED" in out
    assert "alg mult = 2, geom mult = 1" in out


def test_child_selections_and_pcs(capsys, fixtures_dir):
    code, out, _ = run(capsys, "child-selections", fixtures_dir / "paper-4sp.crn")
    rows = [json.loads(line) for line in out.splitlines()]
    assert [r["coefficient"] for r in rows] == ["1", "0", "-2"]
    code, out, _ = run(capsys, "pcs", fixtures_dir / "paper-4sp.crn", "--omit", "D", "--json")
    assert len(json.loads(out)["partial_child_selections"]) == 8
    assert run(capsys, "pcs", fixtures_dir / "paper-4sp.crn", "--omit", "Q")[0] == 2


def test_det_and_adjugate(capsys, fixtures_dir):
    _, out, _ = run(capsys, "det", fixtures_dir / "paper-3sp-core.crn", "--json")
    assert json.loads(out)["tr_adj"] == "0"
    _, out, _ = run(capsys, "adjugate", fixtures_dir / "paper-4sp.crn", "--json")
    adj = json.loads(out)
    assert adj["adjugate"][0][0] == "0"
    assert adj["trace"] == json.loads(run(capsys, "det", fixtures_dir / "paper-4sp.crn", "--json")[1])["tr_adj"]


def test_oracle(capsys, fixtures_dir):
    code, out, _ = run(capsys, "oracle", fixtures_dir / "paper-4sp.crn",
                       "--rates", fixtures_dir / "paper-4sp-singular.rates")
    rep = json.loads(out)
    assert code == 0
    assert (rep["alg_mult"], rep["geom_mult"], rep["rank"]) == (2, 1, 3)
    assert rep["char_poly"] == ["0", "0", "3", "4"]


def test_massaction(capsys, fixtures_dir):
    code, out, _ = run(capsys, "massaction", fixtures_dir / "paper-6sp-ma.crn",
                       "--k", fixtures_dir / "paper-6sp-ma.k", "--x", fixtures_dir / "paper-6sp-ma.x",
                       "--probe", "20")
    rep = json.loads(out)
    assert rep["residual"] == ["0"] * 6 and rep["determinant"] == "0" and rep["alg_mult"] >= 2
    assert rep["probe"]["witness"] is not None


def test_massaction_needs_something(capsys, fixtures_dir):
    assert run(capsys, "massaction", fixtures_dir / "paper-6sp-ma.crn")[0] == 2
    assert run(capsys, "massaction", fixtures_dir / "paper-6sp-ma.crn", "--k",
               fixtures_dir / "paper-6sp-ma.k")[0] == 2


def test_kernel(capsys, fixtures_dir):
    _, out, _ = run(capsys, "kernel", fixtures_dir / "paper-3sp-core.crn")
    assert out.strip() == "absent"


def test_input_errors(capsys, tmp_path, fixtures_dir):
    bad = tmp_path / "bad.crn"
    bad.write_text("1: A -> B\n1: B -> A\n")
    code, _, err = run(capsys, "analyze", bad)
    assert code == 2 and "line 2" in err
    assert run(capsys, "analyze", tmp_path / "missing.crn")[0] == 2
    rates = tmp_path / "r.rates"
    rates.write_text("r[1,A] = 1\n")
    assert run(capsys, "oracle", fixtures_dir / "paper-4sp.crn", "--rates", rates)[0] == 2


def test_cap_exceeded(capsys, fixtures_dir):
    assert run(capsys, "analyze", fixtures_dir / "paper-6sp-ma.crn", "--max-enum", "3")[0] == 3


def test_module_entry_point(fixtures_dir):
    proc = subprocess.run([sys.executable, "-m", "crnobstruct", "det", str(fixtures_dir / "paper-4sp.crn")],
                          capture_output=True, text=True)
    assert proc.returncode == 0
    assert proc.stdout.splitlines()[0] == "det G = 1*r[1,A]*r[3,B]*r[4,C]*r[5,D] - 2*r[2,A]*r[3,B]*r[4,C]*r[5,D]"

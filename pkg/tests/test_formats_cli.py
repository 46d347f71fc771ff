import json
import subprocess
import sys

import pytest
from hypothesis import given

from cslie import linalg as la
from cslie.cli import main
from cslie.families import h3R_base, example_catalog, step3_data
from cslie.forms import Endo
from cslie.formats import (
    FormatError,
    algebra_from_json,
    algebra_to_json,
    data_from_json,
    data_to_json,
    dumps,
    matrix_from_json,
    pair_from_json,
    pair_to_json,
    read_matrix,
    write_matrix_text,
)
from cslie.notation import parse_salamon
from cslie.redox import OxidationData, validate_oxidation_data

from helpers import endos


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_algebra_json_round_trip():
    for e in example_catalog().values():
        assert algebra_from_json(json.loads(dumps(algebra_to_json(e.g)))) == e.g


def test_algebra_json_errors():
    with pytest.raises(FormatError):
        algebra_from_json({"brackets": []})
    with pytest.raises(FormatError):
        algebra_from_json({"dim": 2, "brackets": [{"i": 1, "j": 3, "target": {"1": "1"}}]})
    with pytest.raises(FormatError):
        algebra_from_json({"dim": 3, "brackets": [{"i": 1, "j": 2, "target": {"3": "x"}}]})


@given(endos(4, real=False))
def test_matrix_round_trips(M):
    assert matrix_from_json(json.loads(json.dumps([[str(x) for x in r] for r in M.rows]))) == M


def test_matrix_text_file(tmp_path):
    M = Endo([[0, 1], [-1, 0]])
    p = tmp_path / "J.mat"
    p.write_text("# J\n" + write_matrix_text(M))
    assert read_matrix(p) == M
    with pytest.raises(FormatError):
        matrix_from_json([[1, 2], [3]])


def test_pair_and_data_round_trip():
    p = h3R_base()
    assert pair_from_json(pair_to_json(p)).ok
    d = step3_data()
    back = data_from_json(json.loads(dumps(data_to_json(d))))
    assert validate_oxidation_data(back).ok
    assert back.S11 == d.S11 and back.f1 == d.f1


# ---------------------------------------------------------------------------
# CLI
# ---------------------------------------------------------------------------


def test_cli_validate(capsys):
    code, out, _ = run(capsys, "validate", "(0,0,12,0)")
    assert code == 0 and "step 2" in out and "(2,4)" in out
    code, out, _ = run(capsys, "validate", "(0,0,12,34)")
    assert code == 1 and "(e1,e2,e4)" in out


def test_cli_validate_with_structures(capsys):
    code, out, _ = run(capsys, "validate", "(0,0,12,0)", "--J", "standard", "--omega", "e14+e23",
                       "--convention", "bracket")
    assert code == 0
    code, _, _ = run(capsys, "validate", "(0,0,0,0)", "--J", "standard", "--omega", "e12+e34")
    assert code == 1


def test_cli_parse_structured(capsys):
    code, out, _ = run(capsys, "parse", "(0,0,12,13)", "--format", "structured")
    assert code == 0
    st = json.loads(out)
    assert algebra_from_json(st["algebra"]) == parse_salamon("(0,0,12,13)")


def test_cli_parse_errors(capsys):
    code, _, err = run(capsys, "parse", "(0,0,1x)")
    assert code == 2 and err
    code, _, _ = run(capsys, "parse", "no-such-thing")
    assert code == 2
    code, _, _ = run(capsys, "bogus-verb")
    assert code == 2


def test_cli_analyze(capsys):
    code, out, _ = run(capsys, "analyze", "qh7+R")
    assert code == 0 and "5" in out


def test_cli_reduce(capsys):
    code, out, _ = run(capsys, "reduce", "qh7+R", "--ideal", "5,6")
    assert code == 0 and "reduced dim 4" in out and "(0,0,0,0)" in out
    code, out, _ = run(capsys, "reduce", "qh7+R", "--ideal", "1,2")
    assert code == 1


def test_cli_oxidize(capsys):
    code, out, _ = run(capsys, "oxidize", "--trivial", "--tau", "1,0")
    assert code == 0 and "(0,0,-12,0)" in out
    code, out, _ = run(capsys, "oxidize", "--family", "R4", "--case", "iv",
                       "--param", "alpha3=1", "--param", "gamma1=1")
    assert code == 0 and "step 4" in out
    code, _, _ = run(capsys, "oxidize", "--family", "R4", "--case", "ii", "--param", "b=0")
    assert code == 2


def test_cli_oxidize_bad_file(capsys, tmp_path):
    d = OxidationData(h3R_base(), f1=Endo.from_images(4, {1: la.unit_vec(4, 0)}))
    p = tmp_path / "bad.json"
    p.write_text(dumps(data_to_json(d)))
    code, out, _ = run(capsys, "oxidize", str(p))
    assert code == 1 and "condition: f ∈ V*⊗Der" in out
    good = tmp_path / "good.json"
    good.write_text(dumps(data_to_json(step3_data())))
    code, out, _ = run(capsys, "oxidize", str(good), "--format", "structured")
    assert code == 0 and json.loads(out)["ok"]


def test_cli_certify(capsys):
    code, out, _ = run(capsys, "certify", "h5+R3", "--J", "standard")
    assert code == 1 and "IMPOSSIBLE" in out
    code, out, _ = run(capsys, "certify", "(0,0,0,0)", "--J", "standard")
    assert code == 0 and "WITNESS" in out
    code, out, _ = run(capsys, "certify", "(0,0,0,0,12+34,0)")
    assert code == 1 and "IMPOSSIBLE" in out
    code, _, _ = run(capsys, "certify", "(0,0,12)")
    assert code == 2


def test_cli_sweep_small(capsys):
    code, out, _ = run(capsys, "sweep", "--grid", "0", "--family", "R4", "--case", "v", "--rows")
    assert code == 0 and "points: 1" in out


def test_cli_examples_and_output_file(capsys, tmp_path):
    out_file = tmp_path / "ex.txt"
    code, out, _ = run(capsys, "examples", "--output", str(out_file))
    assert code == 0
    assert out_file.read_text().strip() == out.strip()
    for name in example_catalog():
        assert name in out


def test_console_script_module_entry():
    r = subprocess.run([sys.executable, "-m", "cslie", "validate", "(0,0,12,0)"], capture_output=True, text=True)
    assert r.returncode == 0 and "step 2" in r.stdout

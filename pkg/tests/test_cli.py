import json

import pytest

from metaplectic.cli import ParseError, main, parse_root_datum
from metaplectic.root_data import CATALOG_NAMES, catalog

SL2_TEXT = """# simply connected, rank one
name = SL2
rank = 1
coroots = [[1],
           [-1]]   # split over lines
roots = [[2], [-2]]
simple = [0]
"""


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def report(capsys, *argv):
    code, out, _ = run(capsys, *argv)
    return code, json.loads(out)


@pytest.mark.parametrize("name", CATALOG_NAMES)
def test_text_round_trip(name):
    rd = catalog(name)
    assert parse_root_datum(rd.to_text()) == rd


def test_parse_comments_and_continuations():
    rd = parse_root_datum(SL2_TEXT)
    assert rd.coroots == ((1,), (-1,)) and rd.simple == (0,)


@pytest.mark.parametrize("text,line,col", [
    ("", 1, 1),
    ("# only a comment\n", 1, 1),
    ("name = X\nrank = 1\ncoroots = [[1],\n [-1]\nroots = [[2],[-2]]\nsimple = [0]\n", 5, 1),
    ("name = X\nrank 1\n", 2, 6),
    ("name = X\nrank = 1\ncoroots = [[1, 2]]\nroots = [[2]]\nsimple = [0]\n", 3, 1),
    ("name = X\nwidth = 3\n", 2, 1),
    ("name = X\nrank = 1\ncoroots = [[a]]\n", 3, 13),
])
def test_parse_errors_have_positions(text, line, col):
    with pytest.raises(ParseError) as e:
        parse_root_datum(text)
    assert (e.value.line, e.value.col) == (line, col)


def test_schema_first_and_deterministic(capsys, tmp_path):
    f = tmp_path / "sl2.txt"
    f.write_text(SL2_TEXT)
    code, out1, _ = run(capsys, "dualize", str(f), "--N", "2", "--Q", "[1]")
    _, out2, _ = run(capsys, "dualize", str(f), "--N", "2", "--Q", "[1]")
    assert code == 0 and out1 == out2
    rep = json.loads(out1)
    assert list(rep)[:4] == ["schema", "command", "result", "ledger"]
    assert rep["result"]["center_characters"] == "Z/2"
    assert rep["result"]["epsilon"]["table"] == [{"element": [0], "value": 0}, {"element": [1], "value": 1}]


def test_non_strict_refusal(capsys):
    code, rep = report(capsys, "dualize", "catalog:A1xA1", "--N", "2", "--Q", "xy")
    assert code == 1 and rep["result"]["refused"]
    v = rep["result"]["violation"]
    assert v["b(coroot, e_k)"] != v["<root, e_k> Q(coroot)"]


def test_classify(capsys):
    code, rep = report(capsys, "classify", "catalog:PGL2", "--N", "4")
    assert code == 0
    assert rep["result"]["cohomology"]["H2"] == "Z/2" and rep["result"]["cohomology"]["H3"] == "Z/2"


def test_validate_reports_broken_datum(capsys, tmp_path):
    f = tmp_path / "bad.txt"
    f.write_text("name = bad\nrank = 1\ncoroots = [[1], [-1]]\nroots = [[1], [-1]]\nsimple = [0]\n")
    code, rep = report(capsys, "validate", str(f))
    assert code == 1 and rep["result"]["violations"]


def test_hilbert_and_places(capsys):
    code, rep = report(capsys, "hilbert", "--place", "R", "--N", "2", "--", "-1", "-1")
    assert code == 0 and rep["result"]["exponent"] == 1
    code, _, err = run(capsys, "hilbert", "--place", "5", "--N", "3", "2", "3")
    assert code == 2 and "does not divide" in err


def test_symbol_suite(capsys):
    code, rep = report(capsys, "symbol-suite", "--place", "13", "--N", "4", "--sample", "2,-1,13,1/13,3")
    assert code == 0 and all(e["pass"] for e in rep["ledger"])


def test_torus_cover(capsys, tmp_path):
    f = tmp_path / "c.txt"
    f.write_text("0 1\n0 0\n")
    code, rep = report(capsys, "torus-cover", "--rank", "2", "--cocycle", str(f), "--place", "13", "--N", "4")
    assert code == 0
    assert rep["result"]["commutator_agrees_with"] == {"c_minus_ct": False, "c_plus_ct": True}


def test_theta(capsys):
    code, rep = report(capsys, "theta", "--rank", "2", "--N", "2", "--level", "1")
    assert code == 0 and rep["result"]["homotopy"] == ["Z/2", "Z/2 + Z/2", "0"]


def test_verify_single_suite(capsys):
    code, rep = report(capsys, "verify", "--suite", "schubert")
    assert code == 0 and rep["result"]["checks"] == len(rep["ledger"])


def test_usage_errors(capsys):
    assert run(capsys, "nonsense")[0] == 2
    assert run(capsys, "classify", "catalog:A1")[0] == 2
    assert run(capsys, "verify", "--suite", "nope")[0] == 2
    assert run(capsys, "classify", "/no/such/file", "--N", "2")[0] == 2


def test_catalog_listing(capsys):
    code, out, _ = run(capsys, "catalog")
    assert code == 0 and out.split() == list(CATALOG_NAMES)


def test_experiment_is_reported_not_judged(capsys):
    code, rep = report(capsys, "verify", "--suite", "torsion-free")
    assert code == 0 and rep["ledger"] == []
    assert all("observed" in o for o in rep["result"]["observations"])

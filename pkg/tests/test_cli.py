import json
from fractions import Fraction

import pytest

from toroidal_o import characters as ch
from toroidal_o import cli
from toroidal_o.toroidal import AlgebraConfig


def run(capsys, *argv):
    code = cli.main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_verify_algebra_passes(capsys):
    code, out, _ = run(capsys, "verify", "algebra", "--x", "W", "--n", "2", "--g", "2", "--D", "3")
    doc = json.loads(out)
    assert code == cli.EXIT_PASS
    assert doc["status"] == "pass" and doc["checked"] > 100
    assert set(doc) == {"suite", "status", "checked", "violations"}


def test_verify_si_s3(capsys):
    code, out, _ = run(capsys, "verify", "si", "--x", "S", "--n", "3", "--D", "2")
    assert code == 0 and json.loads(out)["status"] == "pass"


def test_usage_errors(capsys):
    assert run(capsys, "verify", "module", "--x", "H", "--n", "3")[0] == cli.EXIT_USAGE
    assert run(capsys, "char", "irr", "--mu", "0,1")[0] == cli.EXIT_USAGE
    assert run(capsys, "char", "irr", "--c", "1/0,1")[0] == cli.EXIT_USAGE
    assert run(capsys, "verify", "nonsense")[0] == cli.EXIT_USAGE
    assert run(capsys, "compose", "--k", "5")[0] == cli.EXIT_USAGE
    assert run(capsys, "verify", "derham", "--x", "S", "--n", "3")[0] == cli.EXIT_USAGE


def test_char_irr_trivial(capsys):
    code, out, _ = run(capsys, "char", "irr", "--D", "3")
    doc = json.loads(out)
    assert code == 0
    assert doc["entries"] == [{"degree": 0, "g_weight": [0], "x_weight": ["0", "0"], "mult": 1}]
    assert doc["truncation"] == 3


def test_char_tilt_generic_equals_std(capsys):
    flags = ["--lambda", "1", "--mu", "1,0", "--c", "1,0", "--D", "3"]
    _, a, _ = run(capsys, "char", "tilt", *flags)
    _, b, _ = run(capsys, "char", "std", *flags)
    assert json.loads(a)["entries"] == json.loads(b)["entries"]


def test_char_costd_trivial_is_gamma(capsys):
    _, out, _ = run(capsys, "char", "costd", "--x", "H", "--n", "2", "--D", "3")
    got = cli.character_from_json(json.loads(out))
    assert got.terms == ch.gamma(AlgebraConfig("H", 2, 2, 3), 3).terms


def test_json_round_trip(capsys):
    _, out, _ = run(capsys, "char", "std", "--x", "S", "--n", "3", "--mu", "1,0", "--c", "1/2,0,3", "--D", "2")
    doc = json.loads(out)
    back = cli.character_to_json(cli.character_from_json(doc), doc["config"])
    assert back == doc
    keys = [(e["degree"], e["g_weight"], [Fraction(a) for a in e["x_weight"]]) for e in doc["entries"]]
    assert keys == sorted(keys)


def test_pairing(capsys):
    code, out, _ = run(capsys, "pairing", "--n", "2", "--gamma", "1,1")
    doc = json.loads(out)
    assert code == 0 and doc["verified"] and len(doc["pairs"]) == 4
    code, out, _ = run(capsys, "pairing", "--n", "1", "--gamma", "0")
    assert json.loads(out)["pairs"] == [{"f": "1", "g": "1"}]
    assert run(capsys, "pairing", "--n", "3", "--gamma", "1,1,0")[0] == 0
    assert run(capsys, "pairing", "--n", "2", "--gamma", "1")[0] == cli.EXIT_USAGE


def test_compose(capsys):
    code, out, _ = run(capsys, "compose", "--k", "0", "--D", "3")
    doc = json.loads(out)
    assert code == 0 and doc["totals"] == {"L(0,mu_0,0)": 1, "L(0,mu_1,0)": 1}
    code, out, _ = run(capsys, "compose", "--k", "2", "--D", "3")
    assert code == 0 and json.loads(out)["totals"] == {"L(0,mu_2,0)": 1}
    code, out, _ = run(capsys, "compose", "--x", "H", "--n", "2", "--k", "1", "--D", "3")
    doc = json.loads(out)
    assert code == 0 and doc["totals"] == {"L(0,mu_0,0)": 1, "L(0,mu_1,0)": 2}


def test_compose_table_output(capsys):
    code, out, _ = run(capsys, "compose", "--k", "1", "--D", "3", "--format", "table")
    assert code == 0
    assert out.splitlines()[0].split() == ["factor", "shift", "mult"]


@pytest.mark.parametrize("argv", [
    ["verify", "socle", "--mu", "1,0", "--D", "3", "--seed", "7"],
    ["char", "irr", "--mu", "1,0", "--D", "3", "--format", "table"],
    ["verify", "module", "--x", "H", "--n", "2", "--lambda", "1", "--mu", "1", "--c", "1,0", "--D", "3"],
])
def test_byte_identical_reruns(capsys, argv):
    a = run(capsys, *argv)
    b = run(capsys, *argv)
    assert a == b


def test_report_schema_sorted():
    from toroidal_o.report import Report
    rep = Report("x")
    rep.fail("b", "2")
    rep.fail("a", "1")
    rep.notes.append("ignored")
    assert rep.to_dict() == {"suite": "x", "status": "fail", "checked": 0,
                             "violations": [{"case": "a", "detail": "1"}, {"case": "b", "detail": "2"}]}

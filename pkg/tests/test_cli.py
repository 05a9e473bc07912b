import json
import subprocess
import sys

import pytest
from hypothesis import given, strategies as st

from gendiv.cli import main
from gendiv.cli.curvefile import BUNDLED, CurveFileError, CurveParseError, load_curve, parse_curve_text, print_curve
from gendiv.cli.expr import ParseError, TypeCheckError, parse_divexpr, parse_ratfun
from gendiv.curvespec import curve_from_clusters, cusp, make_cluster, node, semigroup_cluster, tacnode
from gendiv.ratfun import RationalFunction as RF


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


@pytest.mark.parametrize("name", BUNDLED)
def test_bundled_roundtrip(name):
    c = load_curve(name)
    c2 = parse_curve_text(print_curve(c))
    assert c2 == c and c2.clusters == c.clusters
    assert print_curve(c2) == print_curve(c)


rat = st.integers(-6, 6)


@given(st.lists(st.sampled_from(["node", "cusp", "tacnode", "sg", "custom"]), min_size=1, max_size=2), st.integers(0, 100))
def test_random_curve_roundtrip(kinds, seed):
    pts = iter(range(-20 + 5 * (seed % 3), 40, 3))
    cls = []
    for k in kinds:
        if k == "node":
            cls.append(node(next(pts), next(pts)))
        elif k == "cusp":
            cls.append(cusp(next(pts)))
        elif k == "tacnode":
            cls.append(tacnode(next(pts), next(pts)))
        elif k == "sg":
            cls.append(semigroup_cluster([3, 5, 7], next(pts)))
        else:
            a, b = next(pts), next(pts)
            cls.append(make_cluster([a, b], [[(0, 0, 1), (1, 0, -1)], [(0, 1, 2), (1, 1, 1)]]))
    c = curve_from_clusters(cls)
    assert parse_curve_text(print_curve(c)) == c


def test_curve_file_errors():
    with pytest.raises(CurveParseError, match="line 1"):
        parse_curve_text("{")
    with pytest.raises(CurveFileError, match="field"):
        parse_curve_text('{"field": "C", "chart1": {"semigroup": [2,3]}}')
    with pytest.raises(CurveFileError, match="not a rational"):
        parse_curve_text('{"chart1": {"clusters": [{"preset": "node", "points": ["i", "1"]}]}}')
    with pytest.raises(CurveFileError, match="line 3"):
        parse_curve_text('{\n "chart1": {"clusters": [\n {"preset": "nodule", "points": ["0", "1"]}]}}')
    with pytest.raises(CurveFileError, match="infinite colength"):
        parse_curve_text('{"chart1": {"semigroup": [2, 4]}}')
    with pytest.raises(CurveFileError, match="subalgebra"):
        parse_curve_text('{"chart1": {"clusters": [{"branches": ["0"], "conductor_orders": [3],'
                         ' "conditions": [["0", "1", "-1"]]}]}}')


def test_ratfun_grammar():
    assert parse_ratfun("t^2 - 1") == RF.linear(1) * RF.linear(-1)
    assert parse_ratfun("1/(t-2)^3") == RF.linear(2) ** -3
    assert parse_ratfun("-3/4*t") == RF.monomial(1, "-3/4")
    with pytest.raises(ParseError):
        parse_ratfun("2t")
    with pytest.raises(ParseError):
        parse_ratfun("t^x")


def test_divexpr_type_checks():
    assert parse_divexpr("S(0) + Kw").kind == "omega-divisor"
    assert parse_divexpr("n(Kw)").kind == "divisor"
    with pytest.raises(TypeCheckError):
        parse_divexpr("Kw + W(0)")
    with pytest.raises(TypeCheckError):
        parse_divexpr("-Kw")
    with pytest.raises(ParseError):
        parse_divexpr("P(1")


def test_eval_queries(capsys):
    assert run(capsys, "eval", "semigroup-345", "S(0)", "--query", "deg")[1].split()[0] == "1"
    assert run(capsys, "eval", "semigroup-345", "-S(0)", "--query", "deg")[1].split()[0] == "-2"
    code, out, _ = run(capsys, "eval", "semigroup-345", "S(0)+P(2)+P(3)", "--query", "dim", "--json")
    rec = json.loads(out)
    assert code == 0 and rec["value"] == 2 and set(rec) == {"query", "value", "witnesses"}
    code, out, _ = run(capsys, "eval", "semigroup-345", "S(0)+P(2)", "--query", "equiv", "S(0)+P(3)", "--json")
    rec = json.loads(out)
    assert rec["value"] is True and rec["witnesses"]["function"]
    for q in ("h0", "h1", "linsys", "cartier", "effective"):
        assert run(capsys, "eval", "cusp", "P(2)+S(0)", "--query", q)[0] == 0
    code, out, _ = run(capsys, "eval", "cusp", "P(2)+S(0)", "--query", "rr", "--json")
    assert json.loads(out)["value"]["holds"] is True


def test_exit_codes(capsys, tmp_path):
    assert run(capsys, "eval", "semigroup-345", "S(0)", "--query", "rr")[0] == 1
    assert run(capsys, "eval", "semigroup-345", "Kw+Kw", "--query", "deg")[0] == 3
    assert run(capsys, "eval", "semigroup-345", "S(0", "--query", "deg")[0] == 3
    assert run(capsys, "eval", "semigroup-345", "S(4)", "--query", "deg")[0] == 1
    assert run(capsys, "eval", "semigroup-345", "P(0)", "--query", "deg")[0] == 1
    assert run(capsys, "eval", "semigroup-345", "K", "--query", "deg")[0] == 1
    assert run(capsys, "eval", "semigroup-345", "S(0)", "--query", "bogus")[0] == 3
    bad = tmp_path / "bad.json"
    bad.write_text('{"chart1": ')
    assert run(capsys, "info", str(bad))[0] == 3
    bad.write_text('{"chart1": {"semigroup": [2, 4]}}')
    assert run(capsys, "info", str(bad))[0] == 1
    assert run(capsys, "info", "no-such-curve")[0] == 1
    assert run(capsys, "theta", "cusp", "O")[0] == 1
    assert run(capsys, "prop", "monoid", "--trials", "0")[0] == 1


def test_info_omega_theta(capsys):
    code, out, _ = run(capsys, "info", "tacnode", "--json")
    rec = json.loads(out)
    assert rec["genus"] == 2 and rec["gorenstein"] is True
    code, out, _ = run(capsys, "omega", "semigroup-345", "--json")
    assert json.loads(out)["generators"] == ["1/t^3", "1/t^2"]
    code, out, _ = run(capsys, "omega", "semigroup-345", "--dual", "--json")
    assert json.loads(out)["generators"] == ["t^6", "t^7", "t^8"]
    code, out, _ = run(capsys, "omega", "semigroup-345", "--bidual", "--json")
    assert json.loads(out)["generators"] == ["1/t^3", "1/t^2", "1/t"]
    code, out, _ = run(capsys, "theta", "two-node-genus-2", "nu", "--json")
    assert json.loads(out)["multiplicity"] == 4
    code, out, _ = run(capsys, "theta", "node", "L(div(t-5))")
    assert code == 0 and out.split()[0] == "1"
    # a nontrivial degree-0 class has no sections, so it is refused
    assert run(capsys, "theta", "node", "L(P(2)-P(3))")[0] == 1


def test_paper_examples_command(capsys):
    code, out, _ = run(capsys, "paper-examples", "--json")
    rec = json.loads(out)
    assert code == 0 and rec["failed"] == 0
    names = {r["name"] for r in rec["rows"]}
    assert {"omega-generators-345", "h0-L(p0+p1)", "bidual-omega"} <= names


def test_json_is_stable_across_processes():
    cmd = [sys.executable, "-m", "gendiv.cli", "prop", "riemann-roch", "--trials", "3", "--seed", "11", "--json"]
    a = subprocess.run(cmd, capture_output=True, text=True)
    b = subprocess.run(cmd, capture_output=True, text=True)
    assert a.returncode == 0 and a.stdout == b.stdout and a.stdout


def test_seed_env_var(monkeypatch, capsys):
    monkeypatch.setenv("GENDIV_SEED", "4242")
    code, out, _ = run(capsys, "prop", "duality", "--trials", "1", "--json")
    assert json.loads(out)["seed"] == 4242
    code, out, _ = run(capsys, "prop", "duality", "--trials", "1", "--seed", "5", "--json")
    assert json.loads(out)["seed"] == 5


def test_print_command(capsys):
    code, out, _ = run(capsys, "print", "node")
    assert code == 0 and parse_curve_text(out) == load_curve("node")

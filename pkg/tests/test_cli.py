import io as _io
import json

import pytest

from hopfcorad.cli import run


def call(*argv):
    buf = _io.StringIO()
    code = run(list(argv), out=buf)
    return code, buf.getvalue()


def table(out, name):
    return json.loads(out)["tables"][name]["rows"]


def test_analyze_trunc_poly():
    code, out = call("analyze", "trunc-poly:2^2", "--nmax", "3", "--json")
    assert code == 0
    assert [r[1] for r in table(out, "coradical")] == [1, 3, 4, 4]


def test_analyze_group():
    code, out = call("analyze", "group:S3", "--field", "Q", "--nmax", "4", "--json")
    assert code == 0 and all(r[1] == 1 for r in table(out, "coradical"))


def test_analyze_dual():
    code, out = call("analyze", "dual:trunc-poly:2^2", "--nmax", "3", "--json")
    summary = dict(map(tuple, table(out, "summary")))
    assert summary["conilpotent"] is True
    assert summary["good (n <= 3)"] is False
    assert summary["primitive"] is False


@pytest.mark.parametrize("expr,nf", [
    ("[x1^3]_1", "3*[x1]_1"),
    ("[x2 x1 x2]_2", "[x2x1]_2 + [x1x2]_2"),
    ("[x1|x1]_1 - [e|x1]_1 - [x1|e]_1", "0"),
])
def test_reduce(expr, nf):
    assert call("reduce", expr) == (0, nf + "\n")


def test_verify_examples():
    assert call("verify", "corad-eq-poly", "--alg", "trunc-poly:2^2", "--nmax", "3", "--xmax", "2")[0] == 0
    code, out = call("verify", "outer", "--alg", "group:S3", "--json")
    assert code == 1
    checks = {c["id"]: c for c in json.loads(out)["checks"]}
    assert checks["inner conjugations act trivially"]["status"] == "fail"
    assert "(12)⊗(13) ↦ (12)⊗(23)" in checks["inner conjugations act trivially"]["witness"]
    assert checks["outer iff commutative"]["status"] == "pass"
    assert call("verify", "lucas", "--p", "2", "--mmax", "64")[0] == 0


@pytest.mark.parametrize("argv", [
    ("verify", "digit-sum", "--p", "3", "--D", "20"),
    ("verify", "shuffle", "--dimv", "2", "--D", "3"),
    ("verify", "goodness", "--alg", "group:Z3"),
    ("verify", "shuffle-compat", "--alg", "trunc-poly:3^2", "--trials", "10"),
    ("verify", "q-in-p", "--alg", "trunc-poly:2^1", "--nmax", "2", "--mmax", "1"),
    ("verify", "primitive-part", "--alg", "trunc-poly:2^2", "--nmax", "2"),
])
def test_other_verifications_pass(argv):
    assert call(*argv)[0] == 0


def test_functor_examples():
    _, out = call("functor", "trunc-poly:2^2", "--what", "primitive-part", "--n", "2", "--json")
    assert table(out, "primitive_part")[0][1] == 4
    _, out = call("functor", "group:Z2", "--what", "poly", "--n", "1", "--X", "1", "--json")
    assert table(out, "poly")[0][2] == 1
    _, out = call("functor", "dual:trunc-poly:2^2", "--what", "Q", "--m", "1", "--nmax", "4", "--json")
    assert [r[2] for r in table(out, "Q")] == [1, 2, 2, 2, 2]


@pytest.mark.parametrize("argv", [
    ("analyze", "nope"),
    ("reduce", "[x1"),
    ("verify", "no-such-theorem"),
    ("functor", "dual:group:S3", "--what", "poly"),
    ("analyze", "group:Z2", "--field", "Fp:4"),
    ("bogus",),
])
def test_input_errors_exit_2(argv, capsys):
    assert call(*argv)[0] == 2


def test_parse_error_mentions_position(capsys):
    call("reduce", "[x1|y]_1")
    assert "position 4" in capsys.readouterr().err


def test_json_is_deterministic():
    argv = ("verify", "shuffle-compat", "--alg", "poly-window:6", "--trials", "15", "--seed", "3", "--json")
    assert call(*argv) == call(*argv)
    assert json.loads(call(*argv)[1])["schema"] == 1


def test_csv_output():
    code, out = call("analyze", "trunc-poly:2^1", "--csv")
    lines = out.splitlines()
    assert code == 0 and lines[0] == "section,name,key,value"
    assert "table:coradical,dim P_n,1,2" in lines

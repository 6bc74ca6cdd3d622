import json
import subprocess
import sys

import pytest
from hypothesis import given, strategies as st

from symcay import graphs
from symcay.cli import run
from symcay.graphs import Graph
from symcay.notation import NotationError, format_permutation, parse_permutation
from symcay.perm import Permutation
from symcay.script import ScriptError, parse_script, run_script


def call(*argv):
    out, err = [], []
    code = run(list(argv), out=out.append, err=err.append)
    return code, "\n".join(out), "\n".join(err)


# ------------------------------------------------------------ notation

def test_parse_examples():
    p = parse_permutation("(1 2 3)(4 5)")
    assert p.images == (1, 2, 0, 4, 3)
    assert parse_permutation("()").is_identity()
    assert parse_permutation("(1,2)(3)").images == (1, 0, 2)
    assert parse_permutation("(2 3)", degree=5).images == (0, 2, 1, 3, 4)


@pytest.mark.parametrize("text,position", [("(1 2 (3", 5), ("(1 2", 0), ("(1 2))", 5), ("(1 x)", 3)])
def test_parse_errors_carry_position(text, position):
    with pytest.raises(NotationError) as info:
        parse_permutation(text)
    assert info.value.position == position
    assert f"position {position}" in str(info.value)


def test_parse_repeated_point():
    with pytest.raises(NotationError, match="repeated point 2"):
        parse_permutation("(1 2)(2 3)")


def test_parse_empty_and_zero():
    with pytest.raises(NotationError):
        parse_permutation("")
    with pytest.raises(NotationError, match="from 1"):
        parse_permutation("(0 1)")


@given(st.integers(1, 12).flatmap(lambda n: st.permutations(range(n))))
def test_permutation_round_trip(images):
    p = Permutation(images)
    assert parse_permutation(format_permutation(p), degree=p.degree) == p


def test_format_identity():
    assert format_permutation(Permutation.identity(4)) == "()"
    assert format_permutation(Permutation([1, 2, 0, 4, 3])) == "(1 2 3)(4 5)"


# ------------------------------------------------------------ scripts

SCRIPT = """\
# dihedral group of order 10 and its 5-cycle
r = (1 2 3 4 5)
s = (2 5)(3 4)
D = group(r, s)
order(D)
C = cayley(D, {r, (1 5 4 3 2)})
valency(C)
is_connected(C)
contains(D, (1 3 5 2 4))
orbit(D, 1)
iso(double_cover(named("K5")), named("crown5"))
"""


def test_script_run():
    lines = []
    env = run_script(SCRIPT, lines.append)
    assert lines[0] == "10"
    assert lines[1] == "2"
    assert lines[2] == "false"
    assert lines[3] == "true"
    assert lines[4] == "{1, 2, 3, 4, 5}"
    assert lines[5].startswith("(")
    assert env["D"].order() == 10


def test_script_catalog_calls():
    lines = []
    run_script('e = build("example_TA1")\nvalency(graph(e))\norder(aut(graph(e)))\n', lines.append)
    assert lines == ["4", "336"]


def test_script_parse_errors():
    with pytest.raises(ScriptError, match="line 2"):
        parse_script("a = (1 2)\nb = (1 2\n")
    with pytest.raises(ScriptError, match="not bound"):
        run_script("order(G)\n", print)
    with pytest.raises(ScriptError, match="unknown function"):
        run_script("frob(1)\n", print)
    with pytest.raises(ScriptError, match="trailing"):
        parse_script("a = 1 2\n")


def test_script_statements():
    st_ = parse_script("x = 3  # comment\n\n  order(group((1 2)))\n")
    assert [s.target for s in st_] == ["x", None]
    assert [s.line for s in st_] == [1, 3]


# ------------------------------------------------------------ command line

def test_build_and_verify(tmp_path):
    out = tmp_path / "ta1.json"
    code, text, _ = call("build", "example_TA1", "--out", str(out))
    assert code == 0 and "14 vertices" in text
    g = Graph.from_json(out.read_text())
    assert g.n == 14 and g.valency() == 4
    code, text, _ = call("verify", "example_TA1", "--full")
    assert code == 0
    assert "PASS aut_order = 336" in text


def test_verify_failure_exit_code():
    code, text, _ = call("verify", "gamma_2_d_n")
    assert code == 1
    assert "FAIL valency" in text


def test_verify_json_matches_exit_code(tmp_path):
    for name, expected in (("example_TA1", 0), ("gamma_2_d_n", 1)):
        out = tmp_path / f"{name}.json"
        code, _, _ = call("verify", name, "--out", str(out))
        report = json.loads(out.read_text())
        assert code == expected
        assert (code == 0) == all(it["passed"] is not False for it in report["items"])


def test_verify_reports_byte_stable(tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    call("verify", "example_A", "--full", "--out", str(a))
    call("verify", "example_A", "--full", "--out", str(b))
    assert a.read_bytes() == b.read_bytes()


def test_invalid_params_exit_2():
    code, _, err = call("build", "gamma_2_p1_p", "--param", "p=6")
    assert code == 2 and "p not prime" in err
    code, _, err = call("build", "no_such_entry")
    assert code == 2 and "unknown catalog entry" in err
    code, _, _ = call("build", "gamma_2_p1_p", "--param", "p")
    assert code == 2
    code, _, _ = call("frobnicate")
    assert code == 2


def test_io_errors_exit_4(tmp_path):
    code, _, err = call("aut", str(tmp_path / "missing.json"))
    assert code == 4 and "cannot read" in err
    bad = tmp_path / "bad.json"
    bad.write_text("{oops")
    assert call("classify", str(bad))[0] == 4
    assert call("build", "example_TA1", "--out", str(tmp_path / "no" / "dir.json"))[0] == 4


def test_bound_exit_3(tmp_path, monkeypatch):
    path = tmp_path / "c.json"
    path.write_text(graphs.cycle(12).to_json())
    monkeypatch.setenv("SYMCAY_MAX_AUT_VERTICES", "10")
    assert call("aut", str(path))[0] == 3
    monkeypatch.delenv("SYMCAY_MAX_AUT_VERTICES")
    assert call("--max-aut-vertices", "10", "aut", str(path))[0] == 3
    assert call("aut", str(path))[0] == 0


def test_coset_index_env(monkeypatch):
    monkeypatch.setenv("SYMCAY_MAX_COSET_INDEX", "50")
    assert call("build", "gamma_2_p1_p")[0] == 3
    monkeypatch.setenv("SYMCAY_MAX_GROUP_ORDER", "10")
    monkeypatch.setenv("SYMCAY_MAX_COSET_INDEX", "100000")
    assert call("build", "half_transitive")[0] == 3


def test_aut_iso_classify(tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    g = graphs.lex_cycle(5)
    a.write_text(g.to_json())
    perm = Permutation([3, 7, 1, 0, 9, 2, 5, 4, 8, 6])
    b.write_text(g.relabel(perm).to_json())
    code, text, _ = call("aut", str(a))
    assert code == 0 and text.splitlines()[0] == "order 320"
    code, text, _ = call("iso", str(a), str(b))
    assert code == 0 and text.splitlines()[0] == "isomorphic"
    mapping = [int(t.split("->")[1]) - 1 for t in text.splitlines()[1].split()]
    assert g.relabel(Permutation(mapping)).edges() == g.relabel(perm).edges()
    b.write_text(graphs.crown(5).to_json())
    assert call("iso", str(a), str(b))[1] == "not isomorphic"
    code, text, _ = call("classify", str(a))
    assert json.loads(text)["classification"] == "arc-transitive"


def test_census():
    code, text, _ = call("census", "gamma_2_p1_p", "--range", "p=3..7")
    lines = text.splitlines()
    assert lines[0].startswith("SKIP p=3")
    assert lines[1].startswith("SKIP p=4")
    assert lines[2].startswith("PASS p=5: 80 vertices")
    assert lines[-1] == "1 built, 0 failed"
    assert code == 0
    assert call("census", "gamma_2_p1_p", "--range", "p=3..4")[0] == 2
    assert call("census", "gamma_2_p1_p", "--range", "p=oops")[0] == 2


def test_script_command(tmp_path):
    path = tmp_path / "s.txt"
    path.write_text("r = (1 2 3)\norder(group(r))\n")
    code, text, _ = call("script", str(path))
    assert code == 0 and text == "3"
    path.write_text("order(\n")
    assert call("script", str(path))[0] == 2
    assert call("script", str(tmp_path / "none.txt"))[0] == 4


def test_console_entry_point():
    proc = subprocess.run([sys.executable, "-m", "symcay.cli", "build", "gamma_2_p1_p", "--param", "p=6"],
                          capture_output=True, text=True)
    assert proc.returncode == 2
    assert "p not prime" in proc.stderr

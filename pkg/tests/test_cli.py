import io
from pathlib import Path

import pytest

from petripoly.algebra import Multiset
from petripoly.cli import main
from petripoly.errors import DuplicateName, ParseError, UndeclaredSymbol
from petripoly.netfile import format_net, parse_circuit, parse_net, to_dot
from petripoly.petri import reach

DEMOS = Path(__file__).resolve().parent.parent / "demos"
NET = str(DEMOS / "example.net")


def run(*argv):
    out = io.StringIO()
    code = main(list(argv), out)
    return code, out.getvalue()


def test_parse_example(E):
    nf = parse_net((DEMOS / "example.net").read_text())
    assert nf.net == E
    assert nf.markings == {"init": Multiset.of(x=2, y=2)}


def test_parse_empty():
    nf = parse_net("# nothing here\n\n")
    assert nf.net.places == () and not nf.net.transitions and not nf.markings


def test_parse_errors():
    with pytest.raises(UndeclaredSymbol) as e:
        parse_net("place p\ntrans t : 2*q -> p\n")
    assert e.value.line == 2 and "q" in str(e.value)
    with pytest.raises(DuplicateName):
        parse_net("place p\nplace p\n")
    with pytest.raises(DuplicateName):
        parse_net("place p\ntrans p : p -> 0\n")
    with pytest.raises(ParseError):
        parse_net("place p\nfoo bar\n")
    with pytest.raises(ParseError):
        parse_net("place p\nmarking m : 2*\n")


def test_format_roundtrip():
    nf = parse_net((DEMOS / "example.net").read_text())
    text = format_net(nf)
    again = parse_net(text)
    assert again.net == nf.net and again.markings == nf.markings
    assert format_net(again) == text


def test_circuit_file_errors():
    with pytest.raises(ParseError):
        parse_circuit("", lambda n: None)
    with pytest.raises(ParseError):
        parse_circuit("~ | a | ~\n", lambda n: None)


def test_dot(E, init):
    g = reach(E, init)
    dot = to_dot(E, g)
    assert dot.startswith("digraph reach {") and dot.rstrip().endswith("}")
    assert dot.count("->") == 8
    assert dot.count("[label=") == 15
    assert to_dot(E, reach(E, init)) == dot


def test_reach_command(tmp_path):
    dot = tmp_path / "g.dot"
    code, out = run("reach", NET, "--marking", "init", "--max-depth", "10", "--dot", str(dot))
    assert code == 0
    assert out.splitlines()[0] == "7 markings, 8 arrows"
    first = dot.read_bytes()
    run("reach", NET, "--marking", "init", "--dot", str(dot))
    assert dot.read_bytes() == first


def test_equiv_and_class():
    assert run("equiv", NET, "--marking", "init", "--seq1", "alpha,beta", "--seq2", "beta,alpha") == (0, "equivalent\n")
    code, out = run("equiv", NET, "--marking", "init", "--seq1", "alpha,alpha", "--seq2", "alpha,beta")
    assert out == "not equivalent\n"
    code, out = run("class", NET, "--marking", "init", "--seq", "alpha,alpha,beta,beta")
    assert code == 0 and out.splitlines()[0] == "class size 3"


def test_show_fire_translate():
    code, out = run("show", NET)
    assert code == 0 and "trans alpha : x -> y+z" in out
    code, out = run("fire", NET, "--marking", "init", "--seq", "alpha,beta")
    assert code == 0 and len(out.splitlines()) == 3
    for target in ["comm", "poly2", "poly3"]:
        code, out = run("translate", NET, "--to", target)
        assert code == 0 and "alpha" in out


def test_lift_pi_normalize():
    code, out = run("lift", NET, "--marking", "init", "--seq", "alpha,beta")
    assert code == 0 and out.rstrip().endswith("projection matches")
    code, out = run("pi", NET, "--circuit", str(DEMOS / "lifted.circuit"))
    assert code == 0 and "--alpha-->" in out and "--beta-->" in out
    code, out = run("normalize", NET, "--circuit", str(DEMOS / "swapped.circuit"))
    assert code == 0
    assert "tau(x,x)" not in out


def test_check_suites():
    for thm in ["comm", "2d", "3d", "eh"]:
        code, out = run("check", NET, "--thm", thm)
        assert code == 0, out
        assert out and all(line.startswith("PASS") for line in out.splitlines())


def test_exit_codes(tmp_path):
    assert run("fire", NET, "--marking", "init", "--seq", "beta,beta,beta")[0] == 1
    assert run("class", NET, "--marking", "init", "--seq", "alpha", "--cap", "0")[0] != 0
    assert run("fire", NET, "--marking", "init", "--seq", "gamma")[0] == 1
    assert run("nosuch", NET)[0] == 2
    assert run("show", str(tmp_path / "missing.net"))[0] == 2
    bad = tmp_path / "bad.net"
    bad.write_text("place p\ntrans t : 2*q -> p\n")
    assert run("show", str(bad))[0] == 2
    assert run("fire", NET, "--marking", "w", "--seq", "alpha")[0] == 2
    c = tmp_path / "bad.circuit"
    c.write_text("start x\n~ | nope | ~\n")
    assert run("pi", NET, "--circuit", str(c))[0] == 2
    c.write_text("start x\n~ | delta(x) | ~\n~ | delta(x) | x\n")
    code, out = run("normalize", NET, "--circuit", str(c), "--fuel", "0")
    assert code == 1

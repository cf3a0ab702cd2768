"""Command line driver.

    petripoly COMMAND NETFILE [options]

Exit status 0 on success, 1 on a domain error, 2 on a usage or parse error.
"""
from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import checks
from .algebra import Multiset, parse_multiset
from .circuits import normalize, phi_bar, rewriting_system
from .comm import phi
from .errors import ParseError, PetriPolyError, UndeclaredSymbol
from .netfile import NetFile, format_net, parse_circuit, parse_net, to_dot
from .petri import equiv_class, equivalent, reach, replay
from .polygraph2 import lift_path, pi_path, sigma2
from .polygraph3 import sigma3


class UsageError(Exception):
    pass


def _marking(nf: NetFile, text: str) -> Multiset:
    if text in nf.markings:
        return nf.markings[text]
    try:
        m = parse_multiset(text)
    except ValueError:
        raise UsageError(f"unknown marking {text!r}") from None
    for s in m.support():
        if s not in nf.net.places:
            raise UndeclaredSymbol(None, s)
    return m


def _seq(text: str) -> list[str]:
    return [t.strip() for t in text.split(",") if t.strip()]


def cmd_show(nf: NetFile, args, out):
    out.write(format_net(nf))


def cmd_fire(nf, args, out):
    net = nf.net
    p = replay(net, _marking(nf, args.marking), _seq(args.seq))
    cur = p.start
    out.write(f"{net.render(cur)}\n")
    for st in p.steps:
        out.write(f"  --{st.rule}--> {net.render(st.target)}   (context {net.render(st.context)})\n")


def cmd_reach(nf, args, out):
    net = nf.net
    g = reach(net, _marking(nf, args.marking), args.max_depth, args.max_states)
    out.write(f"{len(g.nodes)} markings, {len(g.arcs)} arrows{' (truncated)' if g.truncated else ''}\n")
    for m in g.nodes:
        out.write(f"  {net.render(m)}\n")
    for src, st in g.arcs:
        out.write(f"  {net.render(src)} --{st.rule}--> {net.render(st.target)}\n")
    if args.dot:
        Path(args.dot).write_text(to_dot(net, g))


def cmd_equiv(nf, args, out):
    m = _marking(nf, args.marking)
    p = replay(nf.net, m, _seq(args.seq1))
    q = replay(nf.net, m, _seq(args.seq2))
    out.write("equivalent\n" if equivalent(nf.net, p, q, args.cap) else "not equivalent\n")


def cmd_class(nf, args, out):
    p = replay(nf.net, _marking(nf, args.marking), _seq(args.seq))
    cls = sorted(",".join(q.labels()) for q in equiv_class(nf.net, p, args.cap))
    out.write(f"class size {len(cls)}\n")
    for c in cls:
        out.write(f"  {c}\n")


def cmd_translate(nf, args, out):
    rws = phi(nf.net)
    if args.to == "comm":
        out.write("alphabet " + " ".join(rws.alphabet) + "\n")
        for r, (s, t) in rws.rules.items():
            out.write(f"rule {r} : {s.render(rws.alphabet)} -> {t.render(rws.alphabet)}\n")
    elif args.to == "poly2":
        poly = sigma2(rws)
        out.write("1-cells " + " ".join(poly.one_cells) + "\n")
        for c in poly.two_cells.values():
            out.write(f"2-cell {c.name} : {'.'.join(c.source) or '~'} -> {'.'.join(c.target) or '~'}\n")
    else:
        tp = sigma3(rws)
        out.write("2-cells " + " ".join(tp.two_cells) + "\n")
        for r, (s, t) in tp.three_cells.items():
            out.write(f"3-cell {r} : {s.render(tp.two_cells)} -> {t.render(tp.two_cells)}\n")


def cmd_lift(nf, args, out):
    rws = phi(nf.net)
    p = replay(nf.net, _marking(nf, args.marking), _seq(args.seq))
    a = lift_path(rws, p)
    out.write(a.render() + "\n")
    back = pi_path(a)
    out.write("projection matches\n" if back == p else "projection DIFFERS\n")
    if back != p:
        raise PetriPolyError("lifted circuit does not project back to the path")


def _resolver(cells):
    def resolve(name):
        if name not in cells:
            raise ParseError(None, f"unknown cell {name!r}")
        return cells[name]

    return resolve


def cmd_pi(nf, args, out):
    poly = sigma2(phi(nf.net), extended=True)
    a = parse_circuit(Path(args.circuit).read_text(), _resolver(poly.two_cells))
    p = pi_path(a)
    net = nf.net
    out.write(f"{net.render(p.start)}\n")
    for st in p.steps:
        out.write(f"  --{st.rule}--> {net.render(st.target)}\n")


def cmd_normalize(nf, args, out):
    poly, rules = rewriting_system(phi(nf.net))
    cells = dict(poly.cells)
    cells.update(poly.rule_cells)
    a = parse_circuit(Path(args.circuit).read_text(), _resolver(cells))
    # rule cells are translated into split cells first
    a = phi_bar(poly, a)
    out.write(normalize(a, rules, args.fuel).render() + "\n")


SUITES = {"comm": checks.check_comm, "2d": checks.check_2d, "3d": checks.check_3d}


def cmd_check(nf, args, out):
    if args.thm == "eh":
        report = checks.check_eh(nf.net)
    else:
        if args.marking is None:
            if len(nf.markings) != 1:
                raise UsageError("--marking is required when the file does not declare exactly one marking")
            m = next(iter(nf.markings.values()))
        else:
            m = _marking(nf, args.marking)
        report = SUITES[args.thm](nf.net, m)
    for desc, ok in report:
        out.write(f"{'PASS' if ok else 'FAIL'}  {desc}\n")
    if not all(ok for _, ok in report):
        raise PetriPolyError(f"{args.thm} suite failed")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="petripoly", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    def add(name, fn, help):
        p = sub.add_parser(name, help=help)
        p.add_argument("netfile")
        p.set_defaults(fn=fn)
        return p

    add("show", cmd_show, "print the net in canonical form")
    p = add("fire", cmd_fire, "fire a sequence of transitions")
    p.add_argument("--marking", required=True)
    p.add_argument("--seq", required=True)
    p = add("reach", cmd_reach, "bounded reduction graph")
    p.add_argument("--marking", required=True)
    p.add_argument("--max-depth", type=int, default=10)
    p.add_argument("--max-states", type=int, default=10_000)
    p.add_argument("--dot")
    p = add("equiv", cmd_equiv, "compare two firing sequences up to swaps")
    p.add_argument("--marking", required=True)
    p.add_argument("--seq1", required=True)
    p.add_argument("--seq2", required=True)
    p.add_argument("--cap", type=int, default=10_000)
    p = add("class", cmd_class, "list the swap class of a firing sequence")
    p.add_argument("--marking", required=True)
    p.add_argument("--seq", required=True)
    p.add_argument("--cap", type=int, default=10_000)
    p = add("translate", cmd_translate, "print the net in another presentation")
    p.add_argument("--to", choices=["comm", "poly2", "poly3"], required=True)
    p = add("lift", cmd_lift, "lift a firing sequence to a circuit")
    p.add_argument("--marking", required=True)
    p.add_argument("--seq", required=True)
    p = add("pi", cmd_pi, "project a circuit file to a firing sequence")
    p.add_argument("--circuit", required=True)
    p = add("normalize", cmd_normalize, "normal form of a split-cell circuit file")
    p.add_argument("--circuit", required=True)
    p.add_argument("--fuel", type=int, default=10_000)
    p = add("check", cmd_check, "run a consistency suite")
    p.add_argument("--thm", choices=["comm", "2d", "3d", "eh"], required=True)
    p.add_argument("--marking")
    return ap


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as e:
        return 0 if e.code == 0 else 2
    try:
        nf = parse_net(Path(args.netfile).read_text())
        args.fn(nf, args, out)
    except (ParseError, UsageError) as e:
        print(f"petripoly: {e}", file=sys.stderr)
        return 2
    except (OSError, ValueError) as e:
        print(f"petripoly: {e}", file=sys.stderr)
        return 2
    except PetriPolyError as e:
        print(f"petripoly: {e}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())

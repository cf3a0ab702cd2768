"""Text formats: net files, circuit files and DOT export of reduction graphs.

Net file grammar, one declaration per line, `#` starts a comment:

    place x
    trans alpha : x -> y + z
    marking init : 2*x + 2*y

Circuit files hold the `start WORD` line followed by `left | cell | right`
slices, as printed by `SlicedTwoArrow.render`.
"""
from __future__ import annotations

import re
from collections.abc import Callable
from dataclasses import dataclass, field

from .algebra import Multiset, parse_multiset, parse_word
from .errors import DuplicateName, NotComposable, ParseError, UndeclaredSymbol
from .petri import PetriNet, ReductionGraph, Transition
from .polygraph2 import Cell, Slice, SlicedTwoArrow

_NAME = r"[A-Za-z_][\w']*"
_PLACE = re.compile(rf"^place\s+({_NAME})$")
_TRANS = re.compile(rf"^trans\s+({_NAME})\s*:\s*(.+?)\s*->\s*(.+)$")
_MARK = re.compile(rf"^marking\s+({_NAME})\s*:\s*(.+)$")


@dataclass
class NetFile:
    net: PetriNet
    markings: dict[str, Multiset] = field(default_factory=dict)


def _multiset(text: str, line: int, places: list[str]) -> Multiset:
    try:
        m = parse_multiset(text)
    except ValueError as e:
        raise ParseError(line, str(e)) from None
    known = set(places)
    for s in m.support():
        if s not in known:
            raise UndeclaredSymbol(line, s)
    return m


def parse_net(text: str) -> NetFile:
    places: list[str] = []
    trans: dict[str, Transition] = {}
    marks: dict[str, Multiset] = {}
    for n, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if m := _PLACE.match(line):
            name = m.group(1)
            if name in places or name in trans:
                raise DuplicateName(n, name)
            places.append(name)
        elif m := _TRANS.match(line):
            name = m.group(1)
            if name in trans or name in places:
                raise DuplicateName(n, name)
            trans[name] = Transition(_multiset(m.group(2), n, places), _multiset(m.group(3), n, places))
        elif m := _MARK.match(line):
            name = m.group(1)
            if name in marks:
                raise DuplicateName(n, name)
            marks[name] = _multiset(m.group(2), n, places)
        else:
            raise ParseError(n, f"cannot read {line!r}")
    return NetFile(PetriNet(tuple(places), trans), marks)


def format_net(nf: NetFile) -> str:
    """Canonical text; parsing it back gives the same net and markings."""
    net = nf.net
    out = [f"place {p}" for p in net.places]
    for t, tr in net.transitions.items():
        out.append(f"trans {t} : {net.render(tr.pre)} -> {net.render(tr.post)}")
    for name, m in nf.markings.items():
        out.append(f"marking {name} : {net.render(m)}")
    return "\n".join(out) + "\n" if out else ""


def parse_circuit(text: str, resolve: Callable[[str], Cell]) -> SlicedTwoArrow:
    """Read a circuit; `resolve` maps cell names to cells."""
    start = None
    slices = []
    for n, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if start is None:
            if not line.startswith("start"):
                raise ParseError(n, "circuit must begin with `start WORD`")
            start = parse_word(line[len("start") :])
            continue
        parts = [p.strip() for p in line.split("|")]
        if len(parts) != 3:
            raise ParseError(n, "slice must read `left | cell | right`")
        cell = resolve(parts[1])
        slices.append(Slice(parse_word(parts[0]), cell, parse_word(parts[2])))
    if start is None:
        raise ParseError(None, "empty circuit file")
    try:
        return SlicedTwoArrow(start, tuple(slices))
    except NotComposable as e:
        raise ParseError(None, str(e)) from None


def _quote(s: str) -> str:
    return '"' + s.replace("\\", "\\\\").replace('"', '\\"') + '"'


def to_dot(net: PetriNet, graph: ReductionGraph, name: str = "reach") -> str:
    """DOT digraph: nodes in discovery order labelled by marking, edges by transition."""
    ids = {m: f"m{i}" for i, m in enumerate(graph.nodes)}
    out = [f"digraph {name} {{"]
    for m, i in ids.items():
        out.append(f"  {i} [label={_quote(net.render(m))}];")
    for src, st in graph.arcs:
        out.append(f"  {ids[src]} -> {ids[st.target]} [label={_quote(st.rule)}];")
    out.append("}")
    return "\n".join(out) + "\n"


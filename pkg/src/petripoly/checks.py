"""Ready-made consistency suites over a concrete net.

Each suite returns a list of (description, passed) pairs.
"""
from __future__ import annotations

import random

from .algebra import Multiset
from .comm import iso_check, phi, psi
from .petri import PetriNet, enumerate_paths, equiv_class, equivalent, reach
from .polygraph2 import exchange_class, lift_path, pi_path
from .polygraph3 import (
    Composite,
    eckmann_hilton_probe,
    exchange3_class,
    nr,
    sigma3,
    to_step,
    to_triple,
    triples_of,
)

Report = list[tuple[str, bool]]


def check_comm(net: PetriNet, m0: Multiset, depth: int = 4) -> Report:
    rws = phi(net)
    rep = iso_check(net, m0, max_depth=depth)
    return [
        ("psi(phi(net)) == net", psi(rws) == net),
        ("phi(psi(rws)) == rws", phi(psi(rws)) == rws),
        (f"graphs agree to depth {depth} ({rep.nodes} markings, {rep.arcs} arrows, {rep.squares} squares)", rep.ok),
    ]


def check_2d(net: PetriNet, m0: Multiset, max_len: int = 4, class_cap: int = 2000) -> Report:
    rws = phi(net)
    paths = enumerate_paths(net, m0, max_len)
    lifted = [(p, lift_path(rws, p)) for p in paths]
    roundtrip = all(pi_path(a) == p for p, a in lifted)
    sound = True
    for p, a in lifted:
        for b in exchange_class(a, class_cap):
            if not equivalent(net, p, pi_path(b)):
                sound = False
                break
        if not sound:
            break
    return [
        (f"pi(lift(p)) == p for {len(paths)} paths up to length {max_len}", roundtrip),
        ("exchange-equivalent circuits project to equivalent paths", sound),
    ]


def check_3d(net: PetriNet, m0: Multiset, depth: int = 4, max_len: int = 4) -> Report:
    rws = phi(net)
    tp = sigma3(rws)
    g = reach(net, m0, max_depth=depth)
    inverse = all(to_step(tp, to_triple(tp, st)) == st for _, st in g.arcs)
    inverse = inverse and all(to_triple(tp, to_step(tp, to_triple(tp, st))) == to_triple(tp, st) for _, st in g.arcs)
    sizes = True
    for p in enumerate_paths(net, m0, max_len):
        if len(exchange3_class(tp, p.start, triples_of(tp, p))) != len(equiv_class(net, p)):
            sizes = False
            break
    return [
        ("nr(sigma3(rws)) == rws", nr(tp) == rws),
        ("sigma3(nr(tp)) == tp", sigma3(nr(tp)) == tp),
        (f"steps and triples correspond on {len(g.arcs)} arrows", inverse),
        (f"class sizes agree for paths up to length {max_len}", sizes),
    ]


def check_eh(net: PetriNet, samples: int = 200, seed: int = 0) -> Report:
    rng = random.Random(seed)
    places = list(net.places)

    def sample():
        return Multiset({p: rng.randint(0, 3) for p in places})

    ok = all(eckmann_hilton_probe(Composite.leaf(sample()), Composite.leaf(sample())) for _ in range(samples))
    return [(f"both compositions agree and commute on {samples} pairs", ok)]

"""Petri nets and their rewriting presentations.

Submodules: `algebra` (multisets and words), `petri` (nets, firing, reduction
graphs, swap congruence), `comm` (commutative rewriting systems), `polygraph2`
(sliced circuits with explicit swaps), `circuits` (split-cell circuits and
their normal forms), `polygraph3` (the collapse to multisets), `netfile` and
`cli`.
"""
from .algebra import EMPTY, Multiset, parikh, parse_multiset, parse_word, render_word
from .comm import CommRws, iso_check, phi, psi
from .errors import *  # noqa: F401,F403
from .petri import NetPath, PetriNet, ReductionStep, Transition, equiv_class, equivalent, fire, reach, replay

__all__ = [
    "EMPTY",
    "Multiset",
    "parikh",
    "parse_multiset",
    "parse_word",
    "render_word",
    "CommRws",
    "iso_check",
    "phi",
    "psi",
    "NetPath",
    "PetriNet",
    "ReductionStep",
    "Transition",
    "equiv_class",
    "equivalent",
    "fire",
    "reach",
    "replay",
]

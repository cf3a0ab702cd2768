"""
Firing sequences as circuits
============================

Ordering the tokens turns markings into words.  A firing sequence then
becomes a circuit: slices that rewrite a factor of the word, plus explicit
swap cells that move letters next to each other.
"""
from pathlib import Path

from petripoly import netfile
from petripoly.circuits import normalize, phi_bar, phi_bar_cell, rewriting_system
from petripoly.comm import phi
from petripoly.petri import replay
from petripoly.polygraph2 import exchange_class, lift_path, pi_path

nf = netfile.parse_net((Path(__file__).parent / "example.net").read_text())
E, m0 = nf.net, nf.markings["init"]
rws = phi(E)

p = replay(E, m0, ["alpha", "alpha", "beta", "beta"])
a = lift_path(rws, p)
print(a.render())
assert pi_path(a) == p

###############################################################################
# Sliding independent slices past each other does not change the circuit.
# The exchange class of the lifted circuit is finite, and every member
# projects back to a firing sequence congruent to p.

cls = exchange_class(a)
print(len(cls), "circuits in the exchange class")
print(sorted({",".join(pi_path(b).labels()) for b in cls}))

###############################################################################
# Splitting cells: alpha has two outputs, so it is replaced by a duplication
# of its input followed by one cell per output.  Swaps, duplications and
# split cells are then rewritten to a normal form.

poly, rules = rewriting_system(rws)
print(len(rules), "rules after completion")
print(phi_bar_cell(poly, poly.rule_cells["alpha"]).render())

text = (Path(__file__).parent / "swapped.circuit").read_text()
cells = dict(poly.cells)
c = netfile.parse_circuit(text, cells.__getitem__)
print("before:\n" + c.render())
trace = []
n = normalize(c, rules, trace=trace)
print("after:\n" + n.render())
print("steps:", [name for name, _ in trace])

###############################################################################
# Two different-looking lifts of the same sequence meet in one normal form.

b = lift_path(rws, replay(E, m0, ["beta", "alpha", "alpha", "beta"]))
na = normalize(phi_bar(poly, a), rules)
nb = normalize(phi_bar(poly, b), rules)
print("normal forms of aabb and baab lifts agree:", na == nb)

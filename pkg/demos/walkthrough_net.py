"""
A small Petri net, three ways
=============================

Three places x, y, z and two transitions: alpha turns an x into y + z,
beta merges two y into a z.  We start from 2x + 2y.
"""
from pathlib import Path

from petripoly import netfile
from petripoly.comm import phi
from petripoly.petri import equiv_class, equivalent, reach, replay

nf = netfile.parse_net((Path(__file__).parent / "example.net").read_text())
E, m0 = nf.net, nf.markings["init"]

# the whole state space is tiny
g = reach(E, m0)
print(f"{len(g.nodes)} markings, {len(g.arcs)} arrows")
for src, st in g.arcs:
    print(f"  {E.render(src):>10}  --{st.rule}-->  {E.render(st.target)}")

###############################################################################
# Firing alpha then beta, or beta then alpha, ends in the same marking and
# the two firings never compete for tokens, so the paths are identified.

p = replay(E, m0, ["alpha", "beta"])
q = replay(E, m0, ["beta", "alpha"])
print("alpha,beta ~ beta,alpha:", equivalent(E, p, q))

# Two alphas and two betas: only three orders are firable, and they form
# one class.
p = replay(E, m0, ["alpha", "alpha", "beta", "beta"])
for r in sorted(equiv_class(E, p), key=lambda r: r.labels()):
    print("  ", ",".join(r.labels()))

###############################################################################
# The same data as a commutative rewriting system: places become letters,
# transitions become rules between multisets.

rws = phi(E)
for name, (s, t) in rws.rules.items():
    print(f"  {name}: {s.render(rws.alphabet)} -> {t.render(rws.alphabet)}")

###############################################################################
# The reachability graph in DOT, ready for `dot -Tsvg`.

print(netfile.to_dot(E, g))

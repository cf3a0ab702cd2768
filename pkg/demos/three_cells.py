"""
Places as 2-cells
=================

With no 1-cells at all, horizontal and vertical composition of 2-cells
coincide and commute, so 2-arrows are just multisets.  Transitions become
3-cells and a firing is a triple (context, transition, 0).
"""
from pathlib import Path

from petripoly import netfile
from petripoly.algebra import Multiset
from petripoly.comm import phi
from petripoly.petri import equiv_class, replay
from petripoly.polygraph3 import Composite, canon_triple, evaluate, exchange3_class, sigma3, triples_of

nf = netfile.parse_net((Path(__file__).parent / "example.net").read_text())
E, m0 = nf.net, nf.markings["init"]
tp = sigma3(phi(E))

x, y, z = (Composite.leaf(c) for c in "xyz")
print(evaluate(x.h(y).v(z)), "==", evaluate(z.h(y.v(x))))

# a cell can be slid around: whatever sits left or right ends up in the context
print(canon_triple(tp, Multiset.of(x=1), "alpha", Multiset.of(y=1)))

p = replay(E, m0, ["alpha", "alpha", "beta", "beta"])
cls3 = exchange3_class(tp, m0, triples_of(tp, p))
print(len(cls3), "triple paths,", len(equiv_class(E, p)), "firing sequences")

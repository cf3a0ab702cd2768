"""Three-dimensional presentation with no 1-cells.

With a single 0-cell and no 1-cells every 2-arrow goes from the empty word to
itself, and both compositions of such 2-arrows coincide and commute
(Eckmann-Hilton), so 2-arrows are multisets of 2-cells.  3-cells are then
rules between multisets, and a rewriting step is a triple (f, cell, g) taken
modulo (f, cell, g) = (f + g, cell, 0).
"""
from __future__ import annotations

from collections import deque
from collections.abc import Mapping, Sequence
from dataclasses import dataclass, field

from .algebra import EMPTY, Multiset
from .comm import CommRws
from .errors import CapExceeded, HasOneCells, NotComposable, UnknownCell
from .petri import NetPath, ReductionStep, swap_at
from .comm import psi


@dataclass(frozen=True, eq=False)
class ThreePolygraph:
    two_cells: tuple[str, ...]
    three_cells: Mapping[str, tuple[Multiset, Multiset]] = field(default_factory=dict)
    one_cells: tuple[str, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "two_cells", tuple(self.two_cells))
        object.__setattr__(self, "one_cells", tuple(self.one_cells))
        object.__setattr__(self, "three_cells", dict(self.three_cells))
        known = set(self.two_cells)
        for name, (s, t) in self.three_cells.items():
            if (set(s) | set(t)) - known:
                raise ValueError(f"3-cell {name!r} has a boundary outside the 2-cells")

    def __eq__(self, other):
        if not isinstance(other, ThreePolygraph):
            return NotImplemented
        return (
            self.one_cells == other.one_cells
            and self.two_cells == other.two_cells
            and list(self.three_cells.items()) == list(other.three_cells.items())
        )

    def __hash__(self):
        return hash((self.one_cells, self.two_cells, tuple(self.three_cells.items())))

    def boundary(self, cell: str) -> tuple[Multiset, Multiset]:
        try:
            return self.three_cells[cell]
        except KeyError:
            raise UnknownCell(cell) from None


def sigma3(rws: CommRws) -> ThreePolygraph:
    return ThreePolygraph(rws.alphabet, dict(rws.rules))


def nr(tp: ThreePolygraph) -> CommRws:
    """Back to a commutative rewriting system; only defined without 1-cells."""
    if tp.one_cells:
        raise HasOneCells(f"polygraph has 1-cells {list(tp.one_cells)}")
    return CommRws(tp.two_cells, dict(tp.three_cells))


@dataclass(frozen=True)
class Triple:
    """A rewriting step f . cell . g, always stored as (f + g, cell, 0)."""

    f: Multiset
    cell: str
    g: Multiset = EMPTY

    def __post_init__(self):
        if self.g:
            object.__setattr__(self, "f", self.f + self.g)
            object.__setattr__(self, "g", EMPTY)

    def source(self, tp: ThreePolygraph) -> Multiset:
        return self.f + tp.boundary(self.cell)[0]

    def target(self, tp: ThreePolygraph) -> Multiset:
        return self.f + tp.boundary(self.cell)[1]


def canon_triple(tp: ThreePolygraph, f: Multiset, cell: str, g: Multiset) -> Triple:
    tp.boundary(cell)
    return Triple(f + g, cell, EMPTY)


def to_triple(tp: ThreePolygraph, step: ReductionStep) -> Triple:
    s, t = tp.boundary(step.rule)
    if (s, t) != (step.pre, step.post):
        raise ValueError(f"step {step.rule} does not match the 3-cell's boundary")
    return Triple(step.context, step.rule)


def to_step(tp: ThreePolygraph, t: Triple) -> ReductionStep:
    s, u = tp.boundary(t.cell)
    return ReductionStep(t.f + t.g, t.cell, s, u)


def triples_of(tp: ThreePolygraph, p: NetPath) -> tuple[Triple, ...]:
    return tuple(to_triple(tp, s) for s in p.steps)


def path_of(tp: ThreePolygraph, start: Multiset, triples: Sequence[Triple]) -> NetPath:
    return NetPath(start, tuple(to_step(tp, t) for t in triples))


def exchange3_class(tp: ThreePolygraph, start: Multiset, p: Sequence[Triple], cap: int = 10_000) -> set[tuple[Triple, ...]]:
    """Closure of a triple path under adjacent exchanges.

    Whether two adjacent triples exchange is decided on the corresponding
    net path, so both congruences share one swap test.
    """
    if cap < 1:
        raise ValueError("cap must be positive")
    net = psi(nr(tp))
    p = tuple(p)
    path_of(tp, start, p)
    seen = {p}
    queue = deque([p])
    while queue:
        cur = queue.popleft()
        path = path_of(tp, start, cur)
        for i in range(len(cur) - 1):
            q = swap_at(net, path, i)
            if q is None:
                continue
            t = triples_of(tp, q)
            if t not in seen:
                seen.add(t)
                if len(seen) > cap:
                    raise CapExceeded(cap)
                queue.append(t)
    return seen


def exchange3_equivalent(tp: ThreePolygraph, start: Multiset, p: Sequence[Triple], q: Sequence[Triple], cap: int = 10_000) -> bool:
    p, q = tuple(p), tuple(q)
    try:
        a, b = path_of(tp, start, p), path_of(tp, start, q)
    except NotComposable:
        return False
    if a.target != b.target or len(p) != len(q):
        return False
    return p == q or q in exchange3_class(tp, start, p, cap)


# -- Eckmann-Hilton ---------------------------------------------------------------


@dataclass(frozen=True)
class Composite:
    """Formal composite of 2-cells: a leaf, or `op` ('h' or 'v') of two parts."""

    op: str
    parts: tuple

    @staticmethod
    def leaf(a: Multiset | str) -> Composite:
        if isinstance(a, str):
            a = Multiset([a])
        return Composite("leaf", (a,))

    def h(self, other: Composite) -> Composite:
        return Composite("h", (self, other))

    def v(self, other: Composite) -> Composite:
        return Composite("v", (self, other))


def _grid(c: Composite) -> list[list[str]]:
    """Lay a composite out as columns of stacked 2-cells."""
    if c.op == "leaf":
        (m,) = c.parts
        return [[x] for x, k in m.items() for _ in range(k)]
    a, b = (_grid(p) for p in c.parts)
    if c.op == "h":
        return a + b
    # vertical: stack b on top of a, column by column, padding with identities
    width = max(len(a), len(b))
    a = a + [[] for _ in range(width - len(a))]
    b = b + [[] for _ in range(width - len(b))]
    return [x + y for x, y in zip(a, b)]


def evaluate(c: Composite) -> Multiset:
    """Read a composite as a 2-arrow of the no-1-cell polygraph."""
    return Multiset([x for col in _grid(c) for x in col])


def eckmann_hilton_probe(a: Composite | Multiset, b: Composite | Multiset) -> bool:
    """Both compositions of a and b, in both orders, give one 2-arrow."""
    a = a if isinstance(a, Composite) else Composite.leaf(a)
    b = b if isinstance(b, Composite) else Composite.leaf(b)
    values = {evaluate(a.h(b)), evaluate(a.v(b)), evaluate(b.h(a)), evaluate(b.v(a))}
    return len(values) == 1 and values.pop() == evaluate(a) + evaluate(b)


def decompose(m: Multiset, tp: ThreePolygraph) -> list[tuple[str, int]]:
    """The unique coefficients of a 2-arrow on the 2-cells, in declaration order."""
    return [(x, m[x]) for x in tp.two_cells]

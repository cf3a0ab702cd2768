"""Two-dimensional presentation: words as 1-arrows, sliced circuits as 2-arrows.

A 2-arrow is kept as a start word plus a sequence of whiskered slices
`left | cell | right`.  Two slice sequences denote the same 2-arrow of the free
2-category when they are related by exchange moves; `exchange_class` explores
those moves and `exchange_canonical` picks a representative directly.
"""
from __future__ import annotations

from collections import deque
from collections.abc import Iterable, Sequence
from dataclasses import dataclass, field

from .algebra import Multiset, parikh, render_word
from .comm import CommRws
from .errors import CapExceeded, NotComposable, ParikhMismatch, UnknownCell
from .petri import NetPath, ReductionStep, equivalent
from .comm import psi

RULE, SWAP, DUP, SPLIT = "rule", "swap", "dup", "split"


@dataclass(frozen=True)
class Cell:
    name: str
    source: tuple[str, ...]
    target: tuple[str, ...]
    kind: str = RULE

    def __repr__(self):
        return f"{self.name}: {render_word(self.source)} -> {render_word(self.target)}"


def swap_name(x: str, y: str) -> str:
    return f"tau({x},{y})"


def swap_cell(x: str, y: str) -> Cell:
    return Cell(swap_name(x, y), (x, y), (y, x), SWAP)


@dataclass(frozen=True)
class Slice:
    left: tuple[str, ...]
    cell: Cell
    right: tuple[str, ...]

    @property
    def position(self) -> int:
        return len(self.left)

    @property
    def input(self) -> tuple[str, ...]:
        return self.left + self.cell.source + self.right

    @property
    def output(self) -> tuple[str, ...]:
        return self.left + self.cell.target + self.right

    def render(self) -> str:
        return f"{render_word(self.left)} | {self.cell.name} | {render_word(self.right)}"


def make_slice(word: Sequence[str], pos: int, cell: Cell) -> Slice:
    """Whisker `cell` so that it acts on `word` at position `pos`."""
    word = tuple(word)
    n = len(cell.source)
    if pos < 0 or word[pos : pos + n] != cell.source:
        raise NotComposable(f"{cell.name} does not apply to {render_word(word)} at {pos}")
    return Slice(word[:pos], cell, word[pos + n :])


@dataclass(frozen=True)
class SlicedTwoArrow:
    start: tuple[str, ...]
    slices: tuple[Slice, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "start", tuple(self.start))
        object.__setattr__(self, "slices", tuple(self.slices))
        cur = self.start
        for i, s in enumerate(self.slices):
            if s.input != cur:
                raise NotComposable(
                    f"slice {i} expects {render_word(s.input)}, got {render_word(cur)}"
                )
            cur = s.output

    @property
    def end(self) -> tuple[str, ...]:
        return self.slices[-1].output if self.slices else self.start

    def __len__(self):
        return len(self.slices)

    def then(self, other: SlicedTwoArrow) -> SlicedTwoArrow:
        if other.start != self.end:
            raise NotComposable("2-arrows do not meet")
        return SlicedTwoArrow(self.start, self.slices + other.slices)

    def whisker(self, left: Sequence[str] = (), right: Sequence[str] = ()) -> SlicedTwoArrow:
        left, right = tuple(left), tuple(right)
        return SlicedTwoArrow(
            left + self.start + right,
            tuple(Slice(left + s.left, s.cell, s.right + right) for s in self.slices),
        )

    def cells(self) -> list[str]:
        return sorted(s.cell.name for s in self.slices)

    def render(self) -> str:
        lines = [f"start {render_word(self.start)}"]
        lines += [s.render() for s in self.slices]
        return "\n".join(lines)


def from_placements(start: Sequence[str], placements: Iterable[tuple[Cell, int]]) -> SlicedTwoArrow:
    """Build an arrow from (cell, position) pairs applied in order."""
    cur = tuple(start)
    out = []
    for cell, pos in placements:
        s = make_slice(cur, pos, cell)
        out.append(s)
        cur = s.output
    return SlicedTwoArrow(tuple(start), tuple(out))


def identity(word: Sequence[str]) -> SlicedTwoArrow:
    return SlicedTwoArrow(tuple(word))


# -- exchange -----------------------------------------------------------------


def exchange_pair(first: Slice, second: Slice) -> list[tuple[Slice, Slice]]:
    """Ways to apply `second`'s cell before `first`'s, keeping both cells intact.

    The pair commutes when the cell of `second` reads an interval of the
    intermediate word disjoint from the one `first` wrote.
    """
    w0 = first.input
    p1, p2 = first.position, second.position
    a1, b1 = len(first.cell.source), len(first.cell.target)
    a2, b2 = len(second.cell.source), len(second.cell.target)
    out = []
    if p2 >= p1 + b1:
        new_first = make_slice(w0, p2 - b1 + a1, second.cell)
        new_second = make_slice(new_first.output, p1, first.cell)
        out.append((new_first, new_second))
    if p2 + a2 <= p1:
        new_first = make_slice(w0, p2, second.cell)
        new_second = make_slice(new_first.output, p1 - a2 + b2, first.cell)
        if (new_first, new_second) not in out:
            out.append((new_first, new_second))
    return out


def exchange_moves(arrow: SlicedTwoArrow) -> Iterable[SlicedTwoArrow]:
    sl = arrow.slices
    for i in range(len(sl) - 1):
        for a, b in exchange_pair(sl[i], sl[i + 1]):
            yield SlicedTwoArrow(arrow.start, sl[:i] + (a, b) + sl[i + 2 :])


def exchange_class(p: SlicedTwoArrow, cap: int = 100_000) -> set[SlicedTwoArrow]:
    if cap < 1:
        raise ValueError("cap must be positive")
    seen = {p}
    queue = deque([p])
    while queue:
        for q in exchange_moves(queue.popleft()):
            if q not in seen:
                seen.add(q)
                if len(seen) > cap:
                    raise CapExceeded(cap)
                queue.append(q)
    return seen


def exchange_equivalent(p: SlicedTwoArrow, q: SlicedTwoArrow, cap: int = 100_000) -> bool:
    if p.start != q.start or p.end != q.end or p.cells() != q.cells():
        return False
    return p == q or q in exchange_class(p, cap)


def bubble_to(slices: list[Slice], k: int, target: int) -> list[Slice] | None:
    """Move slice `k` up to index `target` by exchanges, or None if blocked."""
    out = list(slices)
    for i in range(k, target, -1):
        options = exchange_pair(out[i - 1], out[i])
        if not options:
            return None
        # prefer the reading that keeps the moved cell leftmost
        a, b = min(options, key=lambda ab: ab[0].position)
        out[i - 1], out[i] = a, b
    return out


def exchange_canonical(p: SlicedTwoArrow) -> SlicedTwoArrow:
    """Representative of the exchange class: repeatedly pull up the leftmost cell
    that can be moved to the front of the remaining sequence."""
    rest = list(p.slices)
    done: list[Slice] = []
    while rest:
        best = None
        for k in range(len(rest)):
            moved = rest if k == 0 else bubble_to(rest, k, 0)
            if moved is None:
                continue
            head = moved[0]
            key = (head.position, len(head.cell.source), head.cell.name, k)
            if best is None or key < best[0]:
                best = (key, moved)
        _, moved = best
        done.append(moved[0])
        rest = moved[1:]
    return SlicedTwoArrow(p.start, tuple(done))


# -- the polygraph of a rewriting system --------------------------------------


def repr_bar(a: Multiset, order: Sequence[str] | None = None) -> tuple[str, ...]:
    """Sorted word representing `a`: letters grouped in alphabet order."""
    return tuple(x for x, k in a.items(order) for _ in range(k))


@dataclass(frozen=True, eq=False)
class TwoPolygraph:
    one_cells: tuple[str, ...]
    two_cells: dict[str, Cell] = field(default_factory=dict)

    def __eq__(self, other):
        if not isinstance(other, TwoPolygraph):
            return NotImplemented
        return self.one_cells == other.one_cells and list(self.two_cells.items()) == list(
            other.two_cells.items()
        )

    def __hash__(self):
        return hash((self.one_cells, tuple(self.two_cells)))

    def cell(self, name: str) -> Cell:
        try:
            return self.two_cells[name]
        except KeyError:
            raise UnknownCell(name) from None

    def swap(self, x: str, y: str) -> Cell:
        return self.cell(swap_name(x, y))

    def rule_cells(self) -> list[Cell]:
        return [c for c in self.two_cells.values() if c.kind == RULE]


def sigma2(rws: CommRws, extended: bool = False) -> TwoPolygraph:
    """Rule cells between sorted representatives, plus swap cells for every
    ordered pair of distinct letters (and x,x pairs when `extended`)."""
    cells: dict[str, Cell] = {}
    order = rws.alphabet
    for x in order:
        for y in order:
            if x != y or extended:
                c = swap_cell(x, y)
                cells[c.name] = c
    for name, (s, t) in rws.rules.items():
        cells[name] = Cell(name, repr_bar(s, order), repr_bar(t, order), RULE)
    return TwoPolygraph(order, cells)


def _assignment(u: Sequence[str], v: Sequence[str]) -> list[int]:
    slots: dict[str, deque] = {}
    for j, letter in enumerate(v):
        slots.setdefault(letter, deque()).append(j)
    return [slots[letter].popleft() for letter in u]


def lift_permutation(u: Sequence[str], v: Sequence[str]) -> SlicedTwoArrow:
    """Swap-only arrow from `u` to `v` (adjacent transpositions, bubble sort).

    Equal letters keep their relative order, so the number of slices is the
    inversion count of the letter assignment.
    """
    u, v = tuple(u), tuple(v)
    if parikh(u) != parikh(v):
        raise ParikhMismatch(f"{render_word(u)} and {render_word(v)} have different letter counts")
    dest = _assignment(u, v)
    word = list(u)
    slices = []
    n = len(word)
    changed = True
    while changed:
        changed = False
        for i in range(n - 1):
            if dest[i] > dest[i + 1]:
                slices.append(make_slice(word, i, swap_cell(word[i], word[i + 1])))
                word[i], word[i + 1] = word[i + 1], word[i]
                dest[i], dest[i + 1] = dest[i + 1], dest[i]
                changed = True
    return SlicedTwoArrow(u, tuple(slices))


def crossing(u: Sequence[str], v: Sequence[str]) -> SlicedTwoArrow:
    """Generalized swap moving the block `u` past the block `v` (u.v -> v.u)."""
    u, v = tuple(u), tuple(v)
    word = list(u + v)
    slices = []
    for i in reversed(range(len(u))):
        for j in range(len(v)):
            pos = i + j
            slices.append(make_slice(word, pos, swap_cell(word[pos], word[pos + 1])))
            word[pos], word[pos + 1] = word[pos + 1], word[pos]
    return SlicedTwoArrow(u + v, tuple(slices))


def pi_path(p: SlicedTwoArrow) -> NetPath:
    """Project to the commutative reduction graph: swaps vanish, rule slices
    become steps in the context given by their whiskers."""
    steps = []
    for s in p.slices:
        if s.cell.kind == SWAP:
            continue
        if s.cell.kind != RULE:
            raise ValueError(f"cannot project {s.cell.kind} cell {s.cell.name}")
        ctx = parikh(s.left) + parikh(s.right)
        steps.append(ReductionStep(ctx, s.cell.name, parikh(s.cell.source), parikh(s.cell.target)))
    return NetPath(parikh(p.start), tuple(steps))


def _find_factor(word: tuple, factor: tuple) -> int | None:
    n = len(factor)
    for i in range(len(word) - n + 1):
        if word[i : i + n] == factor:
            return i
    return None


def lift_path(rws: CommRws, p: NetPath, extended: bool = False) -> SlicedTwoArrow:
    """A 2-arrow projecting onto `p`, starting at the sorted representative.

    Each rule is applied at the leftmost occurrence of its source word; when
    there is none, swap slices first bring the word to context.source.
    """
    poly = sigma2(rws, extended)
    order = rws.alphabet
    start = repr_bar(p.start, order)
    cur = start
    slices: list[Slice] = []
    for step in p.steps:
        cell = poly.cell(step.rule)
        pos = _find_factor(cur, cell.source)
        if pos is None:
            goal = repr_bar(step.context, order) + cell.source
            perm = lift_permutation(cur, goal)
            slices.extend(perm.slices)
            cur = goal
            pos = len(goal) - len(cell.source)
        s = make_slice(cur, pos, cell)
        slices.append(s)
        cur = s.output
    return SlicedTwoArrow(start, tuple(slices))


# -- relations compatible with the projection ---------------------------------


@dataclass(frozen=True)
class RelationInstance:
    family: str
    lhs: SlicedTwoArrow
    rhs: SlicedTwoArrow


def relation_instances(
    poly: TwoPolygraph,
    families: Sequence[str] = ("R-a", "R-b", "R-c", "R-d"),
    context: Sequence[tuple[tuple[str, ...], tuple[str, ...]]] = (((), ()),),
    block_words: Sequence[tuple[str, ...]] | None = None,
) -> list[RelationInstance]:
    """Concrete instances of the four relation families, whiskered by `context`.

    R-a  tau(x,x) = id            R-b  tau(y,x) . tau(x,y) = id
    R-c  braid (Yang-Baxter) relation on three blocks
    R-d  a rule cell slides through a crossing with an untouched block
    """
    letters = poly.one_cells
    if block_words is None:
        block_words = [(x,) for x in letters]
    out = []
    for fam in families:
        base: list[tuple[SlicedTwoArrow, SlicedTwoArrow]] = []
        if fam == "R-a":
            for x in letters:
                base.append((from_placements((x, x), [(swap_cell(x, x), 0)]), identity((x, x))))
        elif fam == "R-b":
            for x in letters:
                for y in letters:
                    if x == y and swap_name(x, x) not in poly.two_cells:
                        continue
                    lhs = from_placements((x, y), [(swap_cell(x, y), 0), (swap_cell(y, x), 0)])
                    base.append((lhs, identity((x, y))))
        elif fam == "R-c":
            for a in block_words:
                for b in block_words:
                    for c in block_words:
                        base.append(_braid(a, b, c))
        elif fam == "R-d":
            for cell in poly.rule_cells():
                for w in block_words:
                    base.extend(_slide(cell, w))
        else:
            raise ValueError(f"unknown relation family {fam!r}")
        for lhs, rhs in base:
            if not _uses_known_swaps(lhs, poly) or not _uses_known_swaps(rhs, poly):
                continue
            for left, right in context:
                out.append(RelationInstance(fam, lhs.whisker(left, right), rhs.whisker(left, right)))
    return out


def _uses_known_swaps(arrow: SlicedTwoArrow, poly: TwoPolygraph) -> bool:
    return all(s.cell.name in poly.two_cells for s in arrow.slices)


def _braid(a, b, c):
    lhs = (
        crossing(a, b).whisker((), c)
        .then(crossing(a, c).whisker(b, ()))
        .then(crossing(b, c).whisker((), a))
    )
    rhs = (
        crossing(b, c).whisker(a, ())
        .then(crossing(a, c).whisker((), b))
        .then(crossing(a, b).whisker(c, ()))
    )
    return lhs, rhs


def _slide(cell: Cell, w):
    s, t = cell.source, cell.target
    rule_right = from_placements(s + w, [(cell, 0)])
    right_lhs = rule_right.then(crossing(t, w))
    right_rhs = crossing(s, w).then(from_placements(w + s, [(cell, len(w))]))
    rule_left = from_placements(w + s, [(cell, len(w))])
    left_lhs = rule_left.then(crossing(w, t))
    left_rhs = crossing(w, s).then(from_placements(s + w, [(cell, 0)]))
    return [(right_lhs, right_rhs), (left_lhs, left_rhs)]


def lemma_relations_sound(rws: CommRws, inst: RelationInstance, cap: int = 10_000) -> bool:
    """Both sides of the instance project to congruent reduction paths."""
    if inst.lhs.start != inst.rhs.start or inst.lhs.end != inst.rhs.end:
        return False
    return equivalent(psi(rws), pi_path(inst.lhs), pi_path(inst.rhs), cap)

"""Circuit rewriting over swaps, duplications and single-output split cells.

Every rule cell `a: x1..xm -> y1..yn` of a two-dimensional presentation is
translated into split cells `a_i: x1..xm -> y_i` fed by copies of its inputs,
and circuits built from swaps, duplications and split cells are normalized by
a rewriting system whose rules are matched modulo exchange.

Rule families (for every colouring of the wires):

    inv       tau(b,a) . tau(a,b)                  -> id
    braid     (t x 1)(1 x t)(t x 1)                -> (1 x t)(t x 1)(1 x t)
    cocomm    tau(a,a) . delta(a)                  -> delta(a)
    coassoc   (delta x 1) . delta                  -> (1 x delta) . delta
    comb      tau(a,a) on the first copies of a right comb -> the comb
    dup-nat   delta, then both copies cross w      -> one crossing, then delta
    split-nat a_i, then a crossing of its output   -> crossing of its inputs, then a_i
    outputs   delta, a_i x b_j, then their swap    -> delta, b_j x a_i

Swaps are pushed towards the inputs; `weight` is the termination measure.
"""
from __future__ import annotations

from collections import Counter
from collections.abc import Iterable, Sequence
from dataclasses import dataclass, field
from itertools import permutations, product

from .comm import CommRws
from .errors import FuelExhausted, UnknownCell
from .polygraph2 import (
    DUP,
    RULE,
    SPLIT,
    SWAP,
    Cell,
    Slice,
    SlicedTwoArrow,
    TwoPolygraph,
    crossing,
    exchange_canonical,
    exchange_pair,
    from_placements,
    identity,
    repr_bar,
    swap_cell,
)

DEFAULT_FUEL = 10_000


def dup_cell(x: str) -> Cell:
    return Cell(f"delta({x})", (x,), (x, x), DUP)


def split_name(rule: str, i: int) -> str:
    return f"{rule}_{i}"


@dataclass(frozen=True, eq=False)
class BarPolygraph:
    """Swaps for all pairs of letters, one duplication per letter and the
    split cells of every rule."""

    one_cells: tuple[str, ...]
    cells: dict[str, Cell] = field(default_factory=dict)
    splits: dict[str, tuple[Cell, ...]] = field(default_factory=dict)
    rule_cells: dict[str, Cell] = field(default_factory=dict)

    def cell(self, name: str) -> Cell:
        try:
            return self.cells[name]
        except KeyError:
            raise UnknownCell(name) from None

    def swap(self, x: str, y: str) -> Cell:
        return swap_cell(x, y)

    def dup(self, x: str) -> Cell:
        return dup_cell(x)


def bar_polygraph(source: CommRws | TwoPolygraph) -> BarPolygraph:
    """Build the split-cell polygraph.

    Rules must have at least one output, and rules without inputs exactly one.
    """
    if isinstance(source, CommRws):
        order = source.alphabet
        rules = [
            Cell(name, repr_bar(s, order), repr_bar(t, order), RULE)
            for name, (s, t) in source.rules.items()
        ]
    else:
        order = source.one_cells
        rules = source.rule_cells()
    cells: dict[str, Cell] = {}
    for x in order:
        for y in order:
            c = swap_cell(x, y)
            cells[c.name] = c
    for x in order:
        c = dup_cell(x)
        cells[c.name] = c
    splits = {}
    for rc in rules:
        if not rc.target:
            raise ValueError(f"rule {rc.name!r} has no output")
        if not rc.source and len(rc.target) != 1:
            raise ValueError(f"rule {rc.name!r} has no input and several outputs; split it first")
        parts = []
        for i, y in enumerate(rc.target, start=1):
            c = Cell(split_name(rc.name, i), rc.source, (y,), SPLIT)
            cells[c.name] = c
            parts.append(c)
        splits[rc.name] = tuple(parts)
    return BarPolygraph(tuple(order), cells, splits, {rc.name: rc for rc in rules})


# -- wiring -------------------------------------------------------------------


@dataclass
class Wiring:
    """Wire identities of a sliced circuit.

    ins[k]/outs[k] list the wire ids read/written by slice k; producer and
    consumer map a wire id to (slice index, port).
    """

    inputs: list[int]
    outputs: list[int]
    ins: list[list[int]]
    outs: list[list[int]]
    producer: dict[int, tuple[int, int]]
    consumer: dict[int, tuple[int, int]]

    def children(self, k: int) -> set[int]:
        return {self.consumer[w][0] for w in self.outs[k] if w in self.consumer}

    def parents(self, k: int) -> set[int]:
        return {self.producer[w][0] for w in self.ins[k] if w in self.producer}


def wiring(arrow: SlicedTwoArrow) -> Wiring:
    fresh = len(arrow.start)
    cur = list(range(fresh))
    inputs = list(cur)
    ins, outs = [], []
    producer, consumer = {}, {}
    for k, s in enumerate(arrow.slices):
        p, a = s.position, len(s.cell.source)
        read = cur[p : p + a]
        written = list(range(fresh, fresh + len(s.cell.target)))
        fresh += len(written)
        for port, w in enumerate(read):
            consumer[w] = (k, port)
        for port, w in enumerate(written):
            producer[w] = (k, port)
        cur[p : p + a] = written
        ins.append(read)
        outs.append(written)
    return Wiring(inputs, cur, ins, outs, producer, consumer)


def _closure(start: Iterable[int], step) -> set[int]:
    seen: set[int] = set()
    todo = list(start)
    while todo:
        k = todo.pop()
        for n in step(k):
            if n not in seen:
                seen.add(n)
                todo.append(n)
    return seen


# -- rules and matching -------------------------------------------------------


@dataclass(frozen=True)
class RewriteRule:
    name: str
    family: str
    lhs: SlicedTwoArrow
    rhs: SlicedTwoArrow

    def __post_init__(self):
        if self.lhs.start != self.rhs.start or self.lhs.end != self.rhs.end:
            raise ValueError(f"rule {self.name} is not between parallel circuits")
        if not self.lhs.slices:
            raise ValueError(f"rule {self.name} has an empty left-hand side")
        object.__setattr__(self, "_plan", _match_plan(self.lhs, self.name))


def _match_plan(lhs: SlicedTwoArrow, name: str):
    """Order in which a matcher can reach every pattern cell from the first.

    Each entry (j, kind, port, other, other_port) says that cell j is found
    through a wire shared with the already located cell `other`.
    """
    w = wiring(lhs)
    n = len(lhs.slices)
    found = {0}
    plan = []
    while len(found) < n:
        step = None
        for j in range(n):
            if j in found:
                continue
            for q, x in enumerate(w.ins[j]):
                if x in w.producer and w.producer[x][0] in found:
                    step = (j, "in", q) + w.producer[x]
                    break
            if step is None:
                for p, x in enumerate(w.outs[j]):
                    if x in w.consumer and w.consumer[x][0] in found:
                        step = (j, "out", p) + w.consumer[x]
                        break
            if step is not None:
                break
        if step is None:
            raise ValueError(f"rule {name}: left-hand side is not connected")
        plan.append(step)
        found.add(step[0])
    return tuple(plan), w


def _rule(family, lhs, rhs, tag):
    return RewriteRule(f"{family}[{tag}]", family, lhs, rhs)


def default_rules(poly: BarPolygraph) -> list[RewriteRule]:
    """The rule families of the module docstring, instantiated on `poly`."""
    C = poly.one_cells
    T, D = swap_cell, dup_cell
    rules: list[RewriteRule] = []
    for a, b in product(C, C):
        lhs = from_placements((a, b), [(T(a, b), 0), (T(b, a), 0)])
        rules.append(_rule("inv", lhs, identity((a, b)), f"{a},{b}"))
    for a, b, c in product(C, C, C):
        lhs = from_placements((a, b, c), [(T(a, b), 0), (T(a, c), 1), (T(b, c), 0)])
        rhs = from_placements((a, b, c), [(T(b, c), 1), (T(a, c), 0), (T(a, b), 1)])
        rules.append(_rule("braid", lhs, rhs, f"{a},{b},{c}"))
    for a in C:
        d = D(a)
        rules.append(_rule("cocomm", from_placements((a,), [(d, 0), (T(a, a), 0)]), from_placements((a,), [(d, 0)]), a))
        rules.append(_rule("coassoc", from_placements((a,), [(d, 0), (d, 0)]), from_placements((a,), [(d, 0), (d, 1)]), a))
        comb = [(d, 0), (d, 1)]
        rules.append(_rule("comb", from_placements((a,), comb + [(T(a, a), 0)]), from_placements((a,), comb), a))
    for a, w in product(C, C):
        d = D(a)
        lhs = from_placements((a, w), [(d, 0), (T(a, w), 1), (T(a, w), 0)])
        rhs = from_placements((a, w), [(T(a, w), 0), (d, 1)])
        rules.append(_rule("dup-nat", lhs, rhs, f"{a}|{w}"))
        lhs = from_placements((w, a), [(d, 1), (T(w, a), 0), (T(w, a), 1)])
        rhs = from_placements((w, a), [(T(w, a), 0), (d, 0)])
        rules.append(_rule("dup-nat", lhs, rhs, f"{w}|{a}"))
        lhs = from_placements((a, w), [(T(a, w), 0), (d, 1), (T(w, a), 0)])
        rhs = from_placements((a, w), [(d, 0), (T(a, w), 1)])
        rules.append(_rule("dup-nat", lhs, rhs, f"{a}|{w}|back"))
        lhs = from_placements((w, a), [(T(w, a), 0), (d, 0), (T(a, w), 1)])
        rhs = from_placements((w, a), [(d, 1), (T(w, a), 0)])
        rules.append(_rule("dup-nat", lhs, rhs, f"{w}|{a}|back"))
    split_cells = [c for parts in poly.splits.values() for c in parts]
    for k in split_cells:
        src, (y,) = k.source, k.target
        for w in C:
            lhs = from_placements(src + (w,), [(k, 0), (T(y, w), 0)])
            rhs = crossing(src, (w,)).then(from_placements((w,) + src, [(k, 1)]))
            rules.append(_rule("split-nat", lhs, rhs, f"{k.name}|{w}"))
            lhs = from_placements((w,) + src, [(k, 1), (T(w, y), 0)])
            rhs = crossing((w,), src).then(from_placements(src + (w,), [(k, 0)]))
            rules.append(_rule("split-nat", lhs, rhs, f"{w}|{k.name}"))
    for k1, k2 in product(split_cells, split_cells):
        if len(k1.source) != 1 or k1.source != k2.source:
            continue
        (x,) = k1.source
        y1, y2 = k1.target[0], k2.target[0]
        lhs = from_placements((x,), [(D(x), 0), (k1, 0), (k2, 1), (T(y1, y2), 0)])
        rhs = from_placements((x,), [(D(x), 0), (k2, 0), (k1, 1)])
        rules.append(_rule("outputs", lhs, rhs, f"{k1.name},{k2.name}"))
    return rules


def _match_cells(arrow: SlicedTwoArrow, aw: Wiring, rule: RewriteRule, anchor: int) -> list[int] | None:
    pat = rule.lhs.slices
    if arrow.slices[anchor].cell != pat[0].cell:
        return None
    plan, pw = rule._plan
    image: list[int | None] = [None] * len(pat)
    image[0] = anchor
    for j, kind, port, other, other_port in plan:
        if kind == "in":
            target = aw.consumer.get(aw.outs[image[other]][other_port])
            if target is None or target[1] != port:
                return None
        else:
            target = aw.producer.get(aw.ins[image[other]][other_port])
            if target is None or target[1] != port:
                return None
        k = target[0]
        if k in image or arrow.slices[k].cell != pat[j].cell:
            return None
        image[j] = k
    for j in range(len(pat)):
        for q, wire in enumerate(pw.ins[j]):
            if wire in pw.producer:
                src, port = pw.producer[wire]
                if aw.consumer.get(aw.outs[image[src]][port]) != (image[j], q):
                    return None
    return image


def _reorder(slices: list[Slice], rank: list[int]) -> list[Slice] | None:
    """Bubble `slices` into increasing `rank` using exchange moves only."""
    items = list(zip(rank, slices))
    n = len(items)
    for end in range(n - 1, 0, -1):
        for i in range(end):
            if items[i][0] > items[i + 1][0]:
                options = exchange_pair(items[i][1], items[i + 1][1])
                if not options:
                    return None
                a, b = options[0]
                items[i], items[i + 1] = (items[i + 1][0], a), (items[i][0], b)
    return [s for _, s in items]


def rewrite_at(arrow: SlicedTwoArrow, rule: RewriteRule, anchor: int) -> SlicedTwoArrow | None:
    """Apply `rule` with its first cell at slice `anchor`, or None if it does not match."""
    aw = wiring(arrow)
    image = _match_cells(arrow, aw, rule, anchor)
    if image is None:
        return None
    inside = set(image)
    below = _closure(image, aw.children) - inside
    above = _closure(image, aw.parents) - inside
    if below & above:
        return None
    n = len(arrow.slices)
    pattern_rank = {k: j for j, k in enumerate(image)}
    rank = []
    for k in range(n):
        if k in inside:
            rank.append(n + pattern_rank[k])
        elif k in below:
            rank.append(2 * n + k)
        else:
            rank.append(k)
    moved = _reorder(list(arrow.slices), rank)
    if moved is None:
        return None
    start = n - len(below) - len(image)
    block = moved[start : start + len(image)]
    lhs = rule.lhs
    offset = block[0].position - lhs.slices[0].position
    word = block[0].input
    width = len(lhs.start)
    if offset < 0 or word[offset : offset + width] != lhs.start:
        return None
    left, right = word[:offset], word[offset + width :]
    if tuple(block) != lhs.whisker(left, right).slices:
        return None
    new = moved[:start] + list(rule.rhs.whisker(left, right).slices) + moved[start + len(image) :]
    return SlicedTwoArrow(arrow.start, tuple(new))


def find_redex(arrow: SlicedTwoArrow, rules: Sequence[RewriteRule]) -> tuple[RewriteRule, int, SlicedTwoArrow] | None:
    """Leftmost redex: scan slices in order, rules in list order."""
    by_cell: dict[Cell, list[RewriteRule]] = {}
    for r in rules:
        by_cell.setdefault(r.lhs.slices[0].cell, []).append(r)
    for i, s in enumerate(arrow.slices):
        for r in by_cell.get(s.cell, ()):
            out = rewrite_at(arrow, r, i)
            if out is not None:
                return r, i, out
    return None


def all_redexes(arrow: SlicedTwoArrow, rules: Sequence[RewriteRule]) -> list[tuple[RewriteRule, int, SlicedTwoArrow]]:
    out = []
    for i, s in enumerate(arrow.slices):
        for r in rules:
            if r.lhs.slices[0].cell == s.cell:
                res = rewrite_at(arrow, r, i)
                if res is not None:
                    out.append((r, i, res))
    return out


# -- normalization ------------------------------------------------------------


def normalize(
    arrow: SlicedTwoArrow,
    rules: Sequence[RewriteRule],
    fuel: int = DEFAULT_FUEL,
    trace: list | None = None,
) -> SlicedTwoArrow:
    """Rewrite to a normal form, leftmost redex first, in canonical slicing.

    Raises `FuelExhausted` after `fuel` steps.
    """
    cur = exchange_canonical(arrow)
    for _ in range(fuel):
        hit = find_redex(cur, rules)
        if hit is None:
            return cur
        rule, i, nxt = hit
        if trace is not None:
            trace.append((rule.name, i))
        cur = exchange_canonical(nxt)
    if find_redex(cur, rules) is None:
        return cur
    raise FuelExhausted(fuel)


def is_normal(arrow: SlicedTwoArrow, rules: Sequence[RewriteRule]) -> bool:
    return find_redex(exchange_canonical(arrow), rules) is None


def check_equiv_R(a: SlicedTwoArrow, b: SlicedTwoArrow, rules: Sequence[RewriteRule], fuel: int = DEFAULT_FUEL) -> bool:
    """Equality of normal forms; circuits with different boundaries are never equivalent."""
    if a.start != b.start or a.end != b.end:
        return False
    return normalize(a, rules, fuel) == normalize(b, rules, fuel)


# -- termination measure ------------------------------------------------------


def _dm_greater(m: Counter, n: Counter) -> bool:
    """Dershowitz-Manna multiset extension: m > n."""
    if m == n:
        return False
    only_m, only_n = m - n, n - m
    return all(any(x > y for x in only_m) for y in only_n)


@dataclass(frozen=True)
class Weight:
    swaps: tuple[int, ...]
    braid: int
    dup_left: int
    slices: int

    def _rest(self):
        return (self.braid, self.dup_left, self.slices)

    def __lt__(self, other: Weight) -> bool:
        a, b = Counter(self.swaps), Counter(other.swaps)
        if a != b:
            return _dm_greater(b, a)
        return self._rest() < other._rest()

    def __gt__(self, other: Weight) -> bool:
        return other < self


def weight(arrow: SlicedTwoArrow) -> Weight:
    """Lexicographic termination measure, invariant under exchange.

    Strands run straight through swaps, and duplications are see-through.
    For each swap, count the split cells above its two strands; these counts
    are compared as a multiset.  Ties are broken by how many swaps the left
    strand of each swap has already met, then by how many duplications hang
    below the first output of each duplication, then by length.
    """
    w = wiring(arrow)
    kinds = [s.cell.kind for s in arrow.slices]
    up: dict[int, frozenset] = {}

    def above(wire) -> frozenset:
        if wire in up:
            return up[wire]
        start = wire
        out: frozenset = frozenset()
        while wire in w.producer:
            k, port = w.producer[wire]
            if kinds[k] == SWAP:
                wire = w.ins[k][1 - port]
                continue
            out = frozenset().union(*(above(i) for i in w.ins[k]))
            if kinds[k] != DUP:
                out |= {k}
            break
        up[start] = out
        return out

    down: dict[int, frozenset] = {}

    def below(wire) -> frozenset:
        if wire in down:
            return down[wire]
        start = wire
        out: frozenset = frozenset()
        while wire in w.consumer:
            k, port = w.consumer[wire]
            if kinds[k] == SWAP:
                wire = w.outs[k][1 - port]
                continue
            out = frozenset({k}).union(*(below(o) for o in w.outs[k]))
            break
        down[start] = out
        return out

    met: dict[int, int] = {}

    def met_before(wire) -> int:
        if wire in met:
            return met[wire]
        n = 0
        src = w.producer.get(wire)
        if src is not None and kinds[src[0]] == SWAP:
            k, port = src
            n = 1 + met_before(w.ins[k][1 - port])
        met[wire] = n
        return n

    counts = []
    braid = dup_left = 0
    for k in range(len(arrow.slices)):
        if kinds[k] == SWAP:
            counts.append(len(above(w.ins[k][0]) | above(w.ins[k][1])))
            braid += met_before(w.ins[k][0])
        elif kinds[k] == DUP:
            dup_left += sum(1 for j in below(w.outs[k][0]) if kinds[j] == DUP)
    return Weight(tuple(sorted(counts, reverse=True)), braid, dup_left, len(arrow.slices))


# -- translation ----------------------------------------------------------------


def permute(word: Sequence[str], dest: Sequence[int]) -> SlicedTwoArrow:
    """Swaps moving letter i of `word` to position dest[i] (bubble sort)."""
    cur = list(zip(dest, word))
    start = tuple(word)
    placements = []
    n = len(cur)
    for end in range(n - 1, 0, -1):
        for i in range(end):
            if cur[i][0] > cur[i + 1][0]:
                placements.append((swap_cell(cur[i][1], cur[i + 1][1]), i))
                cur[i], cur[i + 1] = cur[i + 1], cur[i]
    return from_placements(start, placements)


def comb(x: str, n: int) -> SlicedTwoArrow:
    """Right comb of duplications: x -> x^n."""
    if n < 1:
        raise ValueError("a comb needs at least one output")
    return from_placements((x,), [(dup_cell(x), i) for i in range(n - 1)])


def copies(word: Sequence[str], n: int) -> SlicedTwoArrow:
    """n interleaved copies of `word`: one comb per letter, then a permutation."""
    word = tuple(word)
    m = len(word)
    out = identity(word)
    for i in reversed(range(m)):
        c = comb(word[i], n)
        left = tuple(word[:i])
        right = tuple(x for x in word[i + 1 :] for _ in range(n))
        out = out.then(c.whisker(left, right))
    spread = tuple(x for x in word for _ in range(n))
    dest = [j * m + i for i in range(m) for j in range(n)]
    return out.then(permute(spread, dest))


def phi_bar_cell(poly: BarPolygraph, cell: Cell, rules: Sequence[RewriteRule] | None = None) -> SlicedTwoArrow:
    """Image of a cell: swaps are kept, a rule becomes its split cells on copies of its inputs."""
    if cell.kind in (SWAP, DUP, SPLIT):
        return from_placements(cell.source, [(cell, 0)])
    parts = poly.splits.get(cell.name)
    if parts is None:
        raise UnknownCell(cell.name)
    n = len(parts)
    out = copies(cell.source, n)
    placements = [(k, i) for i, k in enumerate(parts)]
    body = from_placements(tuple(x for _ in range(n) for x in cell.source), placements)
    result = out.then(body)
    if rules is not None:
        result = normalize(result, rules)
    return result


def phi_bar(poly: BarPolygraph, arrow: SlicedTwoArrow, rules: Sequence[RewriteRule] | None = None) -> SlicedTwoArrow:
    """Translate a sliced circuit slice by slice (whiskering each image)."""
    out = identity(arrow.start)
    for s in arrow.slices:
        out = out.then(phi_bar_cell(poly, s.cell).whisker(s.left, s.right))
    if rules is not None:
        out = normalize(out, rules)
    return out


# -- critical pairs -------------------------------------------------------------


@dataclass(frozen=True)
class CriticalPair:
    first: RewriteRule
    second: RewriteRule
    peak: SlicedTwoArrow
    left: SlicedTwoArrow
    right: SlicedTwoArrow
    joinable: bool


def _overlaps(r1: RewriteRule, r2: RewriteRule):
    """Partial matchings of r2's cells onto r1's cells, as glued graphs.

    Yields (nodes, colour) where nodes is a list of (key, cell, ins, outs)
    over merged wire ids and colour maps wire ids to letters.
    """
    w1, w2 = wiring(r1.lhs), wiring(r2.lhs)
    c1 = [s.cell for s in r1.lhs.slices]
    c2 = [s.cell for s in r2.lhs.slices]
    n1, n2 = len(c1), len(c2)
    choices = [[None] + [i for i in range(n1) if c1[i] == c2[j]] for j in range(n2)]
    for image in product(*choices):
        used = [i for i in image if i is not None]
        if not used or len(set(used)) != len(used):
            continue
        if r1 is r2 and all(image[j] == j for j in range(n2)):
            continue
        parent: dict = {}

        def find(x):
            while parent.get(x, x) != x:
                x = parent[x]
            return x

        def union(a, b):
            ra, rb = find(a), find(b)
            if ra != rb:
                parent[rb] = ra

        for j, i in enumerate(image):
            if i is None:
                continue
            for a, b in zip(w1.ins[i], w2.ins[j]):
                union(("a", a), ("b", b))
            for a, b in zip(w1.outs[i], w2.outs[j]):
                union(("a", a), ("b", b))
        nodes = [(("a", i), c1[i], [find(("a", x)) for x in w1.ins[i]], [find(("a", x)) for x in w1.outs[i]]) for i in range(n1)]
        nodes += [
            (("b", j), c2[j], [find(("b", x)) for x in w2.ins[j]], [find(("b", x)) for x in w2.outs[j]])
            for j in range(n2)
            if image[j] is None
        ]
        produced = [x for _, _, _, outs in nodes for x in outs]
        consumed = [x for _, _, ins, _ in nodes for x in ins]
        if len(set(produced)) != len(produced) or len(set(consumed)) != len(consumed):
            continue
        colour = {}
        for _, cell, ins, outs in nodes:
            for x, c in zip(ins, cell.source):
                colour[x] = c
            for x, c in zip(outs, cell.target):
                colour[x] = c
        keymap = {("b", j): ("a", i) for j, i in enumerate(image) if i is not None}
        yield nodes, colour, keymap


def _realize(nodes, colour, max_wires):
    """All planar slicings of a glued graph, one per admissible input order."""
    produced = {x for _, _, _, outs in nodes for x in outs}
    inputs = sorted({x for _, _, ins, _ in nodes for x in ins} - produced, key=repr)
    seen = set()
    for order in permutations(inputs):
        cur = list(order)
        done: set = set()
        placements = []
        positions = {}
        ok = True
        while len(done) < len(nodes) and ok:
            progress = False
            for key, cell, ins, outs in nodes:
                if key in done:
                    continue
                if not ins:
                    ok = False
                    break
                if not all(x in cur for x in ins):
                    continue
                p = cur.index(ins[0])
                if cur[p : p + len(ins)] != ins:
                    continue
                cur[p : p + len(ins)] = outs
                if len(cur) > max_wires:
                    ok = False
                    break
                positions[key] = len(placements)
                placements.append((cell, p))
                done.add(key)
                progress = True
                break
            if not progress:
                ok = False
        if not ok:
            continue
        arrow = from_placements(tuple(colour[x] for x in order), placements)
        canon = exchange_canonical(arrow)
        if canon in seen:
            continue
        seen.add(canon)
        yield arrow, positions


def critical_pairs(
    rules: Sequence[RewriteRule],
    max_slices: int = 4,
    max_wires: int = 6,
    fuel: int = DEFAULT_FUEL,
) -> list[CriticalPair]:
    """Overlapping redex pairs within the window, with their joinability."""
    out = []
    seen = set()
    for r1 in rules:
        for r2 in rules:
            if len(r1.lhs.slices) + len(r2.lhs.slices) - 1 > 2 * max_slices:
                continue
            for nodes, colour, keymap in _overlaps(r1, r2):
                if len(nodes) > max_slices:
                    continue
                for peak, pos in _realize(nodes, colour, max_wires):
                    left = rewrite_at(peak, r1, pos[("a", 0)])
                    right = rewrite_at(peak, r2, pos[keymap.get(("b", 0), ("b", 0))])
                    if left is None or right is None:
                        continue
                    key = (r1.name, r2.name, exchange_canonical(peak))
                    if key in seen:
                        continue
                    seen.add(key)
                    joinable = normalize(left, rules, fuel) == normalize(right, rules, fuel)
                    out.append(CriticalPair(r1, r2, peak, left, right, joinable))
    return out


def complete(
    rules: Sequence[RewriteRule],
    max_slices: int = 4,
    max_wires: int = 6,
    rounds: int = 10,
    fuel: int = DEFAULT_FUEL,
) -> list[RewriteRule]:
    """Window-bounded completion.

    Every critical pair whose branches have different normal forms becomes a
    new rule, oriented from the heavier normal form to the lighter one.
    Stops when all pairs in the window join or after `rounds` passes; pairs
    that cannot be oriented are left alone.
    """
    rules = list(rules)
    names = {r.name for r in rules}
    for _ in range(rounds):
        added = 0
        for cp in critical_pairs(rules, max_slices, max_wires, fuel):
            if cp.joinable:
                continue
            a = normalize(cp.left, rules, fuel)
            b = normalize(cp.right, rules, fuel)
            if a == b:
                continue
            wa, wb = weight(a), weight(b)
            if wa == wb:
                continue
            lhs, rhs = (a, b) if wa > wb else (b, a)
            try:
                rule = RewriteRule(f"derived[{len(names)}]", "derived", lhs, rhs)
            except ValueError:
                continue
            names.add(rule.name)
            rules.append(rule)
            added += 1
        if not added:
            break
    return rules


def rewriting_system(source: CommRws | TwoPolygraph, max_slices: int = 4, max_wires: int = 6):
    """The split-cell polygraph of `source` with its completed rule list."""
    poly = bar_polygraph(source)
    return poly, complete(default_rules(poly), max_slices, max_wires)

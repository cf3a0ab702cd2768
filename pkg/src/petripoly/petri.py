"""Petri nets, firing, bounded reduction graphs and the swap congruence on paths."""
from __future__ import annotations

from collections import deque
from collections.abc import Iterable, Mapping, Sequence
from dataclasses import dataclass, field
from typing import NamedTuple

from .algebra import EMPTY, Multiset
from .errors import CapExceeded, NotComposable, NotEnabled, UnknownTransition


class Transition(NamedTuple):
    pre: Multiset
    post: Multiset


@dataclass(frozen=True, eq=False)
class PetriNet:
    """Ordered places plus named transitions with pre/post multisets.

    Equality is structural and order-sensitive (place order and transition
    declaration order both matter).
    """

    places: tuple[str, ...]
    transitions: Mapping[str, Transition] = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "places", tuple(self.places))
        trans = {name: Transition(*t) for name, t in dict(self.transitions).items()}
        object.__setattr__(self, "transitions", trans)
        if len(set(self.places)) != len(self.places):
            raise ValueError("duplicate place name")
        known = set(self.places)
        for name, (pre, post) in trans.items():
            if name in known:
                raise ValueError(f"transition {name!r} clashes with a place")
            for s in set(pre) | set(post):
                if s not in known:
                    raise ValueError(f"transition {name!r} mentions undeclared place {s!r}")

    def __eq__(self, other):
        if not isinstance(other, PetriNet):
            return NotImplemented
        return self.places == other.places and list(self.transitions.items()) == list(
            other.transitions.items()
        )

    def __hash__(self):
        return hash((self.places, tuple(self.transitions.items())))

    def pre(self, t: str) -> Multiset:
        return self._get(t).pre

    def post(self, t: str) -> Multiset:
        return self._get(t).post

    def _get(self, t: str) -> Transition:
        try:
            return self.transitions[t]
        except KeyError:
            raise UnknownTransition(t) from None

    def render(self, m: Multiset) -> str:
        return m.render(self.places)


@dataclass(frozen=True)
class ReductionStep:
    """One contextual rule application `context + rule`.

    `pre`/`post` are the rule's boundaries; the step's own source and target
    are always derived from them.
    """

    context: Multiset
    rule: str
    pre: Multiset
    post: Multiset

    @property
    def source(self) -> Multiset:
        return self.context + self.pre

    @property
    def target(self) -> Multiset:
        return self.context + self.post


def make_step(net: PetriNet, context: Multiset, t: str) -> ReductionStep:
    tr = net._get(t)
    return ReductionStep(context, t, tr.pre, tr.post)


@dataclass(frozen=True)
class NetPath:
    start: Multiset
    steps: tuple[ReductionStep, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "steps", tuple(self.steps))
        cur = self.start
        for i, step in enumerate(self.steps):
            if step.source != cur:
                raise NotComposable(f"step {i} ({step.rule}) does not start at {cur}")
            cur = step.target

    @property
    def target(self) -> Multiset:
        return self.steps[-1].target if self.steps else self.start

    def labels(self) -> tuple[str, ...]:
        return tuple(s.rule for s in self.steps)

    def __len__(self) -> int:
        return len(self.steps)

    def then(self, other: NetPath) -> NetPath:
        if other.start != self.target:
            raise NotComposable("paths do not meet")
        return NetPath(self.start, self.steps + other.steps)


@dataclass
class ReductionGraph:
    nodes: list[Multiset]
    arcs: list[tuple[Multiset, ReductionStep]]
    truncated: bool = False

    def arc_set(self) -> set[tuple[Multiset, str, Multiset]]:
        return {(src, st.rule, st.target) for src, st in self.arcs}


def enabled(net: PetriNet, m: Multiset, t: str) -> bool:
    return net.pre(t) <= m


def fire(net: PetriNet, m: Multiset, t: str) -> tuple[Multiset, ReductionStep]:
    pre = net.pre(t)
    if not pre <= m:
        missing = Multiset({s: k - m[s] for s, k in pre.items() if k > m[s]})
        raise NotEnabled(t, net.render(missing))
    step = make_step(net, m - pre, t)
    return step.target, step


def replay(net: PetriNet, m: Multiset, labels: Iterable[str]) -> NetPath:
    """Build the path firing `labels` in order from `m` (contexts inferred)."""
    steps = []
    cur = m
    for t in labels:
        cur, step = fire(net, cur, t)
        steps.append(step)
    return NetPath(m, tuple(steps))


def successors(net: PetriNet, m: Multiset) -> list[ReductionStep]:
    return [make_step(net, m - tr.pre, t) for t, tr in net.transitions.items() if tr.pre <= m]


def reach(net: PetriNet, m0: Multiset, max_depth: int = 10, max_states: int = 10_000) -> ReductionGraph:
    """Breadth-first reduction graph from `m0`, truncated by the limits.

    Markings at depth `max_depth` are kept but not expanded; `truncated` is set
    when such a marking still enables something, or when `max_states` stopped
    the exploration.
    """
    if max_depth < 1 or max_states < 1:
        raise ValueError("limits must be positive")
    depth = {m0: 0}
    nodes = [m0]
    arcs: list[tuple[Multiset, ReductionStep]] = []
    truncated = False
    queue = deque([m0])
    while queue:
        m = queue.popleft()
        steps = successors(net, m)
        if depth[m] >= max_depth:
            truncated = truncated or bool(steps)
            continue
        for step in steps:
            nxt = step.target
            if nxt not in depth:
                if len(nodes) >= max_states:
                    return ReductionGraph(nodes, arcs, True)
                depth[nxt] = depth[m] + 1
                nodes.append(nxt)
                queue.append(nxt)
            arcs.append((m, step))
    return ReductionGraph(nodes, arcs, truncated)


def swap_at(net: PetriNet, p: NetPath, i: int) -> NetPath | None:
    """Exchange steps i and i+1 when both transitions fit in the marking at i."""
    if i < 0 or i + 1 >= len(p.steps):
        raise IndexError(f"no adjacent pair at {i} in a path of length {len(p.steps)}")
    a, b = p.steps[i], p.steps[i + 1]
    mu = a.source
    both = a.pre + b.pre
    if not both <= mu:
        return None
    rho = mu - both
    first = ReductionStep(rho + a.pre, b.rule, b.pre, b.post)
    second = ReductionStep(rho + b.post, a.rule, a.pre, a.post)
    return NetPath(p.start, p.steps[:i] + (first, second) + p.steps[i + 2 :])


def neighbours(net: PetriNet, p: NetPath) -> Iterable[NetPath]:
    for i in range(len(p.steps) - 1):
        q = swap_at(net, p, i)
        if q is not None and q != p:
            yield q


def equiv_class(net: PetriNet, p: NetPath, cap: int = 10_000) -> set[NetPath]:
    """All paths reachable from `p` by adjacent independent swaps."""
    if cap < 1:
        raise ValueError("cap must be positive")
    seen = {p}
    queue = deque([p])
    while queue:
        for q in neighbours(net, queue.popleft()):
            if q not in seen:
                seen.add(q)
                if len(seen) > cap:
                    raise CapExceeded(cap)
                queue.append(q)
    return seen


def equivalent(net: PetriNet, p: NetPath, q: NetPath, cap: int = 10_000) -> bool:
    if p.start != q.start or p.target != q.target or len(p) != len(q):
        return False
    if p == q:
        return True
    return q in equiv_class(net, p, cap)


def enumerate_paths(net: PetriNet, m: Multiset, max_len: int) -> list[NetPath]:
    """Every firable path from `m` of length at most `max_len`, shortest first."""
    out = [NetPath(m)]
    frontier = [NetPath(m)]
    for _ in range(max_len):
        nxt = []
        for p in frontier:
            for step in successors(net, p.target):
                nxt.append(NetPath(p.start, p.steps + (step,)))
        out.extend(nxt)
        frontier = nxt
    return out


def state_equation(net: PetriNet, start: Multiset, labels: Sequence[str]) -> Multiset:
    """Target predicted from transition counts alone; raises if it goes negative."""
    gained = EMPTY
    lost = EMPTY
    for t in labels:
        gained += net.post(t)
        lost += net.pre(t)
    return start + gained - lost

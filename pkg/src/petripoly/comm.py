"""Commutative word rewriting systems and their identification with Petri nets."""
from __future__ import annotations

from collections import deque
from collections.abc import Mapping
from dataclasses import dataclass, field

from .algebra import Multiset
from .errors import UnknownRule
from .petri import PetriNet, ReductionGraph, ReductionStep, Transition, reach


@dataclass(frozen=True, eq=False)
class CommRws:
    """An ordered alphabet and named rules between multisets over it."""

    alphabet: tuple[str, ...]
    rules: Mapping[str, tuple[Multiset, Multiset]] = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "alphabet", tuple(self.alphabet))
        rules = {name: (s, t) for name, (s, t) in dict(self.rules).items()}
        object.__setattr__(self, "rules", rules)
        known = set(self.alphabet)
        for name, (s, t) in rules.items():
            bad = (set(s) | set(t)) - known
            if bad:
                raise ValueError(f"rule {name!r} uses symbols outside the alphabet: {sorted(bad)}")

    def __eq__(self, other):
        if not isinstance(other, CommRws):
            return NotImplemented
        return self.alphabet == other.alphabet and list(self.rules.items()) == list(other.rules.items())

    def __hash__(self):
        return hash((self.alphabet, tuple(self.rules.items())))

    def source(self, r: str) -> Multiset:
        return self._get(r)[0]

    def target(self, r: str) -> Multiset:
        return self._get(r)[1]

    def _get(self, r: str):
        try:
            return self.rules[r]
        except KeyError:
            raise UnknownRule(r) from None


def phi(net: PetriNet) -> CommRws:
    """Places become the alphabet, each transition the rule pre -> post."""
    return CommRws(net.places, {t: (tr.pre, tr.post) for t, tr in net.transitions.items()})


def psi(rws: CommRws) -> PetriNet:
    return PetriNet(rws.alphabet, {r: Transition(s, t) for r, (s, t) in rws.rules.items()})


def apply_rule(rws: CommRws, c: Multiset, r: str) -> ReductionStep:
    s, t = rws._get(r)
    return ReductionStep(c, r, s, t)


def rws_reach(rws: CommRws, a0: Multiset, max_depth: int = 10, max_states: int = 10_000) -> ReductionGraph:
    """Reduction graph of the rewriting system, built by decomposing a = c + s(r).

    Deliberately independent of `petri.reach`: it enumerates decompositions
    instead of testing enabledness.
    """
    depth = {a0: 0}
    nodes = [a0]
    arcs = []
    truncated = False
    queue = deque([a0])
    while queue:
        a = queue.popleft()
        steps = []
        for r, (s, _) in rws.rules.items():
            c = _residual(a, s)
            if c is not None:
                steps.append(apply_rule(rws, c, r))
        if depth[a] >= max_depth:
            truncated = truncated or bool(steps)
            continue
        for st in steps:
            b = st.target
            if b not in depth:
                if len(nodes) >= max_states:
                    return ReductionGraph(nodes, arcs, True)
                depth[b] = depth[a] + 1
                nodes.append(b)
                queue.append(b)
            arcs.append((a, st))
    return ReductionGraph(nodes, arcs, truncated)


def _residual(a: Multiset, s: Multiset) -> Multiset | None:
    counts = {}
    for x in set(a) | set(s):
        k = a[x] - s[x]
        if k < 0:
            return None
        counts[x] = k
    return Multiset(counts)


def marking_to_sum(marking: Mapping[str, int]) -> Multiset:
    """The bijection from place->count maps to formal sums."""
    return Multiset({x: k for x, k in marking.items() if k})


def sum_to_marking(a: Multiset, places) -> dict[str, int]:
    return {x: a[x] for x in places}


@dataclass
class IsoReport:
    nodes: int
    arcs: int
    squares: int
    mismatches: list[str]

    @property
    def ok(self) -> bool:
        return not self.mismatches


def iso_check(net: PetriNet, m0: Multiset | None = None, max_depth: int = 10, max_states: int = 10_000) -> IsoReport:
    """Compare the bounded net graph with the graph of `phi(net)` from the same start.

    Checks node and arc bijection through the marking/sum maps and that the
    defining squares of both path congruences correspond.
    """
    rws = phi(net)
    m0 = m0 if m0 is not None else Multiset()
    g_net = reach(net, m0, max_depth, max_states)
    a0 = marking_to_sum(sum_to_marking(m0, net.places))
    g_rws = rws_reach(rws, a0, max_depth, max_states)
    problems = []

    image_nodes = {marking_to_sum(sum_to_marking(m, net.places)) for m in g_net.nodes}
    if image_nodes != set(g_rws.nodes):
        problems.append(f"node sets differ: {len(image_nodes)} vs {len(g_rws.nodes)}")
    if len(g_net.nodes) != len(g_rws.nodes):
        problems.append("node counts differ")
    net_arcs = {(src, st) for src, st in g_net.arcs}
    rws_arcs = {(src, st) for src, st in g_rws.arcs}
    for src, st in sorted(net_arcs - rws_arcs, key=str):
        problems.append(f"net arc {st.rule} from {src} missing in rewriting graph")
    for src, st in sorted(rws_arcs - net_arcs, key=str):
        problems.append(f"rewriting arc {st.context}+{st.rule} missing in net graph")

    squares = 0
    net_keys = {(src, st.rule, st.target) for src, st in net_arcs}
    rws_keys = {(st.source, st.rule, st.target) for _, st in rws_arcs}
    for mu in g_net.nodes:
        for a in net.transitions:
            for b in net.transitions:
                if a > b:
                    continue
                both = net.pre(a) + net.pre(b)
                if not both <= mu:
                    continue
                rho = mu - both
                net_sq = _net_square(net, mu, rho, a, b)
                rws_sq = _rws_square(rws, rho, a, b)
                if not all(e in net_keys for e in net_sq):
                    continue
                squares += 1
                if net_sq != rws_sq:
                    problems.append(f"square {a},{b} at {mu} differs between presentations")
                elif not all(e in rws_keys for e in rws_sq):
                    problems.append(f"square {a},{b} at {mu} incomplete in rewriting graph")
    return IsoReport(len(g_net.nodes), len(g_net.arcs), squares, problems)


def _net_square(net, mu, rho, a, b):
    # markings named after the congruence's defining equalities
    nu1 = rho + net.post(a) + net.pre(b)
    nu2 = rho + net.pre(a) + net.post(b)
    mu2 = rho + net.post(a) + net.post(b)
    return [(mu, a, nu1), (nu1, b, mu2), (mu, b, nu2), (nu2, a, mu2)]


def _rws_square(rws, c, a, b):
    # the four arrows (c+s(b))+a, (c+t(a))+b, (c+s(a))+b, (c+t(b))+a
    sa, ta = rws.rules[a]
    sb, tb = rws.rules[b]
    edges = [
        apply_rule(rws, c + sb, a),
        apply_rule(rws, c + ta, b),
        apply_rule(rws, c + sa, b),
        apply_rule(rws, c + tb, a),
    ]
    return [(e.source, e.rule, e.target) for e in edges]

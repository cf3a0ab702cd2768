import random

import pytest
from hypothesis import given, settings, strategies as st

from petripoly.algebra import EMPTY, Multiset
from petripoly.circuits import (
    DUP,
    SPLIT,
    Weight,
    bar_polygraph,
    check_equiv_R,
    critical_pairs,
    default_rules,
    dup_cell,
    find_redex,
    is_normal,
    normalize,
    phi_bar,
    phi_bar_cell,
    rewrite_at,
    rewriting_system,
    weight,
    wiring,
)
from petripoly.comm import CommRws
from petripoly.errors import FuelExhausted
from petripoly.polygraph2 import (
    SWAP,
    exchange_canonical,
    exchange_moves,
    from_placements,
    identity,
    relation_instances,
    sigma2,
    swap_cell,
)

from oracles import random_circuit

M = Multiset.of


@pytest.fixture(scope="session")
def system(rws):
    return rewriting_system(rws)


def test_bar_cells(rws):
    poly = bar_polygraph(rws)
    kinds = [c.kind for c in poly.cells.values()]
    assert kinds.count(SWAP) == 9 and kinds.count(DUP) == 3 and kinds.count(SPLIT) == 3
    assert poly.cell("alpha_1").source == ("x",) and poly.cell("alpha_1").target == ("y",)
    assert poly.cell("alpha_2").target == ("z",)
    assert poly.cell("beta_1").source == ("y", "y")


def test_bar_validation():
    with pytest.raises(ValueError):
        bar_polygraph(CommRws(("x",), {"sink": (M(x=1), EMPTY)}))
    with pytest.raises(ValueError):
        bar_polygraph(CommRws(("x", "y"), {"gen": (EMPTY, M(x=1, y=1))}))
    poly = bar_polygraph(CommRws(("x",), {"gen": (EMPTY, M(x=1))}))
    assert poly.cell("gen_1").source == ()


def test_phi_bar_cells(system):
    poly, rules = system
    a = phi_bar_cell(poly, poly.rule_cells["alpha"], rules)
    assert [s.render() for s in a.slices] == ["~ | delta(x) | ~", "~ | alpha_1 | x", "y | alpha_2 | ~"]
    b = phi_bar_cell(poly, poly.rule_cells["beta"], rules)
    assert [s.render() for s in b.slices] == ["~ | beta_1 | ~"]
    t = swap_cell("x", "y")
    assert phi_bar_cell(poly, t).slices[0].cell == t


def test_phi_bar_preserves_boundaries(system, rws):
    poly, _ = system
    rng = random.Random(5)
    cells = list(sigma2(rws, extended=True).two_cells.values())
    for _ in range(50):
        a = random_circuit(rng, cells, 8)
        b = phi_bar(poly, a)
        assert (b.start, b.end) == (a.start, a.end)


def test_normalize_examples(system):
    poly, rules = system
    a = from_placements(("x", "y"), [(swap_cell("x", "y"), 0), (swap_cell("y", "x"), 0)])
    assert normalize(a, rules) == identity(("x", "y"))
    assert normalize(identity(("x", "z")), rules) == identity(("x", "z"))
    d = dup_cell("x")
    a = from_placements(("x",), [(d, 0), (swap_cell("x", "x"), 0)])
    assert normalize(a, rules) == from_placements(("x",), [(d, 0)])


def test_trace_names_rules(system):
    _, rules = system
    a = from_placements(("x",), [(dup_cell("x"), 0), (swap_cell("x", "x"), 0)])
    trace = []
    normalize(a, rules, trace=trace)
    assert trace == [("cocomm[x]", 0)]


def test_fuel(system):
    _, rules = system
    a = from_placements(("x", "y"), [(swap_cell("x", "y"), 0), (swap_cell("y", "x"), 0)])
    with pytest.raises(FuelExhausted):
        normalize(a, rules, fuel=0)
    assert normalize(identity(("x",)), rules, fuel=0) == identity(("x",))


def test_rewrite_at_rejects_mismatch(system):
    _, rules = system
    inv = next(r for r in rules if r.name == "inv[x,y]")
    a = from_placements(("x", "y"), [(swap_cell("x", "y"), 0)])
    assert rewrite_at(a, inv, 0) is None


def test_match_modulo_exchange(system):
    _, rules = system
    # the two swaps are separated by an independent slice
    d = dup_cell("z")
    a = from_placements(
        ("x", "y", "z"),
        [(swap_cell("x", "y"), 0), (d, 2), (swap_cell("y", "x"), 0)],
    )
    assert normalize(a, rules) == from_placements(("x", "y", "z"), [(d, 2)])


def test_non_convex_match_refused(system):
    _, rules = system
    inv = next(r for r in rules if r.name == "inv[x,x]")
    # a duplication sits on a wire between the two swaps
    a = from_placements(("x", "x"), [(swap_cell("x", "x"), 0), (dup_cell("x"), 0)])
    assert rewrite_at(a, inv, 0) is None


def test_check_equiv(system):
    poly, rules = system
    a = phi_bar_cell(poly, poly.rule_cells["alpha"])
    assert check_equiv_R(a, a, rules)
    a1 = from_placements(("x",), [(poly.cell("alpha_1"), 0)])
    a2 = from_placements(("x",), [(poly.cell("alpha_2"), 0)])
    assert not check_equiv_R(a1, a2, rules)


def test_relation_images_equivalent(system, rws):
    poly, rules = system
    poly2 = sigma2(rws, extended=True)
    blocks = [("x",), ("y",), ("z",), ("y", "y")]
    for fam in ["R-b", "R-c", "R-d"]:
        for inst in relation_instances(poly2, [fam], context=(((), ()), (("x",), ())), block_words=blocks):
            assert check_equiv_R(phi_bar(poly, inst.lhs), phi_bar(poly, inst.rhs), rules), inst


def test_weight_order():
    a = Weight((3, 1), 0, 0, 5)
    assert Weight((2, 2, 2, 1), 9, 9, 9) < a
    assert not a < a
    assert Weight((3, 1), 0, 0, 4) < a


def test_wiring_tracks_wires(system):
    poly, _ = system
    a = phi_bar_cell(poly, poly.rule_cells["alpha"])
    w = wiring(a)
    assert w.inputs == [0]
    assert w.consumer[0] == (0, 0)
    assert len(w.outputs) == 2


def test_critical_pairs_join(system):
    _, rules = system
    cps = critical_pairs(rules)
    assert cps
    assert all(cp.joinable for cp in cps)
    fams = {(cp.first.family, cp.second.family) for cp in cps}
    assert ("inv", "braid") in fams
    assert ("cocomm", "dup-nat") in fams or ("dup-nat", "cocomm") in fams
    for cp in cps:
        assert len(cp.peak.slices) < len(cp.first.lhs.slices) + len(cp.second.lhs.slices)
        assert len(cp.peak.slices) <= 4


def test_base_rules_need_completion(rws):
    poly = bar_polygraph(rws)
    base = default_rules(poly)
    assert any(not cp.joinable for cp in critical_pairs(base))


@settings(max_examples=30)
@given(seed=st.integers(0, 100_000))
def test_every_step_decreases_weight(system, seed):
    poly, rules = system
    rng = random.Random(seed)
    a = exchange_canonical(random_circuit(rng, list(poly.cells.values()), rng.randint(1, 12)))
    for _ in range(500):
        hit = find_redex(a, rules)
        if hit is None:
            break
        b = exchange_canonical(hit[2])
        assert weight(b) < weight(a), hit[0].name
        a = b


@settings(max_examples=30)
@given(seed=st.integers(0, 100_000))
def test_normal_form_properties(system, seed):
    poly, rules = system
    rng = random.Random(seed)
    a = random_circuit(rng, list(poly.cells.values()), rng.randint(1, 8))
    n = normalize(a, rules)
    assert (n.start, n.end) == (a.start, a.end)
    assert is_normal(n, rules)
    assert normalize(n, rules) == n
    for b in list(exchange_moves(a))[:10]:
        assert normalize(b, rules) == n


def test_constant_rules():
    s = CommRws(("x", "y"), {"gen": (EMPTY, M(x=1)), "eat": (M(x=1, y=1), M(y=1))})
    poly, rules = rewriting_system(s)
    gen = poly.cell("gen_1")
    a = from_placements(("y",), [(gen, 1), (swap_cell("y", "x"), 0)])
    assert normalize(a, rules) == from_placements(("y",), [(gen, 0)])
    assert all(cp.joinable for cp in critical_pairs(rules))

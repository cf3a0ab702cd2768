import random

import pytest
from hypothesis import given, settings, strategies as st

from petripoly.algebra import EMPTY, Multiset, parikh
from petripoly.errors import NotComposable, ParikhMismatch, UnknownCell
from petripoly.petri import NetPath, enumerate_paths, equivalent, replay
from petripoly.polygraph2 import (
    RULE,
    SWAP,
    crossing,
    exchange_canonical,
    exchange_class,
    exchange_equivalent,
    exchange_moves,
    from_placements,
    identity,
    lemma_relations_sound,
    lift_path,
    lift_permutation,
    make_slice,
    pi_path,
    relation_instances,
    repr_bar,
    sigma2,
)

from oracles import grid_paths, replay_word
from strategies import equal_parikh_pairs, systems

M = Multiset.of


def test_repr_bar():
    assert repr_bar(M(x=2, y=2), "xyz") == ("x", "x", "y", "y")
    assert repr_bar(EMPTY, "xyz") == ()
    assert repr_bar(M(z=1, y=2, x=1), "xyz") == ("x", "y", "y", "z")


def test_sigma2_example(rws):
    poly = sigma2(rws)
    assert poly.one_cells == ("x", "y", "z")
    assert len(poly.two_cells) == 8
    assert poly.cell("alpha").source == ("x",) and poly.cell("alpha").target == ("y", "z")
    assert poly.cell("beta").source == ("y", "y") and poly.cell("beta").target == ("z",)
    swaps = {c.name for c in poly.two_cells.values() if c.kind == SWAP}
    assert swaps == {"tau(x,y)", "tau(y,x)", "tau(x,z)", "tau(z,x)", "tau(y,z)", "tau(z,y)"}
    assert len([c for c in sigma2(rws, extended=True).two_cells.values() if c.kind == SWAP]) == 9
    with pytest.raises(UnknownCell):
        poly.cell("tau(x,x)")


def test_sigma2_empty():
    from petripoly.comm import CommRws

    poly = sigma2(CommRws((), {}))
    assert poly.one_cells == () and poly.two_cells == {}


def test_lift_permutation_examples():
    a = lift_permutation(("y", "z", "y", "z", "z"), ("y", "y", "z", "z", "z"))
    assert len(a.slices) == 1
    assert a.slices[0].render() == "y | tau(z,y) | z.z"
    assert lift_permutation(("x", "y"), ("x", "y")).slices == ()
    a = lift_permutation(("x", "y", "z"), ("z", "y", "x"))
    assert len(a.slices) == 3 and replay_word(a) == ("z", "y", "x")


def test_lift_permutation_mismatch():
    with pytest.raises(ParikhMismatch):
        lift_permutation(("x",), ("y",))


@given(equal_parikh_pairs())
def test_lift_permutation_replays(pair):
    u, v = pair
    a = lift_permutation(u, v)
    assert replay_word(a) == v
    assert all(s.cell.kind == SWAP for s in a.slices)
    assert all(s.cell.source[0] != s.cell.source[1] for s in a.slices)


def test_crossing_blocks():
    a = crossing(("x", "y"), ("z",))
    assert a.start == ("x", "y", "z") and a.end == ("z", "x", "y")
    assert len(a.slices) == 2


def test_pi_path_examples(rws):
    poly = sigma2(rws)
    a = from_placements(("x", "x", "y", "y"), [(poly.cell("beta"), 2)])
    p = pi_path(a)
    assert p.start == M(x=2, y=2)
    assert p.steps[0].context == M(x=2) and p.target == M(x=2, z=1)
    a = lift_permutation(("x", "y", "z"), ("z", "y", "x"))
    p = pi_path(a)
    assert p.steps == () and p.start == M(x=1, y=1, z=1)


def test_pi_path_drops_swaps_in_grid(E, rws):
    for a in grid_paths(sigma2(rws)):
        p = pi_path(a)
        assert sorted(p.labels()) == ["alpha", "alpha", "beta", "beta"]
        assert p.target == M(z=4)
        assert replay(E, p.start, p.labels()) == p


def test_lift_path_examples(E, rws, init):
    p = replay(E, init, ["beta", "alpha"])
    a = lift_path(rws, p)
    assert a.slices[0].render() == "x.x | beta | ~"
    assert pi_path(a) == p
    empty = NetPath(init)
    assert lift_path(rws, empty) == identity(("x", "x", "y", "y"))


def test_single_steps_lift_and_project(E, rws, init):
    for p in enumerate_paths(E, init, 1)[1:]:
        a = lift_path(rws, p)
        assert pi_path(a) == p
        assert sum(s.cell.kind == RULE for s in a.slices) == 1


def test_exchange_one_move(rws):
    poly = sigma2(rws)
    a, b = poly.cell("alpha"), poly.cell("beta")
    first = from_placements(("x", "y", "y", "y"), [(a, 0), (b, 2)])
    second = from_placements(("x", "y", "y", "y"), [(b, 1), (a, 0)])
    assert exchange_equivalent(first, second)
    assert exchange_class(first) == {first, second}


def test_exchange_single_slice(rws):
    a = from_placements(("x",), [(sigma2(rws).cell("alpha"), 0)])
    assert exchange_class(a) == {a}
    assert list(exchange_moves(a)) == []


def test_grid_is_one_class(rws):
    paths = grid_paths(sigma2(rws))
    cls = exchange_class(paths[0], cap=100_000)
    assert all(p in cls for p in paths)
    assert len({exchange_canonical(p) for p in paths}) == 1


@settings(max_examples=40)
@given(seed=st.integers(0, 10_000))
def test_canonical_form_is_class_invariant(rws, seed):
    rng = random.Random(seed)
    poly = sigma2(rws, extended=True)
    cells = list(poly.two_cells.values())
    word = tuple(rng.choice("xyz") for _ in range(rng.randint(1, 4)))
    a = identity(word)
    for _ in range(rng.randint(0, 5)):
        cur = a.end
        opts = [(c, p) for c in cells for p in range(len(cur)) if cur[p : p + len(c.source)] == c.source and c.source]
        if not opts:
            break
        c, p = rng.choice(opts)
        a = a.then(from_placements(cur, [(c, p)]))
    canon = exchange_canonical(a)
    for b in exchange_class(a, cap=5000):
        assert exchange_canonical(b) == canon


def test_composability_checked(rws):
    poly = sigma2(rws)
    with pytest.raises(NotComposable):
        make_slice(("y",), 0, poly.cell("alpha"))
    a = from_placements(("x",), [(poly.cell("alpha"), 0)])
    with pytest.raises(NotComposable):
        a.then(identity(("x",)))


def test_relation_examples(rws):
    poly = sigma2(rws, extended=True)
    inst = relation_instances(poly, ["R-a"])
    assert all(lemma_relations_sound(rws, i) for i in inst)
    xx = [i for i in inst if i.lhs.start == ("x", "x")][0]
    assert pi_path(xx.lhs).steps == () and pi_path(xx.lhs).start == M(x=2)
    for i in relation_instances(poly, ["R-b"]):
        assert lemma_relations_sound(rws, i)
    slides = relation_instances(poly, ["R-d"])
    assert slides
    for i in slides:
        assert lemma_relations_sound(rws, i)
        assert len(pi_path(i.lhs)) == 1


def test_all_relations_sound_on_example(rws):
    poly = sigma2(rws, extended=True)
    blocks = [("x",), ("y",), ("z",), ("y", "y"), ("x", "z")]
    ctx = (((), ()), (("z",), ()), ((), ("x", "y")))
    inst = relation_instances(poly, context=ctx, block_words=blocks)
    assert len(inst) > 100
    assert all(lemma_relations_sound(rws, i) for i in inst)


@settings(max_examples=40)
@given(systems(max_places=4, max_trans=3, max_weight=2), st.data())
def test_lift_then_project_is_identity(s, data):
    from petripoly.comm import psi

    net = psi(s)
    m = Multiset({p: data.draw(st.integers(0, 3)) for p in net.places})
    for p in enumerate_paths(net, m, 3)[:40]:
        a = lift_path(s, p)
        assert pi_path(a) == p
        assert replay_word(a) == a.end
        assert parikh(a.end) == p.target


@settings(max_examples=25)
@given(seed=st.integers(0, 10_000))
def test_exchange_preserves_projection_class(E, rws, init, seed):
    rng = random.Random(seed)
    paths = enumerate_paths(E, init, 4)
    p = rng.choice(paths)
    a = lift_path(rws, p)
    for b in exchange_class(a, cap=2000):
        assert equivalent(E, p, pi_path(b))

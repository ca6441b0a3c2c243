from __future__ import annotations

import random

import pytest
from hypothesis import given, strategies as st

from braidrover import cloning as C
from braidrover import tables
from braidrover.braid import BraidWord, Permutation, braid_eq, clone_braid, clone_perm, shift_embed, zeta
from braidrover.recursion import SYMMETRIC
from strategies import braids, perms

BRGRIG = tables.brgrig()


def test_wreath_product_rule():
    x = C.make_wreath(BRGRIG, zeta(), ["a", "b"])
    y = C.make_wreath(BRGRIG, zeta(), ["c", "d"])
    z = x * y
    # (xy)_i = x_{rho(y) i} y_i
    assert [str(e) for e in z.entries] == ["b c", "a d"]
    assert braid_eq(z.top, zeta() ** 2)


def test_wreath_inverse():
    x = C.make_wreath(BRGRIG, BraidWord(3, (1, 2)), ["a", "b c", "d"])
    assert C.wreath_is_identity(x * x.inverse()).is_equal
    assert C.wreath_is_identity(x.inverse() * x).is_equal


def test_wreath_errors():
    x = C.make_wreath(BRGRIG, zeta(), ["a", "b"])
    with pytest.raises(C.WreathError):
        x * C.wreath_identity(BRGRIG, 3)
    with pytest.raises(C.WreathError):
        C.wreath_kappa(x, 3)
    with pytest.raises(C.WreathError):
        C.make_wreath(BRGRIG, zeta(), ["a"])


def test_kappa_replaces_entry_by_sections():
    x = C.make_wreath(BRGRIG, BraidWord(2), ["b", "a"])
    y = C.wreath_kappa(x, 1)
    assert [str(e) for e in y.entries] == ["a", "c", "a"]
    assert braid_eq(y.top, BraidWord(3))
    z = C.wreath_kappa(x, 2)
    assert braid_eq(z.top, BraidWord(3, (2,)))


def test_cloning_a_self_identical_entry():
    f = tables.self_identical(zeta())
    x = C.make_wreath(f, zeta(), ["1", "f"])
    y = C.wreath_kappa(x, 2)
    assert braid_eq(y.top, clone_braid(zeta(), 2, 2) * shift_embed(zeta(), 2, 2))
    assert [str(e) for e in y.entries] == ["1", "f", "f"]


def test_symmetric_embedding():
    x = C.make_wreath(tables.grig(), Permutation.identity(3), ["1", "a", "b"])
    y = C.wreath_kappa(x, 2)
    assert y.top == Permutation((1, 3, 2, 4))


@given(st.integers(2, 5).flatmap(lambda n: st.tuples(perms(n), perms(n))), st.data())
def test_clone_perm_c1(pair, data):
    g, h = pair
    k = data.draw(st.integers(1, g.degree))
    d = data.draw(st.integers(2, 3))
    assert clone_perm(g * h, k, d) == clone_perm(g, h(k), d) * clone_perm(h, k, d)


@given(st.integers(2, 5).flatmap(perms), st.data())
def test_clone_perm_c2(g, data):
    k, l = sorted(data.draw(st.lists(st.integers(1, g.degree), min_size=2, max_size=2, unique=True)))
    d = data.draw(st.integers(2, 3))
    assert clone_perm(clone_perm(g, l, d), k, d) == clone_perm(clone_perm(g, k, d), l + d - 1, d)


@given(braids(), st.data())
def test_wreath_c3(b, data):
    x = C.WreathElement(b, (BRGRIG.one(),) * b.strands, BRGRIG)
    k = data.draw(st.integers(1, b.strands))
    y = C.wreath_kappa(x, k)
    base = clone_perm(C.wreath_rho(x), k, 2)
    for i in range(1, b.strands + 2):
        if not k <= i < k + 2:
            assert C.wreath_rho(y)(i) == base(i)


def _systems(d: int):
    if d == 2:
        wreaths = [tables.grig(), BRGRIG]
    else:
        wreaths = [tables.odometer(3), tables.odometer(3, "braided")]
    return [C.permutation_system(d), C.braid_system(d)] + [C.wreath_system(t) for t in wreaths]


@pytest.mark.parametrize("d", [2, 3])
def test_axioms_hold(d):
    for sys_ in _systems(d):
        rep = C.check_axioms(sys_, samples=40, seed=7)
        assert rep.ok, str(rep)


@pytest.mark.parametrize("mutation", sorted(C.MUTATIONS))
def test_mutations_are_caught(mutation):
    rep = C.check_axioms(C.wreath_system(BRGRIG, kappa=C.MUTATIONS[mutation]), samples=60, seed=1)
    assert not rep.ok
    assert rep.tallies["C1"].failed > 0


def test_axiom_report_lines_echo_seed():
    rep = C.check_axioms(C.permutation_system(2), samples=5, seed=42)
    assert rep.lines()[0] == "C1 pass=5 fail=0 unknown=0 seed=42"


@pytest.mark.parametrize("make", [C.permutation_system, C.braid_system])
def test_cloning_is_injective(make):
    assert C.check_injectivity(make(2), count=300, seed=3) == []


def test_wreath_cloning_is_injective():
    assert C.check_injectivity(C.wreath_system(BRGRIG), count=200, seed=3) == []


def test_runs_are_reproducible():
    a = C.check_axioms(C.wreath_system(BRGRIG), samples=20, seed=9)
    b = C.check_axioms(C.wreath_system(BRGRIG), samples=20, seed=9)
    assert a.lines() == b.lines()
    sample = C.wreath_system(BRGRIG).sample
    assert str(sample(random.Random(2), 4)) == str(sample(random.Random(2), 4))
    assert C.wreath_system(tables.grig()).sample(random.Random(0), 3).table.kind == SYMMETRIC

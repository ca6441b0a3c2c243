from __future__ import annotations

import random

import pytest
from hypothesis import given

from braidrover import tables
from braidrover.braid import BraidWord, braid_eq, zeta
from braidrover.recursion import (
    GroupWord,
    TableError,
    WordSyntaxError,
    eq_in,
    format_table,
    is_identity,
    is_self_identical,
    nonidentity_certificate,
    parse_table,
    random_word,
    reachable_identity,
    root,
    root_eq,
    root_mul,
    sections,
    unsection,
    wreath_recursion,
)
from strategies import words

BRGRIG = tables.brgrig()


def test_parse_word_forms():
    w = BRGRIG.parse("a^-1 b^2 c^(-1) * d . 1")
    assert str(w) == "a^-1 b^2 c^-1 d"
    assert BRGRIG.parse("abcd") == BRGRIG.parse("a b c d")
    assert BRGRIG.parse("a a^-1").is_empty()


def test_parse_word_error_position():
    with pytest.raises(WordSyntaxError) as err:
        BRGRIG.parse("a b x")
    assert err.value.column == 5


def test_generator_recursion():
    r, secs = wreath_recursion(BRGRIG.parse("b"))
    assert root_eq(r, BraidWord(2)) and [str(s) for s in secs] == ["a", "c"]
    r, secs = wreath_recursion(BRGRIG.parse("a"))
    assert braid_eq(r, zeta()) and all(s.is_empty() for s in secs)
    r, secs = wreath_recursion(BRGRIG.parse("c^-1"))
    assert [str(s) for s in secs] == ["a", "d^-1"]


def test_bcd_rotates_sections():
    r, secs = wreath_recursion(BRGRIG.parse("b c d"))
    assert secs[0].is_empty() and str(secs[1]) == "c d b"


@given(words(BRGRIG), words(BRGRIG))
def test_recursion_is_a_homomorphism(u, v):
    # (uv) = r(u) r(v) (u_{rho(v) i} v_i)
    from braidrover.recursion import root_perm

    ru, su = wreath_recursion(u)
    rv, sv = wreath_recursion(v)
    r, s = wreath_recursion(u * v)
    assert root_eq(r, root_mul(ru, rv))
    p = root_perm(rv)
    for i in range(2):
        assert eq_in(s[i], su[p(i + 1) - 1] * sv[i]).is_equal


@given(words(BRGRIG, 16))
def test_sections_never_longer_than_word(w):
    assert all(len(s) <= len(w) for s in sections(w))


@given(words(BRGRIG, 10))
def test_exact_solver_agrees_with_section_search(w):
    budget_answer = reachable_identity(w, 200_000)
    if budget_answer is not None:
        assert budget_answer == is_identity(w)


def test_certificate_is_shallowest_nontrivial_root():
    assert nonidentity_certificate(BRGRIG.parse("a")) == ()
    assert nonidentity_certificate(BRGRIG.parse("b")) == (1,)
    assert nonidentity_certificate(BRGRIG.parse("b c d")) is None


def test_eq_in_and_table_mismatch():
    assert eq_in(BRGRIG.parse("b c"), BRGRIG.parse("d^-1")).is_equal
    assert eq_in(BRGRIG.parse("b"), BRGRIG.parse("c")).is_unequal
    with pytest.raises(TableError):
        eq_in(BRGRIG.parse("a"), tables.grig().parse("a"))


def test_self_identical_detection():
    assert is_self_identical(tables.self_identical(zeta())).verdict == "yes"
    rep = is_self_identical(BRGRIG)
    assert rep.verdict == "no" and rep.witness == "a"
    assert is_self_identical(tables.zwrz()).verdict == "no"


def test_unsection_round_trip_on_generators():
    for sym in BRGRIG.symbols:
        w = BRGRIG.parse(sym)
        r, secs = wreath_recursion(w)
        u = unsection(BRGRIG, r, secs)
        assert u is not None and eq_in(u, w).is_equal


def test_unsection_rejects_wrong_root():
    assert unsection(tables.self_identical(zeta()), BraidWord(2), [tables.self_identical(zeta()).parse("f")] * 2) is None


def test_table_file_round_trip():
    for name in ("brgrig", "grig", "zwrz", "odometer3"):
        t = tables.get_table(name)
        again = parse_table(format_table(t))
        assert again.degree == t.degree and again.kind == t.kind
        assert set(again.generators) == set(t.generators)
        for s, g in t.generators.items():
            assert again.generators[s].sections == g.sections
            assert root_eq(again.generators[s].root, g.root)


def test_table_file_loads_to_builtin(tmp_path):
    path = tmp_path / "g.table"
    path.write_text(format_table(BRGRIG))
    assert tables.get_table(str(path)) is BRGRIG
    path.write_text("group f\ndegree 2\ngen f = s1 | f, f\n")
    t = tables.get_table(str(path))
    assert t.identity_solver is not None and is_identity(t.parse("f")) is False


@pytest.mark.parametrize(
    "text",
    [
        "degree 2\ngen a = s1 | 1, 1\n",
        "group x\ndegree 2\ngen a = s1 | 1\n",
        "group x\ndegree 2\ngen a = s1 | 1, q\n",
        "group x\ndegree 2\nfrobnicate\n",
        "group x\ndegree 2\nkind symmetric\ngen a = s1 | 1, 1\n",
    ],
)
def test_table_file_errors(text):
    with pytest.raises((TableError, WordSyntaxError)):
        parse_table(text)


def test_random_word_is_reproducible():
    a = [random_word(BRGRIG, random.Random(5)) for _ in range(3)]
    b = [random_word(BRGRIG, random.Random(5)) for _ in range(3)]
    assert a == b
    assert random_word(tables.trivial(), random.Random(0)) == tables.trivial().one()


def test_root_is_a_homomorphism_into_b2():
    # the root is zeta to the exponent sum of a
    assert braid_eq(root(BRGRIG.parse("a b a c a^-1")), zeta())
    assert braid_eq(root(BRGRIG.parse("a b a c a")), zeta() ** 3)
    assert isinstance(GroupWord(BRGRIG).letters, tuple)

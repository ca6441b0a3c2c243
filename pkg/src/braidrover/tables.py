"""Built-in recursion tables and their exact solvers."""

from __future__ import annotations

import functools
from collections import Counter
from pathlib import Path
from typing import Sequence

from . import grigsolver
from .braid import BraidWord, Permutation, zeta
from .recursion import (
    BRAIDED,
    SYMMETRIC,
    Generator,
    GroupWord,
    RecursionTable,
    Root,
    TableError,
    bounded_unsection,
    parse_letters,
    reachable_identity,
    recursion_matches,
    root,
    root_eq,
    root_is_trivial,
)

DATA_DIR = Path(__file__).parent / "data"


def _secs(symbols: Sequence[str], *texts: str):
    return tuple(parse_letters(symbols, t) for t in texts)


def _braid_exponent(x: BraidWord) -> int:
    # B_2 is infinite cyclic
    return sum(1 if l > 0 else -1 for l in x.letters)


# ---------------------------------------------------------------------------
# Braided Grigorchuk group


def _brgrig_identity(w: GroupWord) -> bool:
    return grigsolver.is_identity(w)


# letterwise lifts: each image has trivial root and the given sections
_LIFT_FIRST = {  # letter -> (word, its second section)
    ("a", 1): ("b", "c"),
    ("a", -1): ("b^-1", "c^-1"),
    ("b", 1): ("a d a^-1", "1"),
    ("c", 1): ("a b a^-1", "a"),
    ("d", 1): ("a c a^-1", "a^-1"),
}
_LIFT_SECOND = {  # letter -> (word, its first section)
    ("a", 1): ("a b a^-1", "c"),
    ("a", -1): ("a b^-1 a^-1", "c^-1"),
    ("b", 1): ("d", "1"),
    ("c", 1): ("b", "a"),
    ("d", 1): ("c", "a^-1"),
}


def _lift(table: RecursionTable, word: GroupWord, lifts) -> tuple[GroupWord, GroupWord]:
    out, other = table.one(), table.one()
    for sym, e in word.letters:
        if (sym, e) in lifts:
            w, o = lifts[(sym, e)]
            out = out * table.parse(w)
            other = other * table.parse(o)
        else:
            w, o = lifts[(sym, 1)]
            out = out * table.parse(w).inverse()
            other = other * table.parse(o).inverse()
    return out, other


def _brgrig_unsection(table: RecursionTable, x: Root, secs: Sequence[GroupWord]) -> GroupWord | None:
    if x.strands != 2:
        raise TableError("root must lie in B_2")
    e = _braid_exponent(x)
    s1, s2 = secs
    # g = a^e h with h of trivial root and sections (s1, s2)
    h1, v = _lift(table, s1, _LIFT_FIRST)
    h2, t = _lift(table, v.inverse() * s2, _LIFT_SECOND)
    cand = table.gen("a", e) * h1 * h2 if e else h1 * h2
    if grigsolver.is_identity(t) and recursion_matches(cand, x, secs):
        return cand
    # the first section picked up t; fall back to a bounded search
    return bounded_unsection(table, x, secs, max_len=5)


@functools.lru_cache(maxsize=None)
def brgrig() -> RecursionTable:
    syms = ["a", "b", "c", "d"]
    one = BraidWord(2)
    gens = {
        "a": Generator("a", zeta(), _secs(syms, "1", "1")),
        "b": Generator("b", one, _secs(syms, "a", "c")),
        "c": Generator("c", one, _secs(syms, "a^-1", "d")),
        "d": Generator("d", one, _secs(syms, "1", "b")),
    }
    t = RecursionTable("brgrig", 2, BRAIDED, gens, pi_image="grig")
    t.identity_solver = _brgrig_identity
    t.unsection_solver = _brgrig_unsection
    return t


# ---------------------------------------------------------------------------
# Symmetric Grigorchuk group


@functools.lru_cache(maxsize=None)
def grig() -> RecursionTable:
    syms = ["a", "b", "c", "d"]
    one = Permutation.identity(2)
    gens = {
        "a": Generator("a", Permutation((2, 1)), _secs(syms, "1", "1")),
        "b": Generator("b", one, _secs(syms, "a", "c")),
        "c": Generator("c", one, _secs(syms, "a", "d")),
        "d": Generator("d", one, _secs(syms, "1", "b")),
    }
    t = RecursionTable("grig", 2, SYMMETRIC, gens)
    t.identity_solver = grigsolver.is_identity_grig
    t.unsection_solver = lambda tab, x, secs: bounded_unsection(tab, x, secs, max_len=5)
    return t


# ---------------------------------------------------------------------------
# Z wr Z: a = zeta(1,a), b = zeta^2(1,b)


def zwrz_normal_form(letters) -> tuple[dict[int, int], int]:
    """Write the element as prod_j a^j b^f(j) a^-j times a^q; returns (f, q)."""
    f: Counter[int] = Counter()
    t = 0
    for sym, e in letters:
        if sym == "a":
            t += e
        else:
            f[t] += e
    return {j: v for j, v in f.items() if v}, t


def zwrz_from_normal_form(table: RecursionTable, f: dict[int, int], q: int) -> GroupWord:
    w = table.one()
    for j in sorted(f):
        w = w * table.gen("a", j) * table.gen("b", f[j]) * table.gen("a", -j)
    return w * table.gen("a", q)


def _zwrz_identity(w: GroupWord) -> bool:
    # section lengths never exceed the word length, so the reachable set is finite
    result = reachable_identity(w, budget=10**7)
    assert result is not None
    return result


def _zwrz_unsection(table: RecursionTable, x: Root, secs: Sequence[GroupWord]) -> GroupWord | None:
    """Exact: the conjugates a^(2k-1) b a^-(2k-1) and a^2k b a^-2k feed sections 1 and 2.

    A trailing a^q with q odd swaps the two sections.
    """
    (f1, q1), (f2, q2) = (zwrz_normal_form(s.letters) for s in secs)
    if q2 - q1 not in (0, 1):
        return None
    q = q1 + q2
    odd_from, even_from = (f2, f1) if q % 2 else (f1, f2)
    f = {}
    for k, v in odd_from.items():
        f[2 * k - 1] = v
    for k, v in even_from.items():
        f[2 * k] = v
    if _braid_exponent(x) != q + 2 * sum(f.values()):
        return None
    return zwrz_from_normal_form(table, f, q)


@functools.lru_cache(maxsize=None)
def zwrz() -> RecursionTable:
    syms = ["a", "b"]
    gens = {
        "a": Generator("a", zeta(), _secs(syms, "1", "a")),
        "b": Generator("b", zeta() ** 2, _secs(syms, "1", "b")),
    }
    t = RecursionTable("zwrz", 2, BRAIDED, gens)
    t.identity_solver = _zwrz_identity
    t.unsection_solver = _zwrz_unsection
    return t


# ---------------------------------------------------------------------------
# Trivial and self-identical tables


def _trivial_unsection(table: RecursionTable, x: Root, secs: Sequence[GroupWord]) -> GroupWord | None:
    return table.one() if root_is_trivial(x) else None


@functools.lru_cache(maxsize=None)
def trivial(d: int = 2, kind: str = BRAIDED) -> RecursionTable:
    t = RecursionTable(f"trivial{d}" + ("" if kind == BRAIDED else "s"), d, kind, {})
    t.identity_solver = lambda w: True
    t.unsection_solver = _trivial_unsection
    return t


def _odometer_unsection(table: RecursionTable, x: Root, secs: Sequence[GroupWord]) -> GroupWord | None:
    # every letter t^(+-1) leaves exactly one t^(+-1) among the sections, so n is their exponent sum
    n = sum(e for s in secs for _, e in s.letters)
    cand = table.gen("t", n)
    return cand if recursion_matches(cand, x, secs) else None


@functools.lru_cache(maxsize=None)
def odometer(d: int = 3, kind: str = SYMMETRIC) -> RecursionTable:
    """Adding machine t = r(1, ..., 1, t) with r the d-cycle (or s1...s_{d-1} in the braided case).

    The group is infinite cyclic, so a freely reduced word is trivial iff it is empty.
    """
    if kind == BRAIDED:
        r: Root = BraidWord(d, tuple(range(1, d)))
        name = f"brodometer{d}"
    else:
        r = Permutation.from_cycles(d, [list(range(1, d + 1))])
        name = f"odometer{d}"
    secs = ((),) * (d - 1) + ((("t", 1),),)
    t = RecursionTable(name, d, kind, {"t": Generator("t", r, secs)})
    t.identity_solver = lambda w: not w.letters
    t.unsection_solver = _odometer_unsection
    return t


def _self_identical_identity(w: GroupWord) -> bool:
    # every section of w is w itself, so w = 1 iff its root is trivial
    return root_is_trivial(root(w))


def _self_identical_unsection(table: RecursionTable, x: Root, secs: Sequence[GroupWord]) -> GroupWord | None:
    g = secs[0]
    if not root_eq(root(g), x):
        return None
    if all(_self_identical_identity(s * g.inverse()) for s in secs[1:]):
        return g
    return None


def self_identical(beta: BraidWord, symbol: str = "f") -> RecursionTable:
    """The table with one generator ``f = beta(f, ..., f)``."""
    return _self_identical_cached(beta, symbol)


@functools.lru_cache(maxsize=None)
def _self_identical_cached(beta: BraidWord, symbol: str) -> RecursionTable:
    d = beta.strands
    me = ((symbol, 1),)
    gens = {symbol: Generator(symbol, beta, (me,) * d)}
    t = RecursionTable(f"selfid[{beta.word_str()}]", d, BRAIDED, gens)
    t.identity_solver = _self_identical_identity
    t.unsection_solver = _self_identical_unsection
    return t


def install_self_identical_solvers(table: RecursionTable) -> RecursionTable:
    """Attach exact solvers to a loaded table whose generators all satisfy g = r(g,...,g)."""
    for g in table.generators.values():
        if any(sec != ((g.symbol, 1),) for sec in g.sections):
            raise TableError(f"{g.symbol} is not syntactically self-identical")
    table.identity_solver = _self_identical_identity
    table.unsection_solver = _self_identical_unsection
    return table


# ---------------------------------------------------------------------------
# Registry

BUILTIN = {
    "brgrig": brgrig,
    "grig": grig,
    "zwrz": zwrz,
    "trivial": trivial,
    "odometer3": odometer,
    "brodometer3": lambda: odometer(3, BRAIDED),
    "selfid": lambda: self_identical(zeta()),
}


def get_table(name_or_path: str) -> RecursionTable:
    """A built-in table by name, or a table file."""
    if name_or_path in BUILTIN:
        return BUILTIN[name_or_path]()
    path = Path(name_or_path)
    if not path.exists():
        raise TableError(f"unknown table {name_or_path!r} (built-ins: {', '.join(BUILTIN)})")
    from .recursion import parse_table

    table = parse_table(path.read_text())
    if table.name in BUILTIN and _same_generators(table, BUILTIN[table.name]()):
        return BUILTIN[table.name]()
    if table.generators and all(
        all(sec == ((g.symbol, 1),) for sec in g.sections) for g in table.generators.values()
    ):
        install_self_identical_solvers(table)
    return table


def _same_generators(a: RecursionTable, b: RecursionTable) -> bool:
    if a.degree != b.degree or a.kind != b.kind or set(a.generators) != set(b.generators):
        return False
    for s, g in a.generators.items():
        h = b.generators[s]
        if g.sections != h.sections or not root_eq(g.root, h.root):
            return False
    return True


def pi_table(table: RecursionTable) -> RecursionTable:
    if not table.pi_image:
        raise TableError(f"table {table.name} has no registered symmetric image")
    return get_table(table.pi_image)


def pi_word(w: GroupWord) -> GroupWord:
    """Reinterpret the letters of w in the symmetric image table."""
    return GroupWord(pi_table(w.table), w.letters)

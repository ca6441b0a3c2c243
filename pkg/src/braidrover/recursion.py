"""
Recursion tables: finitely many generators, each given by a root part (a
braid in B_d or a permutation in S_d) and d section words. A table defines a
(braided) self-similar group; :class:`GroupWord` is an element of it.

The wreath product rule used everywhere is::

    (rho(f_1..f_d)) (gamma(g_1..g_d)) = rho gamma (f_{gamma(1)} g_1, ..., f_{gamma(d)} g_d)

where a braid acts on {1..d} through :func:`braid.perm_of`.
"""

from __future__ import annotations

import functools
import random
import re
from collections import deque
from dataclasses import dataclass, field
from typing import Callable, Iterable, Sequence, Union

from . import braid as br
from .braid import BraidWord, Permutation
from .config import DEFAULTS
from .verdict import EQUAL, EqVerdict, from_bool

Root = Union[BraidWord, Permutation]
Letter = tuple[str, int]

BRAIDED = "braided"
SYMMETRIC = "symmetric"


class TableError(ValueError):
    pass


class WordSyntaxError(ValueError):
    def __init__(self, msg: str, line: int = 1, column: int = 1):
        super().__init__(f"{msg} (line {line}, column {column})")
        self.line = line
        self.column = column


def _reduce_letters(letters: Iterable[Letter]) -> tuple[Letter, ...]:
    out: list[Letter] = []
    for sym, e in letters:
        if out and out[-1][0] == sym and out[-1][1] == -e:
            out.pop()
        else:
            out.append((sym, e))
    return tuple(out)


@dataclass(frozen=True)
class Generator:
    symbol: str
    root: Root
    sections: tuple[tuple[Letter, ...], ...]


@dataclass(eq=False)
class RecursionTable:
    name: str
    degree: int
    kind: str
    generators: dict[str, Generator] = field(default_factory=dict)
    # exact identity decider: GroupWord -> bool
    identity_solver: Callable[["GroupWord"], bool] | None = None
    # (root, sections) -> GroupWord | None, or raises SearchExhausted
    unsection_solver: Callable[["RecursionTable", Root, Sequence["GroupWord"]], "GroupWord | None"] | None = None
    # name of the table that is the image under pi (braided -> symmetric)
    pi_image: str | None = None

    def __post_init__(self):
        if self.degree < 2:
            raise TableError("degree must be at least 2")
        if self.kind not in (BRAIDED, SYMMETRIC):
            raise TableError(f"unknown kind {self.kind!r}")
        self.validate()

    def validate(self) -> None:
        for g in self.generators.values():
            if self.kind == BRAIDED:
                if not isinstance(g.root, BraidWord) or g.root.strands != self.degree:
                    raise TableError(f"root of {g.symbol} must be a braid on {self.degree} strands")
            else:
                if not isinstance(g.root, Permutation) or g.root.degree != self.degree:
                    raise TableError(f"root of {g.symbol} must be a permutation of degree {self.degree}")
            if len(g.sections) != self.degree:
                raise TableError(f"{g.symbol} needs {self.degree} sections, got {len(g.sections)}")
            for sec in g.sections:
                for sym, _ in sec:
                    if sym not in self.generators:
                        raise TableError(f"section of {g.symbol} uses unknown symbol {sym!r}")

    def __hash__(self):
        return id(self)

    @property
    def symbols(self) -> list[str]:
        return list(self.generators)

    def identity_root(self) -> Root:
        if self.kind == BRAIDED:
            return BraidWord(self.degree)
        return Permutation.identity(self.degree)

    def word(self, letters: Iterable[Letter] = ()) -> GroupWord:
        return GroupWord(self, tuple(letters))

    def one(self) -> GroupWord:
        return GroupWord(self, ())

    def gen(self, sym: str, power: int = 1) -> GroupWord:
        if sym not in self.generators:
            raise TableError(f"{sym!r} is not a generator of {self.name}")
        e = 1 if power > 0 else -1
        return GroupWord(self, ((sym, e),) * abs(power))

    def parse(self, text: str) -> GroupWord:
        return parse_word(self, text)

    def __repr__(self):
        return f"RecursionTable({self.name!r}, degree={self.degree}, kind={self.kind!r})"


@dataclass(frozen=True)
class GroupWord:
    """A freely reduced signed word over a table's generators."""

    table: RecursionTable
    letters: tuple[Letter, ...] = ()

    def __post_init__(self):
        for sym, e in self.letters:
            if sym not in self.table.generators or e not in (1, -1):
                raise TableError(f"bad letter {(sym, e)!r} for table {self.table.name}")
        object.__setattr__(self, "letters", _reduce_letters(self.letters))

    def __mul__(self, other: GroupWord) -> GroupWord:
        if other.table is not self.table:
            raise TableError("words from different tables")
        return GroupWord(self.table, self.letters + other.letters)

    def __pow__(self, k: int) -> GroupWord:
        base = self if k >= 0 else self.inverse()
        return GroupWord(self.table, base.letters * abs(k))

    def inverse(self) -> GroupWord:
        return GroupWord(self.table, tuple((s, -e) for s, e in reversed(self.letters)))

    def is_empty(self) -> bool:
        return not self.letters

    def __len__(self) -> int:
        return len(self.letters)

    def __str__(self) -> str:
        return format_letters(self.letters)


def format_letters(letters: Sequence[Letter]) -> str:
    if not letters:
        return "1"
    out: list[str] = []
    i = 0
    while i < len(letters):
        sym, e = letters[i]
        j = i
        while j < len(letters) and letters[j] == (sym, e):
            j += 1
        p = (j - i) * e
        out.append(sym if p == 1 else f"{sym}^{p}")
        i = j
    return " ".join(out)


_POWER = re.compile(r"\^\s*\(?\s*(-?\d+)\s*\)?")


def parse_letters(symbols: Sequence[str], text: str, line: int = 1) -> tuple[Letter, ...]:
    """Tokenize ``a^-1 d b c`` or ``bcd`` against a known symbol list."""
    syms = sorted(symbols, key=len, reverse=True)
    out: list[Letter] = []
    pos = 0
    while pos < len(text):
        ch = text[pos]
        if ch.isspace() or ch == "*" or ch == ".":
            pos += 1
            continue
        if ch == "1" and not any(text.startswith(s, pos) for s in syms):
            pos += 1
            continue
        for s in syms:
            if text.startswith(s, pos):
                pos += len(s)
                p = 1
                m = _POWER.match(text, pos)
                if m:
                    p = int(m.group(1))
                    pos = m.end()
                out.extend([(s, 1 if p > 0 else -1)] * abs(p))
                break
        else:
            raise WordSyntaxError(f"unexpected {ch!r}", line, pos + 1)
    return tuple(out)


def parse_word(table: RecursionTable, text: str) -> GroupWord:
    return GroupWord(table, parse_letters(table.symbols, text))


# ---------------------------------------------------------------------------
# Root arithmetic (braids or permutations)


def root_mul(a: Root, b: Root) -> Root:
    return a * b


def root_inv(a: Root) -> Root:
    return a.inverse()


def root_perm(a: Root) -> Permutation:
    return br.perm_of(a) if isinstance(a, BraidWord) else a


def root_is_trivial(a: Root) -> bool:
    if isinstance(a, BraidWord):
        return br.braid_is_trivial(a)
    return a.is_identity()


def root_eq(a: Root, b: Root) -> bool:
    if isinstance(a, BraidWord):
        return br.braid_eq(a, b)
    return a == b


# ---------------------------------------------------------------------------
# Wreath recursion


@functools.lru_cache(maxsize=None)
def _letter_recursion(table: RecursionTable, sym: str, e: int) -> tuple[Root, tuple[tuple[Letter, ...], ...]]:
    g = table.generators[sym]
    if e == 1:
        return g.root, g.sections
    rho = root_inv(g.root)
    p = root_perm(g.root).inverse()
    secs = tuple(
        tuple((s, -x) for s, x in reversed(g.sections[p(i) - 1])) for i in range(1, table.degree + 1)
    )
    return rho, secs


def _combine(table: RecursionTable, letters: Sequence[Letter]) -> tuple[Root, list[list[Letter]]]:
    d = table.degree
    root = table.identity_root()
    secs: list[list[Letter]] = [[] for _ in range(d)]
    for sym, e in letters:
        rho, tail = _letter_recursion(table, sym, e)
        p = root_perm(rho)
        if not p.is_identity():
            secs = [secs[p(i) - 1] for i in range(1, d + 1)]
        for i in range(d):
            if tail[i]:
                secs[i] = secs[i] + list(tail[i])
        root = root_mul(root, rho)
    return root, secs


def root(w: GroupWord) -> Root:
    r = w.table.identity_root()
    for sym, e in w.letters:
        r = root_mul(r, _letter_recursion(w.table, sym, e)[0])
    return r


def sections(w: GroupWord) -> tuple[GroupWord, ...]:
    return wreath_recursion(w)[1]


@functools.lru_cache(maxsize=65536)
def wreath_recursion(w: GroupWord) -> tuple[Root, tuple[GroupWord, ...]]:
    r, secs = _combine(w.table, w.letters)
    return r, tuple(GroupWord(w.table, tuple(s)) for s in secs)


# ---------------------------------------------------------------------------
# Identity tests


class SearchExhausted(Exception):
    """A bounded search ran out of budget."""

    def __init__(self, budget: int):
        super().__init__(f"search budget {budget} exhausted")
        self.budget = budget


def reachable_identity(w: GroupWord, budget: int | None = None) -> bool | None:
    """Explore all iterated sections of w.

    The element is trivial iff every word reachable by taking sections has
    a trivial root. Returns None when more than ``budget`` distinct words
    would have to be inspected.
    """
    budget = DEFAULTS.search_budget if budget is None else budget
    seen = {w.letters}
    queue = deque([w])
    while queue:
        u = queue.popleft()
        r, secs = wreath_recursion(u)
        if not root_is_trivial(r):
            return False
        for s in secs:
            if s.letters and s.letters not in seen:
                if len(seen) >= budget:
                    return None
                seen.add(s.letters)
                queue.append(s)
    return True


def nonidentity_certificate(w: GroupWord, max_depth: int | None = None) -> tuple[int, ...] | None:
    """Shallowest vertex path whose section has a non-trivial root, if any within depth."""
    max_depth = DEFAULTS.depth if max_depth is None else max_depth
    seen = {w.letters}
    queue = deque([(w, ())])
    while queue:
        u, path = queue.popleft()
        r, secs = wreath_recursion(u)
        if not root_is_trivial(r):
            return path
        if len(path) >= max_depth:
            continue
        for i, s in enumerate(secs, 1):
            if s.letters and s.letters not in seen:
                seen.add(s.letters)
                queue.append((s, path + (i,)))
    return None


def is_identity(w: GroupWord, budget: int | None = None) -> bool | None:
    """True/False when decided, None when no exact solver and the search ran out."""
    if not w.letters:
        return True
    if w.table.identity_solver is not None:
        return w.table.identity_solver(w)
    if nonidentity_certificate(w, DEFAULTS.depth) is not None:
        return False
    return reachable_identity(w, budget)


def eq_in(w1: GroupWord, w2: GroupWord, budget: int | None = None) -> EqVerdict:
    if w1.table is not w2.table:
        raise TableError("words from different tables")
    if w1.letters == w2.letters:
        return EQUAL
    budget = DEFAULTS.search_budget if budget is None else budget
    return from_bool(is_identity(w1 * w2.inverse(), budget), budget)


@dataclass(frozen=True)
class SelfIdenticalReport:
    verdict: str  # "yes" | "no" | "unknown"
    witness: str | None = None
    depth: int | None = None

    def __str__(self):
        if self.verdict == "no":
            return f"no (witness {self.witness})"
        if self.verdict == "unknown":
            return f"unknown (depth {self.depth})"
        return "yes"


def is_self_identical(table: RecursionTable, depth: int = 1) -> SelfIdenticalReport:
    undecided = False
    for g in table.generators.values():
        me = ((g.symbol, 1),)
        if all(sec == me for sec in g.sections):
            continue
        gw = table.gen(g.symbol)
        for sec in g.sections:
            v = eq_in(GroupWord(table, sec), gw, budget=max(depth, 1) * 1000)
            if v.is_unequal:
                return SelfIdenticalReport("no", g.symbol)
            if v.is_unknown:
                undecided = True
    return SelfIdenticalReport("unknown", depth=depth) if undecided else SelfIdenticalReport("yes")


# ---------------------------------------------------------------------------
# Unsection: find a word with a prescribed wreath recursion


def recursion_matches(w: GroupWord, x: Root, secs: Sequence[GroupWord]) -> bool | None:
    r, ws = wreath_recursion(w)
    if not root_eq(r, x):
        return False
    undecided = False
    for u, v in zip(ws, secs):
        verdict = eq_in(u, v)
        if verdict.is_unequal:
            return False
        undecided |= verdict.is_unknown
    return None if undecided else True


def bounded_unsection(table: RecursionTable, x: Root, secs: Sequence[GroupWord], max_len: int = 4,
                      budget: int | None = None) -> GroupWord | None:
    """Breadth-first search over words up to ``max_len`` letters."""
    budget = DEFAULTS.search_budget if budget is None else budget
    alphabet = [(s, e) for s in table.symbols for e in (1, -1)]
    frontier: list[tuple[Letter, ...]] = [()]
    tried = 0
    for _ in range(max_len + 1):
        nxt = []
        for letters in frontier:
            tried += 1
            if tried > budget:
                raise SearchExhausted(budget)
            w = GroupWord(table, letters)
            if recursion_matches(w, x, secs):
                return w
            for a in alphabet:
                if not letters or letters[-1] != (a[0], -a[1]):
                    nxt.append(letters + (a,))
        frontier = nxt
    raise SearchExhausted(budget)


def unsection(table: RecursionTable, x: Root, secs: Sequence[GroupWord]) -> GroupWord | None:
    """A word with root x and the given sections; None if provably none exists.

    Raises :class:`SearchExhausted` when the table has no exact procedure and
    the bounded search gives up.
    """
    if len(secs) != table.degree:
        raise TableError("wrong number of sections")
    if table.unsection_solver is not None:
        return table.unsection_solver(table, x, secs)
    return bounded_unsection(table, x, secs)


# ---------------------------------------------------------------------------
# Random words


def random_word(table: RecursionTable, rng: random.Random, mean_length: float = 5.0,
                max_length: int | None = None, symbols: Sequence[str] | None = None) -> GroupWord:
    """Word of geometric length with the given mean."""
    syms = list(symbols or table.symbols)
    if not syms:
        return table.one()
    p = 1.0 / (mean_length + 1.0)
    n = 0
    while rng.random() > p:
        n += 1
        if max_length is not None and n >= max_length:
            break
    return GroupWord(table, tuple((rng.choice(syms), rng.choice((1, -1))) for _ in range(n)))


def random_word_exact(table: RecursionTable, rng: random.Random, length: int,
                      symbols: Sequence[str] | None = None) -> GroupWord:
    syms = list(symbols or table.symbols)
    return GroupWord(table, tuple((rng.choice(syms), rng.choice((1, -1))) for _ in range(length)))


# ---------------------------------------------------------------------------
# Table files


def parse_root(kind: str, degree: int, text: str) -> Root:
    text = text.strip()
    if kind == BRAIDED:
        return br.parse_braid(text, degree)
    return Permutation.parse(degree, text)


def parse_table(text: str) -> RecursionTable:
    """Parse the line-oriented table format::

        group brgrig
        degree 2
        kind braided
        gen a = s1 | 1, 1
        gen b = e | a, c
    """
    name, degree, kind = None, None, BRAIDED
    pi_image = None
    raw_gens: list[tuple[int, str, str, list[str]]] = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        head, _, rest = line.partition(" ")
        rest = rest.strip()
        if head == "group":
            name = rest
        elif head == "degree":
            degree = int(rest)
        elif head == "kind":
            kind = rest
        elif head == "pi":
            pi_image = rest
        elif head == "gen":
            m = re.match(r"(\S+)\s*=\s*(.*?)\s*\|\s*(.*)$", rest)
            if not m:
                raise WordSyntaxError("expected 'gen <sym> = <root> | <sections>'", lineno, 1)
            raw_gens.append((lineno, m.group(1), m.group(2), [s.strip() for s in m.group(3).split(",")]))
        else:
            raise WordSyntaxError(f"unknown directive {head!r}", lineno, 1)
    if name is None or degree is None:
        raise TableError("table needs 'group' and 'degree' lines")
    symbols = [g[1] for g in raw_gens]
    gens: dict[str, Generator] = {}
    for lineno, sym, root_txt, secs in raw_gens:
        try:
            r = parse_root(kind, degree, root_txt)
        except ValueError as exc:
            raise WordSyntaxError(str(exc), lineno, 1) from None
        gens[sym] = Generator(sym, r, tuple(_reduce_letters(parse_letters(symbols, s, lineno)) for s in secs))
    table = RecursionTable(name, degree, kind, gens, pi_image=pi_image)
    table.identity_solver = None
    return table


def format_table(table: RecursionTable) -> str:
    lines = [f"group {table.name}", f"degree {table.degree}", f"kind {table.kind}"]
    if table.pi_image:
        lines.append(f"pi {table.pi_image}")
    for g in table.generators.values():
        r = g.root.word_str() if isinstance(g.root, BraidWord) else str(g.root)
        secs = ", ".join(format_letters(s).replace(" ", "") if s else "1" for s in g.sections)
        lines.append(f"gen {g.symbol} = {r} | {secs}")
    return "\n".join(lines) + "\n"

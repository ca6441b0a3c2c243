"""
Triples [F_-, g, F_+] of forests and a wreath element, their expansion and
reduction, groupoid multiplication, equality, the projection to the
symmetric side and the mod-Z calculus over the braided Grigorchuk group.

Strands of the middle braid run from the leaves of F_+ (bottom) to the
leaves of F_- (top): right leaf k is joined to left leaf rho(g)(k).
"""

from __future__ import annotations

import random
import re
from dataclasses import dataclass, replace
from typing import Sequence

from . import braid as br
from . import grigsolver
from .braid import BraidWord, Permutation
from .cloning import (
    WreathElement,
    wreath_identity,
    wreath_inv,
    wreath_is_identity,
    wreath_kappa,
    wreath_mul,
    wreath_rho,
)
from .forest import (
    LEAF,
    Forest,
    add_caret,
    common_expansion,
    parse_forest,
    format_forest,
    _subtree,
    _replace,
)
from .recursion import (
    BRAIDED,
    SYMMETRIC,
    GroupWord,
    RecursionTable,
    SearchExhausted,
    is_identity,
    random_word,
    unsection,
    wreath_recursion,
)
from .tables import pi_table, trivial
from .verdict import EQUAL, UNEQUAL, EqVerdict, unknown


class TripleError(ValueError):
    pass


@dataclass(frozen=True)
class Triple:
    left: Forest
    middle: WreathElement
    right: Forest

    def __post_init__(self):
        n = self.middle.degree
        if self.left.num_leaves() != n or self.right.num_leaves() != n:
            raise TripleError(
                f"leaf counts {self.left.num_leaves()}/{self.right.num_leaves()} do not match degree {n}"
            )
        d = self.middle.table.degree
        if self.left.d != d or self.right.d != d:
            raise TripleError("forest arity differs from the table degree")

    @property
    def table(self) -> RecursionTable:
        return self.middle.table

    @property
    def degree(self) -> int:
        return self.middle.degree

    def __mul__(self, other: Triple) -> Triple:
        return multiply(self, other)

    def __str__(self) -> str:
        return format_triple(self)


def identity_triple(table: RecursionTable, forest: Forest) -> Triple:
    return Triple(forest, wreath_identity(table, forest.num_leaves()), forest)


def feet(x: Triple) -> int:
    return x.right.num_roots()


# ---------------------------------------------------------------------------
# Expansion and multiplication


def expand(t: Triple, k: int) -> Triple:
    """Caret on right leaf k, caret on left leaf rho(g)(k), middle cloned at k."""
    n = t.degree
    if not 1 <= k <= n:
        raise TripleError(f"leaf {k} out of range 1..{n}")
    j = wreath_rho(t.middle)(k)
    return Triple(add_caret(t.left, j), wreath_kappa(t.middle, k), add_caret(t.right, k))


def expand_right(t: Triple, steps: Sequence[int]) -> Triple:
    for k in steps:
        t = expand(t, k)
    return t


def expand_left(t: Triple, steps: Sequence[int]) -> Triple:
    """Expand so that carets land on the given left leaves."""
    for j in steps:
        t = expand(t, wreath_rho(t.middle).inverse()(j))
    return t


def multiply(x: Triple, y: Triple) -> Triple:
    if x.table is not y.table:
        raise TripleError("triples over different tables")
    if x.right.num_roots() != y.left.num_roots():
        raise TripleError(f"cannot compose: {x.right.num_roots()} feet vs {y.left.num_roots()} heads")
    _, c1, c2 = common_expansion(x.right, y.left)
    x2 = expand_right(x, c1)
    y2 = expand_left(y, c2)
    return Triple(x2.left, wreath_mul(x2.middle, y2.middle), y2.right)


def invert(x: Triple) -> Triple:
    return Triple(x.right, wreath_inv(x.middle), x.left)


# ---------------------------------------------------------------------------
# Equality


def identity_test(x: Triple) -> EqVerdict:
    """A triple is trivial exactly when its forests agree and its middle is trivial.

    Every representative of an identity is an expansion of [F, 1, F] and
    expansions of the identity stay of that form, while cloning maps are
    injective; so no reduction is needed.
    """
    if x.left != x.right:
        return UNEQUAL
    return wreath_is_identity(x.middle)


def eq(x: Triple, y: Triple) -> EqVerdict:
    if x.left.num_roots() != y.left.num_roots() or x.right.num_roots() != y.right.num_roots():
        raise TripleError("triples with different source or target cannot be compared")
    return identity_test(multiply(x, invert(y)))


# ---------------------------------------------------------------------------
# Reduction


def _caret_block(f: Forest, k: int) -> tuple[int, tuple[int, ...]] | None:
    """If leaves k..k+d-1 form one caret, return (tree index, path to that caret)."""
    paths = f.leaf_paths()
    d = f.d
    if not 1 <= k <= len(paths) - d + 1:
        return None
    idx, path = paths[k - 1]
    if not path or path[-1] != 0:
        return None
    parent = path[:-1]
    node = _subtree(f.trees[idx], parent)
    if node is None or any(c != LEAF for c in node):
        return None
    return idx, parent


def _remove_caret(f: Forest, where: tuple[int, tuple[int, ...]]) -> Forest:
    idx, path = where
    trees = list(f.trees)
    trees[idx] = _replace(trees[idx], path, LEAF)
    return Forest(tuple(trees), f.d)


def _delete_points(p: Permutation, gone: set[int]) -> Permutation:
    keep = [i for i in range(1, p.degree + 1) if i not in gone]
    img_gone = {p(i) for i in gone}
    rank = {v: r for r, v in enumerate(sorted(set(range(1, p.degree + 1)) - img_gone), 1)}
    return Permutation(tuple(rank[p(i)] for i in keep))


def _uncloned_top(top, k: int, d: int):
    """Split top = clone(top', k) * embed(x, k); returns (top', x) or None."""
    n = (top.strands if isinstance(top, BraidWord) else top.degree) - d + 1
    clones = set(range(k + 1, k + d))
    if isinstance(top, BraidWord):
        base = br.delete_strands(top, clones)
        residual = br.clone_braid(base, k, d).inverse() * top
        x = br.supported_on_block(residual, k, d)
        return None if x is None else (base, x)
    base = _delete_points(top, clones)
    residual = br.clone_perm(base, k, d).inverse() * top
    for i in range(1, n + d):
        if not k <= i < k + d and residual(i) != i:
            return None
    if any(not k <= residual(i) < k + d for i in range(k, k + d)):
        return None
    x = Permutation(tuple(residual(i) - k + 1 for i in range(k, k + d)))
    return base, x


class ReductionUnknown(Exception):
    """The table's unsection oracle could not decide."""


def reduce_at(t: Triple, k: int) -> Triple | None:
    """Undo an expansion at right leaf k, if the triple is one.

    Raises :class:`ReductionUnknown` when the only obstacle is an
    undecided unsection search.
    """
    d = t.table.degree
    rblock = _caret_block(t.right, k)
    if rblock is None:
        return None
    rho = wreath_rho(t.middle)
    # the block may be permuted internally by the root of the merged entry
    image = sorted(rho(k + i) for i in range(d))
    j = image[0]
    if image != list(range(j, j + d)):
        return None
    lblock = _caret_block(t.left, j)
    if lblock is None:
        return None
    split = _uncloned_top(t.middle.top, k, d)
    if split is None:
        return None
    base, x = split
    ents = t.middle.entries
    try:
        f = unsection(t.table, x, ents[k - 1 : k - 1 + d])
    except SearchExhausted as exc:
        raise ReductionUnknown(str(exc)) from None
    if f is None:
        return None
    middle = WreathElement(base, ents[: k - 1] + (f,) + ents[k - 1 + d :], t.table)
    return Triple(_remove_caret(t.left, lblock), middle, _remove_caret(t.right, rblock))


def reduce_fully(t: Triple) -> tuple[Triple, bool]:
    """Greedy leftmost reduction to a fixpoint; the flag is False if some oracle was undecided."""
    complete = True
    progress = True
    while progress:
        progress = False
        for k in range(1, t.degree - t.table.degree + 2):
            try:
                r = reduce_at(t, k)
            except ReductionUnknown:
                complete = False
                continue
            if r is not None:
                t = r
                progress = True
                break
    return t, complete


# ---------------------------------------------------------------------------
# Projection to the symmetric side


def _pi_target(table: RecursionTable) -> RecursionTable:
    if not table.generators:
        return trivial(table.degree, SYMMETRIC)
    return pi_table(table)


def project_pi(x: Triple) -> Triple:
    if x.table.kind != BRAIDED:
        raise TripleError("projection needs a braided table")
    target = _pi_target(x.table)
    ents = tuple(GroupWord(target, f.letters) for f in x.middle.entries)
    middle = WreathElement(br.perm_of(x.middle.top), ents, target)
    return Triple(x.left, middle, x.right)


# ---------------------------------------------------------------------------
# Mod-Z calculus over the braided Grigorchuk group (Z = <b, c, d>)


def z_syntactic(w: GroupWord) -> bool:
    """The reduced form has no a-segment."""
    return grigsolver.reduce(w).ell == 0


def z_coordinates(w: GroupWord) -> tuple[int, int] | None:
    """(m, n) with w = b^m c^n in the group, or None when w is not in Z."""
    # b^m c^n = (a^(m-n), b^-n c^(m-n))
    r, (w1, w2) = wreath_recursion(w)
    if not br.braid_is_trivial(r):
        return None
    t = grigsolver.a_exponent(w1)
    u = w2 * w.table.gen("c", -t) if t else w2
    n = -grigsolver.a_exponent(wreath_recursion(u)[1][0])
    m = t + n
    cand = w.table.gen("b", m) * w.table.gen("c", n) if (m or n) else w.table.one()
    return (m, n) if is_identity(w * cand.inverse()) else None


def in_z(w: GroupWord) -> bool:
    return z_coordinates(w) is not None


def purify(g: WreathElement) -> tuple[Forest, Triple]:
    """Expand [1, g, 1] until every entry is syntactically in Z.

    Returns (F, [F', g', 1]) with [1, g, 1][F, 1, 1] = [F', g', 1].
    """
    n = g.degree
    ents = tuple(GroupWord(g.table, grigsolver.reduce(f).letters()) for f in g.entries)
    t = Triple(Forest.trivial(n, g.table.degree), replace(g, entries=ents), Forest.trivial(n, g.table.degree))
    while True:
        for k, f in enumerate(t.middle.entries, 1):
            if not z_syntactic(f):
                t = expand(t, k)
                m = t.middle
                ents = tuple(GroupWord(m.table, grigsolver.reduce(e).letters()) for e in m.entries)
                t = Triple(t.left, replace(m, entries=ents), t.right)
                break
        else:
            break
    F = t.right
    return F, Triple(t.left, t.middle, Forest.trivial(F.num_leaves(), F.d))


def eq_mod_z(x: Triple, y: Triple) -> EqVerdict:
    """Equal iff x^-1 y is [1, h, 1] with every entry of h in Z."""
    u = multiply(invert(x), y)
    if identity_test(u).is_equal:
        return EQUAL
    u, complete = reduce_fully(u)
    if u.left.is_trivial() and u.right.is_trivial():
        return EQUAL if all(in_z(f) for f in u.middle.entries) else UNEQUAL
    # not reducible to a forest-free representative (or an oracle gave up)
    return unknown()


# ---------------------------------------------------------------------------
# Text format: [left ; top ; (g1, ..., gn) ; right], top optional


def _split_top(text: str, seps: str) -> list[str]:
    parts, depth, cur = [], 0, []
    for ch in text:
        if ch in "([":
            depth += 1
        elif ch in ")]":
            depth -= 1
        if ch in seps and depth == 0:
            parts.append("".join(cur))
            cur = []
        else:
            cur.append(ch)
    parts.append("".join(cur))
    return [p.strip() for p in parts]


def _parse_entries(table: RecursionTable, text: str) -> list[GroupWord] | None:
    text = text.strip()
    if text in ("", "1"):
        return None
    if text.startswith("(") and text.endswith(")"):
        inner = text[1:-1]
        return [table.parse(p) for p in _split_top(inner, ",")]
    return [table.parse(text)]


def _forest_or_none(text: str, d: int) -> Forest | None:
    text = text.strip()
    if text in ("1", ""):
        return None
    m = re.fullmatch(r"1\^(\d+)", text)
    if m:
        return Forest.trivial(int(m.group(1)), d)
    return parse_forest(text, d)


def parse_triple(text: str, table: RecursionTable) -> Triple:
    """Parse ``[^; s1; (a, b); ^]`` or ``[^,(a,b),^]``; a bare ``1`` forest is trivial."""
    text = text.strip()
    if not (text.startswith("[") and text.endswith("]")):
        raise TripleError("a triple is written [left; top; entries; right]")
    body = text[1:-1]
    parts = _split_top(body, ";") if ";" in body else _split_top(body, ",")
    if len(parts) == 3:
        lt, top_txt, et, rt = parts[0], "", parts[1], parts[2]
    elif len(parts) == 4:
        lt, top_txt, et, rt = parts
    else:
        raise TripleError(f"expected 3 or 4 fields, got {len(parts)}")
    d = table.degree
    left, right = _forest_or_none(lt, d), _forest_or_none(rt, d)
    entries = _parse_entries(table, et)
    n = None
    for cand in (left, right):
        if cand is not None:
            n = cand.num_leaves()
    if entries is not None:
        if n is not None and len(entries) != n:
            raise TripleError(f"{len(entries)} entries for {n} leaves")
        n = len(entries)
    braided = table.kind == BRAIDED
    if top_txt and top_txt not in ("1", "e") and n is None:
        n = _strands_hint(top_txt, braided)
    if n is None:
        n = 1
    if entries is None:
        entries = [table.one()] * n
    if braided:
        top = br.parse_braid(top_txt or "e", n)
    else:
        top = Permutation.parse(n, top_txt or "e")
    left = left or Forest.trivial(n, d)
    right = right or Forest.trivial(n, d)
    return Triple(left, WreathElement(top, tuple(entries), table), right)


def _strands_hint(text: str, braided: bool) -> int:
    m = re.match(r"B(\d+)\s*:", text)
    if m:
        return int(m.group(1))
    nums = [int(v) for v in re.findall(r"\d+", text)] if not braided else [
        int(v) + 1 for v in re.findall(r"s(\d+)", text)
    ]
    return max(nums) if nums else 1


def format_triple(t: Triple) -> str:
    top = t.middle.top.word_str() if t.middle.braided else str(t.middle.top)
    ents = ", ".join(str(f) for f in t.middle.entries)
    return f"[{format_forest(t.left)}; {top}; ({ents}); {format_forest(t.right)}]"


# ---------------------------------------------------------------------------
# Random elements


def random_triple(table: RecursionTable, rng: random.Random, max_leaves: int = 9,
                  braid_length: int = 6, mean_entry_length: float = 2.0, max_entry_length: int = 6) -> Triple:
    """A random group element: two trees with equal leaf counts and a random middle."""
    d = table.degree
    max_carets = (max_leaves - 1) // (d - 1)
    c = rng.randint(0, max_carets)
    trees = []
    for _ in range(2):
        f = Forest.trivial(1, d)
        for _ in range(c):
            f = add_caret(f, rng.randint(1, f.num_leaves()))
        trees.append(f)
    n = trees[0].num_leaves()
    if table.kind == BRAIDED:
        length = rng.randint(0, braid_length) if n > 1 else 0
        top = BraidWord(n, tuple(rng.randint(1, n - 1) * rng.choice((1, -1)) for _ in range(length)))
    else:
        images = list(range(1, n + 1))
        rng.shuffle(images)
        top = Permutation(tuple(images))
    ents = tuple(random_word(table, rng, mean_entry_length, max_entry_length) for _ in range(n))
    return Triple(trees[0], WreathElement(top, ents, table), trees[1])

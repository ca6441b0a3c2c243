"""
Finite d-ary forests. A tree is ``()`` for a leaf or a tuple of d subtrees.

Text notation: a tree is written with nested parentheses, ``(,)`` for a
binary caret and ``((,),)`` for a caret on its left leaf; a leaf is empty
or ``1``. Trees of a forest are separated by ``|``. Shorthands: ``^`` (or
the wedge symbol) for one caret, ``^2`` for a caret hung on the left leaf of
a caret, ``T`` for a caret with a caret on every leaf.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterator, Sequence

Tree = tuple  # () is a leaf; otherwise a tuple of d Trees
LEAF: Tree = ()
Path = tuple[int, tuple[int, ...]]  # (tree index, child indices from the root)


class ForestError(ValueError):
    pass


def caret(d: int) -> Tree:
    return (LEAF,) * d


def tree_leaves(t: Tree) -> int:
    return 1 if t == LEAF else sum(tree_leaves(c) for c in t)


def tree_carets(t: Tree) -> int:
    return 0 if t == LEAF else 1 + sum(tree_carets(c) for c in t)


@dataclass(frozen=True)
class Forest:
    trees: tuple[Tree, ...]
    d: int = 2

    def __post_init__(self):
        if not self.trees:
            raise ForestError("a forest needs at least one tree")
        if self.d < 2:
            raise ForestError("arity must be at least 2")
        for t in self.trees:
            _check_arity(t, self.d)

    @classmethod
    def trivial(cls, roots: int, d: int = 2) -> Forest:
        return cls((LEAF,) * roots, d)

    @classmethod
    def tree(cls, t: Tree, d: int = 2) -> Forest:
        return cls((t,), d)

    def num_leaves(self) -> int:
        return sum(tree_leaves(t) for t in self.trees)

    def num_roots(self) -> int:
        return len(self.trees)

    def num_carets(self) -> int:
        return sum(tree_carets(t) for t in self.trees)

    def is_trivial(self) -> bool:
        return all(t == LEAF for t in self.trees)

    def leaf_paths(self) -> list[Path]:
        out: list[Path] = []
        for idx, t in enumerate(self.trees):
            out.extend((idx, p) for p in _leaf_paths(t))
        return out

    def __str__(self) -> str:
        return format_forest(self)


def _check_arity(t: Tree, d: int) -> None:
    if t == LEAF:
        return
    if len(t) != d:
        raise ForestError(f"caret with {len(t)} children in a {d}-ary forest")
    for c in t:
        _check_arity(c, d)


def _leaf_paths(t: Tree, prefix: tuple[int, ...] = ()) -> Iterator[tuple[int, ...]]:
    if t == LEAF:
        yield prefix
    else:
        for i, c in enumerate(t):
            yield from _leaf_paths(c, prefix + (i,))


def _subtree(t: Tree, path: Sequence[int]) -> Tree | None:
    for i in path:
        if t == LEAF:
            return None
        t = t[i]
    return t


def _replace(t: Tree, path: Sequence[int], new: Tree) -> Tree:
    if not path:
        return new
    i = path[0]
    return t[:i] + (_replace(t[i], path[1:], new),) + t[i + 1:]


def num_leaves(f: Forest) -> int:
    return f.num_leaves()


def num_roots(f: Forest) -> int:
    return f.num_roots()


def add_caret(f: Forest, k: int) -> Forest:
    """Hang a caret on leaf k (leaves numbered 1.. left to right across trees)."""
    paths = f.leaf_paths()
    if not 1 <= k <= len(paths):
        raise ForestError(f"leaf {k} out of range 1..{len(paths)}")
    idx, path = paths[k - 1]
    trees = list(f.trees)
    trees[idx] = _replace(trees[idx], path, caret(f.d))
    return Forest(tuple(trees), f.d)


def _union(s: Tree, t: Tree) -> Tree:
    if s == LEAF:
        return t
    if t == LEAF:
        return s
    return tuple(_union(a, b) for a, b in zip(s, t))


def carets_to(f: Forest, target: Forest) -> list[int]:
    """Leaf indices at which to add carets, in order, to turn f into target."""
    steps: list[int] = []
    cur = f
    while cur != target:
        for k, (idx, path) in enumerate(cur.leaf_paths(), 1):
            sub = _subtree(target.trees[idx], path)
            if sub is None:
                raise ForestError("target does not refine the forest")
            if sub != LEAF:
                steps.append(k)
                cur = add_caret(cur, k)
                break
        else:
            raise ForestError("target does not refine the forest")
    return steps


def common_expansion(f1: Forest, f2: Forest) -> tuple[Forest, list[int], list[int]]:
    if f1.num_roots() != f2.num_roots():
        raise ForestError(f"root mismatch: {f1.num_roots()} vs {f2.num_roots()}")
    if f1.d != f2.d:
        raise ForestError("arity mismatch")
    u = Forest(tuple(_union(s, t) for s, t in zip(f1.trees, f2.trees)), f1.d)
    return u, carets_to(f1, u), carets_to(f2, u)


def is_elementary(f: Forest) -> bool:
    return all(t == LEAF or all(c == LEAF for c in t) for t in f.trees)


def direct_sum(f: Forest, g: Forest) -> Forest:
    if f.d != g.d:
        raise ForestError("arity mismatch")
    return Forest(f.trees + g.trees, f.d)


Matching = frozenset  # of tuples (i, i+1, ..., i+d-1)


def forest_to_matching(f: Forest) -> frozenset[tuple[int, ...]]:
    """Carets of an elementary forest as vertex-disjoint paths in the line graph on the leaves."""
    if not is_elementary(f):
        raise ForestError("forest is not elementary")
    out = []
    pos = 1
    for t in f.trees:
        if t == LEAF:
            pos += 1
        else:
            out.append(tuple(range(pos, pos + f.d)))
            pos += f.d
    return frozenset(out)


def matching_to_forest(matching, m: int, d: int = 2) -> Forest:
    starts = {}
    for path in matching:
        path = tuple(sorted(path))
        if len(path) != d or path != tuple(range(path[0], path[0] + d)):
            raise ForestError(f"{path} is not a path of length {d - 1}")
        starts[path[0]] = path
    trees: list[Tree] = []
    pos = 1
    while pos <= m:
        if pos in starts:
            if pos + d - 1 > m:
                raise ForestError("path runs past the last leaf")
            trees.append(caret(d))
            pos += d
        else:
            trees.append(LEAF)
            pos += 1
    used = sum(1 for t in trees if t != LEAF)
    if used != len(starts):
        raise ForestError("paths overlap")
    return Forest(tuple(trees), d)


def elementary_forests(m: int, d: int = 2) -> Iterator[Forest]:
    """All elementary d-ary forests with m leaves."""
    def rec(left: int) -> Iterator[tuple[Tree, ...]]:
        if left == 0:
            yield ()
            return
        for rest in rec(left - 1):
            yield (LEAF,) + rest
        if left >= d:
            for rest in rec(left - d):
                yield (caret(d),) + rest

    for trees in rec(m):
        yield Forest(trees, d)


def random_tree(rng, d: int, max_leaves: int) -> Tree:
    """Grow a tree by hanging carets on random leaves."""
    f = Forest.trivial(1, d)
    target = rng.randint(0, (max_leaves - 1) // (d - 1))
    for _ in range(target):
        f = add_caret(f, rng.randint(1, f.num_leaves()))
    return f.trees[0]


def all_trees(d: int, max_carets: int) -> Iterator[Tree]:
    """Every d-ary tree with at most ``max_carets`` carets."""
    by_count: list[list[Tree]] = [[LEAF]]
    yield LEAF
    for n in range(1, max_carets + 1):
        level = []
        for split in _compositions(n - 1, d):
            for kids in itertools.product(*(by_count[s] for s in split)):
                level.append(tuple(kids))
        by_count.append(level)
        yield from level


def _compositions(total: int, parts: int) -> Iterator[tuple[int, ...]]:
    if parts == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


# ---------------------------------------------------------------------------
# Text notation


def format_tree(t: Tree) -> str:
    if t == LEAF:
        return "1"
    return "(" + ",".join("" if c == LEAF else format_tree(c) for c in t) + ")"


def format_forest(f: Forest) -> str:
    return "|".join(format_tree(t) for t in f.trees)


def named_tree(name: str, d: int) -> Tree | None:
    c = caret(d)
    if name in ("^", "∧"):
        return c
    if name in ("^2", "∧2", "∧²"):
        return (c,) + (LEAF,) * (d - 1)
    if name == "T":
        return (c,) * d
    if name in ("1", ""):
        return LEAF
    return None


class _TreeParser:
    def __init__(self, text: str, d: int):
        self.s = text.replace(" ", "")
        self.i = 0
        self.d = d

    def tree(self) -> Tree:
        s = self.s
        if self.i < len(s) and s[self.i] == "(":
            self.i += 1
            kids = [self.tree()]
            while self.i < len(s) and s[self.i] == ",":
                self.i += 1
                kids.append(self.tree())
            if self.i >= len(s) or s[self.i] != ")":
                raise ForestError(f"expected ')' at column {self.i + 1} in {s!r}")
            self.i += 1
            if len(kids) != self.d:
                raise ForestError(f"caret with {len(kids)} children in a {self.d}-ary tree")
            return tuple(kids)
        if self.i < len(s) and s[self.i] == "1":
            self.i += 1
        return LEAF


def parse_tree(text: str, d: int = 2) -> Tree:
    text = text.strip()
    named = named_tree(text, d)
    if named is not None:
        return named
    p = _TreeParser(text, d)
    t = p.tree()
    if p.i != len(p.s):
        raise ForestError(f"trailing input at column {p.i + 1} in {text!r}")
    return t


def parse_forest(text: str, d: int = 2) -> Forest:
    return Forest(tuple(parse_tree(part, d) for part in text.split("|")), d)

"""
d-ary cloning systems: the symmetric groups, the braid groups and the
wreath products S_n wr G and B_n wr G over a recursion table, together with
a randomized checker for the three cloning axioms.

Cloning maps act on the right, so ``kappa(x, k)`` is (x)kappa_k.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Any, Callable, Sequence

from . import braid as br
from .braid import BraidWord, Permutation
from .config import DEFAULTS
from .recursion import (
    BRAIDED,
    GroupWord,
    RecursionTable,
    Root,
    eq_in,
    random_word,
    root_eq,
    root_perm,
    wreath_recursion,
)
from .verdict import EQUAL, UNEQUAL, EqVerdict


class WreathError(ValueError):
    pass


@dataclass(frozen=True)
class WreathElement:
    """``top(entries[0], ..., entries[n-1])`` in B_n wr G or S_n wr G."""

    top: Root
    entries: tuple[GroupWord, ...]
    table: RecursionTable

    def __post_init__(self):
        if len(self.entries) != self.degree:
            raise WreathError(f"{self.degree} entries expected, got {len(self.entries)}")
        for f in self.entries:
            if f.table is not self.table:
                raise WreathError("entries must come from one table")
        if self.braided != (self.table.kind == BRAIDED):
            raise WreathError("top kind does not match the table kind")

    @property
    def degree(self) -> int:
        return self.top.strands if isinstance(self.top, BraidWord) else self.top.degree

    @property
    def braided(self) -> bool:
        return isinstance(self.top, BraidWord)

    def __mul__(self, other: WreathElement) -> WreathElement:
        return wreath_mul(self, other)

    def inverse(self) -> WreathElement:
        return wreath_inv(self)

    def __str__(self) -> str:
        top = self.top.word_str() if self.braided else str(self.top)
        return f"{top}({', '.join(str(f) for f in self.entries)})"


def wreath_identity(table: RecursionTable, n: int) -> WreathElement:
    top = BraidWord(n) if table.kind == BRAIDED else Permutation.identity(n)
    return WreathElement(top, (table.one(),) * n, table)


def make_wreath(table: RecursionTable, top: Root, entries: Sequence[GroupWord | str]) -> WreathElement:
    ents = tuple(table.parse(e) if isinstance(e, str) else e for e in entries)
    return WreathElement(top, ents, table)


def wreath_mul(x: WreathElement, y: WreathElement) -> WreathElement:
    if x.table is not y.table:
        raise WreathError("table mismatch")
    if x.degree != y.degree:
        raise WreathError(f"degree mismatch {x.degree} vs {y.degree}")
    g = root_perm(y.top)
    entries = tuple(x.entries[g(i) - 1] * y.entries[i - 1] for i in range(1, x.degree + 1))
    return WreathElement(x.top * y.top, entries, x.table)


def wreath_inv(x: WreathElement) -> WreathElement:
    p = root_perm(x.top).inverse()
    entries = tuple(x.entries[p(i) - 1].inverse() for i in range(1, x.degree + 1))
    return WreathElement(x.top.inverse(), entries, x.table)


def wreath_rho(x: WreathElement) -> Permutation:
    return root_perm(x.top)


def _embed_root(r: Root, k: int, n: int) -> Root:
    if isinstance(r, BraidWord):
        return br.shift_embed(r, k, n)
    d = r.degree
    images = list(range(1, n + d))
    for j in range(1, d + 1):
        images[k + j - 2] = k + r(j) - 1
    return Permutation(tuple(images))


def clone_top(top: Root, k: int, d: int) -> Root:
    if isinstance(top, BraidWord):
        return br.clone_braid(top, k, d)
    return br.clone_perm(top, k, d)


def wreath_kappa(x: WreathElement, k: int) -> WreathElement:
    """Clone coordinate k: the top is cabled and f_k is replaced by its sections."""
    n, d = x.degree, x.table.degree
    if not 1 <= k <= n:
        raise WreathError(f"clone index {k} out of range 1..{n}")
    r, secs = wreath_recursion(x.entries[k - 1])
    top = clone_top(x.top, k, d) * _embed_root(r, k, n)
    entries = x.entries[: k - 1] + secs + x.entries[k:]
    return WreathElement(top, entries, x.table)


def wreath_eq(x: WreathElement, y: WreathElement) -> EqVerdict:
    if x.degree != y.degree or x.table is not y.table:
        return UNEQUAL
    if not root_eq(x.top, y.top):
        return UNEQUAL
    verdicts = [eq_in(f, g) for f, g in zip(x.entries, y.entries)]
    if any(v.is_unequal for v in verdicts):
        return UNEQUAL
    for v in verdicts:
        if v.is_unknown:
            return v
    return EQUAL


def wreath_is_identity(x: WreathElement) -> EqVerdict:
    return wreath_eq(x, wreath_identity(x.table, x.degree))


# ---------------------------------------------------------------------------
# Cloning systems as bundles of functions


@dataclass
class CloningSystem:
    name: str
    d: int
    mul: Callable[[Any, Any], Any]
    rho: Callable[[Any], Permutation]
    kappa: Callable[[Any, int], Any]
    eq: Callable[[Any, Any], EqVerdict]
    sample: Callable[[random.Random, int], Any]
    degree: Callable[[Any], int]
    key: Callable[[Any], Any] = field(default=lambda x: None)


def _random_perm(rng: random.Random, n: int) -> Permutation:
    images = list(range(1, n + 1))
    rng.shuffle(images)
    return Permutation(tuple(images))


def _random_braid(rng: random.Random, n: int, max_len: int = 8) -> BraidWord:
    if n < 2:
        return BraidWord(n)
    length = rng.randint(0, max_len)
    return BraidWord(n, tuple(rng.randint(1, n - 1) * rng.choice((1, -1)) for _ in range(length)))


def _braid_key(b: BraidWord):
    return (b.strands, br.artin_images(b))


def permutation_system(d: int = 2) -> CloningSystem:
    return CloningSystem(
        name=f"symmetric d={d}",
        d=d,
        mul=lambda x, y: x * y,
        rho=lambda x: x,
        kappa=lambda x, k: br.clone_perm(x, k, d),
        eq=lambda x, y: EQUAL if x == y else UNEQUAL,
        sample=_random_perm,
        degree=lambda x: x.degree,
        key=lambda x: x,
    )


def braid_system(d: int = 2) -> CloningSystem:
    return CloningSystem(
        name=f"braid d={d}",
        d=d,
        mul=lambda x, y: x * y,
        rho=br.perm_of,
        kappa=lambda x, k: br.clone_braid(x, k, d),
        eq=lambda x, y: EQUAL if br.braid_eq(x, y) else UNEQUAL,
        sample=_random_braid,
        degree=lambda x: x.strands,
        key=_braid_key,
    )


def wreath_system(table: RecursionTable, mean_entry_length: float = 3.0, max_entry_length: int = 10,
                  kappa: Callable[[WreathElement, int], WreathElement] = wreath_kappa,
                  name: str | None = None) -> CloningSystem:
    braided = table.kind == BRAIDED

    def sample(rng: random.Random, n: int) -> WreathElement:
        top = _random_braid(rng, n) if braided else _random_perm(rng, n)
        entries = tuple(random_word(table, rng, mean_entry_length, max_entry_length) for _ in range(n))
        return WreathElement(top, entries, table)

    def key(x: WreathElement):
        return _braid_key(x.top) if braided else x.top

    prefix = "B_n" if braided else "S_n"
    return CloningSystem(
        name=name or f"{prefix} wr {table.name} d={table.degree}",
        d=table.degree,
        mul=wreath_mul,
        rho=wreath_rho,
        kappa=kappa,
        eq=wreath_eq,
        sample=sample,
        degree=lambda x: x.degree,
        key=key,
    )


# ---------------------------------------------------------------------------
# Deliberately broken cloning maps, used to show the checker has teeth


def kappa_without_embedding(x: WreathElement, k: int) -> WreathElement:
    """Drops the root factor of f_k from the top."""
    r, secs = wreath_recursion(x.entries[k - 1])
    top = clone_top(x.top, k, x.table.degree)
    return WreathElement(top, x.entries[: k - 1] + secs + x.entries[k:], x.table)


def kappa_swapped_order(x: WreathElement, k: int) -> WreathElement:
    """Multiplies the root factor of f_k on the wrong side of the cloned top."""
    n, d = x.degree, x.table.degree
    r, secs = wreath_recursion(x.entries[k - 1])
    top = _embed_root(r, k, n) * clone_top(x.top, k, d)
    return WreathElement(top, x.entries[: k - 1] + secs + x.entries[k:], x.table)


MUTATIONS = {
    "no-embedding": kappa_without_embedding,
    "swapped-order": kappa_swapped_order,
}


# ---------------------------------------------------------------------------
# Axiom checker


@dataclass
class Tally:
    passed: int = 0
    failed: int = 0
    unknown: int = 0
    failures: list[str] = field(default_factory=list)

    def add(self, verdict: EqVerdict, what: str) -> None:
        if verdict.is_equal:
            self.passed += 1
        elif verdict.is_unequal:
            self.failed += 1
            if len(self.failures) < 5:
                self.failures.append(what)
        else:
            self.unknown += 1


@dataclass
class AxiomReport:
    system: str
    seed: int
    samples: int
    tallies: dict[str, Tally]

    @property
    def ok(self) -> bool:
        return all(t.failed == 0 and t.unknown == 0 for t in self.tallies.values())

    def lines(self) -> list[str]:
        return [
            f"{ax} pass={t.passed} fail={t.failed} unknown={t.unknown} seed={self.seed}"
            for ax, t in self.tallies.items()
        ]

    def __str__(self) -> str:
        return "\n".join(f"[{self.system}] {line}" for line in self.lines())


def check_axioms(sys: CloningSystem, samples: int | None = None, seed: int | None = None,
                 n_max: int = 6) -> AxiomReport:
    samples = DEFAULTS.samples if samples is None else samples
    seed = DEFAULTS.seed if seed is None else seed
    rng = random.Random(seed)
    d = sys.d
    tallies = {"C1": Tally(), "C2": Tally(), "C3": Tally()}
    for s in range(samples):
        # C1: (gh)k_k = (g)k_{rho(h)k} (h)k_k
        n = rng.randint(1, n_max)
        g, h = sys.sample(rng, n), sys.sample(rng, n)
        k = rng.randint(1, n)
        lhs = sys.kappa(sys.mul(g, h), k)
        rhs = sys.mul(sys.kappa(g, sys.rho(h)(k)), sys.kappa(h, k))
        tallies["C1"].add(sys.eq(lhs, rhs), f"sample {s}: n={n} k={k} g={g} h={h}")

        # C2: ((g)k_l)k_k = ((g)k_k)k_{l+d-1} for k < l
        n = rng.randint(2, n_max)
        g = sys.sample(rng, n)
        k, l = sorted(rng.sample(range(1, n + 1), 2))
        lhs = sys.kappa(sys.kappa(g, l), k)
        rhs = sys.kappa(sys.kappa(g, k), l + d - 1)
        tallies["C2"].add(sys.eq(lhs, rhs), f"sample {s}: n={n} k={k} l={l} g={g}")

        # C3: rho((g)k_k)(i) = (rho(g))s_k(i) off the cloned block
        n = rng.randint(2, n_max)
        g = sys.sample(rng, n)
        k = rng.randint(1, n)
        outside = [i for i in range(1, n + d) if not k <= i < k + d]
        i = rng.choice(outside)
        ok = sys.rho(sys.kappa(g, k))(i) == br.clone_perm(sys.rho(g), k, d)(i)
        tallies["C3"].add(EQUAL if ok else UNEQUAL, f"sample {s}: n={n} k={k} i={i} g={g}")
    return AxiomReport(sys.name, seed, samples, tallies)


def check_injectivity(sys: CloningSystem, count: int = 1000, seed: int = 0, n_max: int = 6) -> list[tuple[Any, Any, int]]:
    """Clone ``count`` random inputs; return pairs of distinct inputs with equal images."""
    rng = random.Random(seed)
    buckets: dict[Any, list[tuple[Any, Any, int]]] = {}
    collisions = []
    for _ in range(count):
        n = rng.randint(1, n_max)
        x = sys.sample(rng, n)
        k = rng.randint(1, n)
        y = sys.kappa(x, k)
        bucket = buckets.setdefault((k, sys.degree(x), sys.key(y)), [])
        for x2, y2, _ in bucket:
            if sys.eq(y, y2).is_equal and not sys.eq(x, x2).is_equal:
                collisions.append((x, x2, k))
        bucket.append((x, y, k))
    return collisions

"""
Symmetric groups, free groups and braid groups.

Conventions used throughout the package:

- A braid word is read left to right, which is top to bottom in the
  diagram. Strands are numbered 1..n by their position at the *bottom*.
- The positive Artin generator ``s_i`` crosses the strand at position i
  over the strand at position i+1 as the strands go down. In B_2 this is
  the generator zeta.
- ``perm_of(b)(i)`` is the top position of the strand whose bottom
  endpoint is i, so ``perm_of(b1 * b2) == perm_of(b1) * perm_of(b2)``
  with ``*`` the usual composition of functions.

Letters of braid words and free words are stored as signed integers:
``+i`` is the generator with index i and ``-i`` its inverse.
"""

from __future__ import annotations

import functools
import re
from dataclasses import dataclass
from typing import Iterable, Sequence

__all__ = [
    "Permutation",
    "BraidWord",
    "FreeWord",
    "free_reduce",
    "perm_of",
    "artin_action",
    "artin_images",
    "braid_eq",
    "is_pure",
    "clone_perm",
    "clone_braid",
    "shift_embed",
    "direct_sum",
    "supported_on_block",
    "delete_strands",
    "parse_braid",
    "zeta",
]


class BraidError(ValueError):
    pass


# ---------------------------------------------------------------------------
# Permutations


@dataclass(frozen=True)
class Permutation:
    """A permutation of {1..n}; ``images[i-1]`` is the image of i."""

    images: tuple[int, ...]

    def __post_init__(self):
        if sorted(self.images) != list(range(1, len(self.images) + 1)):
            raise BraidError(f"not a permutation: {self.images}")

    @classmethod
    def identity(cls, n: int) -> Permutation:
        return cls(tuple(range(1, n + 1)))

    @classmethod
    def transposition(cls, n: int, i: int, j: int) -> Permutation:
        images = list(range(1, n + 1))
        images[i - 1], images[j - 1] = j, i
        return cls(tuple(images))

    @classmethod
    def from_cycles(cls, n: int, cycles: Iterable[Sequence[int]]) -> Permutation:
        images = list(range(1, n + 1))
        for cycle in cycles:
            for pos, x in enumerate(cycle):
                images[x - 1] = cycle[(pos + 1) % len(cycle)]
        return cls(tuple(images))

    @classmethod
    def parse(cls, n: int, text: str) -> Permutation:
        """Parse cycle notation such as ``(1 2)(3 4)``; ``e`` is the identity."""
        text = text.strip()
        if text in ("", "e", "id", "1"):
            return cls.identity(n)
        cycles = re.findall(r"\(([^()]*)\)", text)
        if not cycles or re.sub(r"\([^()]*\)", "", text).strip():
            raise BraidError(f"bad permutation syntax: {text!r}")
        return cls.from_cycles(n, [[int(t) for t in c.replace(",", " ").split()] for c in cycles])

    @property
    def degree(self) -> int:
        return len(self.images)

    def __call__(self, i: int) -> int:
        return self.images[i - 1]

    def __mul__(self, other: Permutation) -> Permutation:
        # (p * q)(i) = p(q(i))
        if self.degree != other.degree:
            raise BraidError("degree mismatch")
        return Permutation(tuple(self.images[j - 1] for j in other.images))

    def inverse(self) -> Permutation:
        inv = [0] * self.degree
        for i, j in enumerate(self.images, 1):
            inv[j - 1] = i
        return Permutation(tuple(inv))

    def is_identity(self) -> bool:
        return all(i == j for i, j in enumerate(self.images, 1))

    def cycles(self) -> list[tuple[int, ...]]:
        seen, out = set(), []
        for start in range(1, self.degree + 1):
            if start in seen or self(start) == start:
                continue
            cyc, x = [], start
            while x not in seen:
                seen.add(x)
                cyc.append(x)
                x = self(x)
            out.append(tuple(cyc))
        return out

    def __str__(self) -> str:
        cyc = self.cycles()
        if not cyc:
            return "e"
        return "".join("(" + " ".join(map(str, c)) + ")" for c in cyc)


# ---------------------------------------------------------------------------
# Free groups


def free_reduce(letters: Iterable[int]) -> tuple[int, ...]:
    out: list[int] = []
    for x in letters:
        if out and out[-1] == -x:
            out.pop()
        else:
            out.append(x)
    return tuple(out)


def _fmul(u: tuple[int, ...], v: tuple[int, ...]) -> tuple[int, ...]:
    # both inputs freely reduced; only the junction can cancel
    i = 0
    m = min(len(u), len(v))
    while i < m and u[len(u) - 1 - i] == -v[i]:
        i += 1
    return u[: len(u) - i] + v[i:]


def _finv(u: tuple[int, ...]) -> tuple[int, ...]:
    return tuple(-x for x in reversed(u))


@dataclass(frozen=True)
class FreeWord:
    """A freely reduced word in the free group on x_1..x_n."""

    letters: tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "letters", free_reduce(self.letters))

    def __mul__(self, other: FreeWord) -> FreeWord:
        return FreeWord(_fmul(self.letters, other.letters))

    def inverse(self) -> FreeWord:
        return FreeWord(_finv(self.letters))

    def __len__(self) -> int:
        return len(self.letters)

    def __str__(self) -> str:
        if not self.letters:
            return "1"
        return " ".join(f"x{abs(x)}" + ("^-1" if x < 0 else "") for x in self.letters)


# ---------------------------------------------------------------------------
# Braid words


@dataclass(frozen=True)
class BraidWord:
    """A word in the Artin generators of B_n, kept freely reduced."""

    strands: int
    letters: tuple[int, ...] = ()

    def __post_init__(self):
        if self.strands < 1:
            raise BraidError("a braid needs at least one strand")
        letters = free_reduce(self.letters)
        for x in letters:
            if x == 0 or abs(x) >= self.strands:
                raise BraidError(f"generator s{abs(x)} out of range for B{self.strands}")
        object.__setattr__(self, "letters", letters)

    @classmethod
    def identity(cls, n: int) -> BraidWord:
        return cls(n, ())

    def __mul__(self, other: BraidWord) -> BraidWord:
        if self.strands != other.strands:
            raise BraidError(f"strand mismatch: B{self.strands} * B{other.strands}")
        return BraidWord(self.strands, _fmul(self.letters, other.letters))

    def __pow__(self, k: int) -> BraidWord:
        base = self if k >= 0 else self.inverse()
        return BraidWord(self.strands, base.letters * abs(k))

    def inverse(self) -> BraidWord:
        return BraidWord(self.strands, _finv(self.letters))

    def __len__(self) -> int:
        return len(self.letters)

    def is_empty(self) -> bool:
        return not self.letters

    def word_str(self) -> str:
        if not self.letters:
            return "e"
        return " ".join(f"s{abs(x)}" + ("^-1" if x < 0 else "") for x in self.letters)

    def __str__(self) -> str:
        return f"B{self.strands}: {self.word_str()}"


def zeta() -> BraidWord:
    """The generator of B_2: the left strand crosses over the right one."""
    return BraidWord(2, (1,))


_BRAID_TOKEN = re.compile(r"s(\d+)(?:\^(-?\d+))?$")


def parse_braid(text: str, strands: int | None = None) -> BraidWord:
    """Parse ``B4: s1 s3^-1`` or, with ``strands`` given, ``s1 s3^-1``."""
    text = text.strip()
    m = re.match(r"B(\d+)\s*:(.*)$", text)
    if m:
        n = int(m.group(1))
        if strands is not None and strands != n:
            raise BraidError(f"expected B{strands}, got B{n}")
        strands, text = n, m.group(2)
    if strands is None:
        raise BraidError("strand count missing (write e.g. 'B3: s1 s2')")
    letters: list[int] = []
    body = text.strip()
    if body in ("", "e", "1"):
        return BraidWord(strands)
    for tok in body.split():
        mt = _BRAID_TOKEN.match(tok)
        if not mt:
            raise BraidError(f"bad braid letter {tok!r}")
        i = int(mt.group(1))
        p = int(mt.group(2)) if mt.group(2) is not None else 1
        letters.extend([i if p > 0 else -i] * abs(p))
    return BraidWord(strands, tuple(letters))


# ---------------------------------------------------------------------------
# Operations


def perm_of(b: BraidWord) -> Permutation:
    n = b.strands
    # top[j] = top position of the strand currently at position j (scanning upward)
    top = list(range(n + 1))
    for x in b.letters:
        i = abs(x)
        top[i], top[i + 1] = top[i + 1], top[i]
    return Permutation(tuple(top[1:]))


def is_pure(b: BraidWord) -> bool:
    return perm_of(b).is_identity()


@functools.lru_cache(maxsize=4096)
def artin_images(b: BraidWord) -> tuple[tuple[int, ...], ...]:
    """Images of x_1..x_n under the automorphism of F_n attached to b.

    The letter s_i acts by x_i -> x_i x_{i+1} x_i^-1, x_{i+1} -> x_i and the
    map from B_n to Aut(F_n) is a homomorphism (C_{uv} = C_u o C_v).
    """
    imgs: list[tuple[int, ...]] = [(j,) for j in range(b.strands + 1)]
    for x in b.letters:
        i = abs(x)
        u, v = imgs[i], imgs[i + 1]
        if x > 0:
            imgs[i], imgs[i + 1] = _fmul(_fmul(u, v), _finv(u)), u
        else:
            imgs[i], imgs[i + 1] = v, _fmul(_fmul(_finv(v), u), v)
    return tuple(imgs[1:])


def artin_action(b: BraidWord, w: FreeWord) -> FreeWord:
    for x in w.letters:
        if abs(x) > b.strands:
            raise BraidError(f"free generator x{abs(x)} out of range for B{b.strands}")
    imgs = artin_images(b)
    out: tuple[int, ...] = ()
    for x in w.letters:
        out = _fmul(out, imgs[x - 1] if x > 0 else _finv(imgs[-x - 1]))
    return FreeWord(out)


def braid_eq(b1: BraidWord, b2: BraidWord) -> bool:
    if b1.strands != b2.strands:
        raise BraidError(f"strand mismatch: B{b1.strands} vs B{b2.strands}")
    if b1.letters == b2.letters:
        return True
    if perm_of(b1) != perm_of(b2):
        return False
    u = b1 * b2.inverse()
    if u.is_empty():
        return True
    return all(img == (j,) for j, img in enumerate(artin_images(u), 1))


def braid_is_trivial(b: BraidWord) -> bool:
    return b.is_empty() or braid_eq(b, BraidWord(b.strands))


def clone_perm(sigma: Permutation, k: int, d: int) -> Permutation:
    """Replace the arrow k -> sigma(k) by d parallel arrows."""
    n = sigma.degree
    if not 1 <= k <= n:
        raise BraidError(f"clone index {k} out of range 1..{n}")
    sk = sigma(k)

    def lift(t: int) -> int:
        return t if t < sk else t + d - 1

    images = []
    for j in range(1, n + d):
        if j < k:
            images.append(lift(sigma(j)))
        elif j < k + d:
            images.append(sk + (j - k))
        else:
            images.append(lift(sigma(j - d + 1)))
    return Permutation(tuple(images))


def clone_braid(b: BraidWord, k: int, d: int) -> BraidWord:
    """Cable the k-th strand (counted at the bottom) into d parallel strands."""
    n = b.strands
    if not 1 <= k <= n:
        raise BraidError(f"clone index {k} out of range 1..{n}")
    shift = d - 1
    p = perm_of(b)(k)  # cable position at the top
    out: list[int] = []
    for x in b.letters:
        i, sgn = abs(x), (1 if x > 0 else -1)
        if p == i:
            # thin strand at i+1 moves left across the cable
            out.extend(sgn * j for j in range(i + shift, i - 1, -1))
            p = i + 1
        elif p == i + 1:
            out.extend(sgn * j for j in range(i, i + d))
            p = i
        else:
            out.append(sgn * (i if i < p else i + shift))
    return BraidWord(n + shift, tuple(out))


def shift_embed(x: BraidWord, k: int, n: int) -> BraidWord:
    """Add k-1 straight strands on the left and n-k on the right."""
    if not 1 <= k <= n:
        raise BraidError(f"embedding index {k} out of range 1..{n}")
    return BraidWord(n + x.strands - 1, tuple(l + (k - 1 if l > 0 else -(k - 1)) for l in x.letters))


def direct_sum(b: BraidWord, c: BraidWord) -> BraidWord:
    m = b.strands
    return BraidWord(m + c.strands, b.letters + tuple(l + m if l > 0 else l - m for l in c.letters))


def delete_strands(b: BraidWord, remove: Iterable[int]) -> BraidWord:
    """Forget the strands whose bottom endpoints are listed in ``remove``."""
    n = b.strands
    gone = set(remove)
    if not gone <= set(range(1, n + 1)) or len(gone) >= n:
        raise BraidError("can only delete a proper subset of the strands")
    if not gone:
        return b
    p = perm_of(b)
    dead = [False] * (n + 2)
    for j in gone:
        dead[p(j)] = True
    out: list[int] = []
    for x in b.letters:
        i = abs(x)
        if not dead[i] and not dead[i + 1]:
            below = sum(dead[1:i])
            out.append(x - below if x > 0 else x + below)
        dead[i], dead[i + 1] = dead[i + 1], dead[i]
    return BraidWord(n - len(gone), tuple(out))


def supported_on_block(b: BraidWord, k: int, d: int) -> BraidWord | None:
    """Return x in B_d with ``shift_embed(x, k, .) == b`` if it exists."""
    n = b.strands
    if not (1 <= k and k + d - 1 <= n):
        raise BraidError("block out of range")
    block = range(k, k + d)
    p = perm_of(b)
    if any(p(j) != j for j in range(1, n + 1) if j not in block):
        return None
    outside = [j for j in range(1, n + 1) if j not in block]
    x = delete_strands(b, outside) if outside else b
    if braid_eq(shift_embed(x, k, n - d + 1), b):
        return x
    return None

"""
Word problem for the braided Grigorchuk group and its symmetric quotient.

Braided group: a = zeta(1,1), b = (a,c), c = (a^-1,d), d = (1,b).
Here b and c commute and bcd = 1, so every element has a reduced form
``z_1 a^k_1 z_2 ... a^k_l z_{l+1}`` with each z_i = b^m c^n.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .recursion import GroupWord, Letter

Z = tuple[int, int]  # (m, n) meaning b^m c^n
ZERO: Z = (0, 0)

_Z_STEP = {"b": (1, 0), "c": (0, 1), "d": (-1, -1)}


class NotInKernel(ValueError):
    """k_level was asked about a word that is not the identity."""


@dataclass(frozen=True)
class ReducedWord:
    """``zs[0] a^ks[0] zs[1] ... a^ks[-1] zs[-1]``; interior z's are nontrivial."""

    zs: tuple[Z, ...] = (ZERO,)
    ks: tuple[int, ...] = ()

    def __post_init__(self):
        if len(self.zs) != len(self.ks) + 1:
            raise ValueError("need exactly one more z-segment than a-segments")
        if any(k == 0 for k in self.ks):
            raise ValueError("a-exponents must be nonzero")
        if any(z == ZERO for z in self.zs[1:-1]):
            raise ValueError("interior z-segments must be nontrivial")

    @property
    def ell(self) -> int:
        return len(self.ks)

    def __len__(self) -> int:
        return self.ell + sum(1 for z in self.zs if z != ZERO)

    def a_exponent(self) -> int:
        return sum(self.ks)

    def is_trivial(self) -> bool:
        return not self.ks and self.zs[0] == ZERO

    def letters(self) -> tuple[Letter, ...]:
        out: list[Letter] = []

        def put(sym: str, p: int):
            out.extend([(sym, 1 if p > 0 else -1)] * abs(p))

        for i, (m, n) in enumerate(self.zs):
            put("b", m)
            put("c", n)
            if i < self.ell:
                put("a", self.ks[i])
        return tuple(out)

    def __str__(self) -> str:
        parts: list[str] = []

        def fmt(sym: str, p: int) -> str:
            return sym if p == 1 else f"{sym}^{p}"

        for i, (m, n) in enumerate(self.zs):
            if m:
                parts.append(fmt("b", m))
            if n:
                parts.append(fmt("c", n))
            if i < self.ell:
                parts.append(fmt("a", self.ks[i]))
        return " ".join(parts) or "1"


def reduce_letters(letters: Iterable[Letter]) -> ReducedWord:
    """Collect powers, replace d by b^-1 c^-1 and sort each z as b^m c^n."""
    zs: list[Z] = [ZERO]
    ks: list[int] = []
    for sym, e in letters:
        if sym == "a":
            if ks and zs[-1] == ZERO:
                ks[-1] += e
                if ks[-1] == 0:
                    ks.pop()
                    zs.pop()
            else:
                ks.append(e)
                zs.append(ZERO)
        else:
            dm, dn = _Z_STEP[sym]
            m, n = zs[-1]
            zs[-1] = (m + e * dm, n + e * dn)
    return ReducedWord(tuple(zs), tuple(ks))


def reduce(w: GroupWord | Sequence[Letter]) -> ReducedWord:
    return reduce_letters(w.letters if isinstance(w, GroupWord) else w)


def a_exponent(w: GroupWord | Sequence[Letter] | ReducedWord) -> int:
    if isinstance(w, ReducedWord):
        return w.a_exponent()
    letters = w.letters if isinstance(w, GroupWord) else w
    return sum(e for s, e in letters if s == "a")


def _z_sections(z: Z) -> tuple[tuple[Letter, ...], tuple[Letter, ...]]:
    # b^k c^m = (a^(k-m), b^-m c^(k-m))
    k, m = z
    first = [("a", 1 if k > m else -1)] * abs(k - m)
    second = [("b", 1 if m < 0 else -1)] * abs(m) + [("c", 1 if k > m else -1)] * abs(k - m)
    return tuple(first), tuple(second)


def reduced_sections(rw: ReducedWord) -> tuple[int, ReducedWord, ReducedWord]:
    """Root exponent of zeta and both reduced sections, one z a^k pair at a time."""
    left: list[Letter] = []
    right: list[Letter] = []
    for i, z in enumerate(rw.zs):
        n = rw.ks[i] if i < rw.ell else 0
        f, s = _z_sections(z)
        if n % 2:
            left, right = right, left
            f, s = s, f
        # z a^n = zeta^n(...) and a^n has trivial sections
        left.extend(f)
        right.extend(s)
    return rw.a_exponent(), reduce_letters(left), reduce_letters(right)


def _is_identity_reduced(rw: ReducedWord, stack: set[ReducedWord], memo: dict[ReducedWord, bool]) -> bool:
    if rw.a_exponent() != 0:
        return False
    if rw.is_trivial():
        return True
    if rw in memo:
        return memo[rw]
    if rw in stack:
        # a cycle of sections only revisits words already required to have trivial roots
        return True
    stack.add(rw)
    _, w1, w2 = reduced_sections(rw)
    result = _is_identity_reduced(w1, stack, memo) and _is_identity_reduced(w2, stack, memo)
    stack.discard(rw)
    memo[rw] = result
    return result


def is_identity(w: GroupWord | Sequence[Letter] | ReducedWord) -> bool:
    rw = w if isinstance(w, ReducedWord) else reduce(w)
    return _is_identity_reduced(rw, set(), {})


_SIGMA = {
    "a": (("a", -1), ("c", -1), ("a", 1)),
    "b": (("d", 1),),
    "c": (("b", 1),),
    "d": (("c", 1),),
}


def sigma_letters(letters: Sequence[Letter]) -> tuple[Letter, ...]:
    out: list[Letter] = []
    for sym, e in letters:
        img = _SIGMA[sym]
        out.extend(img if e == 1 else tuple((s, -x) for s, x in reversed(img)))
    return tuple(out)


def sigma_endo(w: GroupWord, times: int = 1) -> GroupWord:
    letters = w.letters
    for _ in range(times):
        letters = sigma_letters(letters)
    return GroupWord(w.table, letters)


def k_level(w: GroupWord | Sequence[Letter], max_n: int = 32) -> int | None:
    """Smallest n such that every depth-n iterated reduced section is the empty word."""
    if not is_identity(w):
        raise NotInKernel("k_level needs a word representing the identity")
    level = [reduce(w)]
    for n in range(max_n + 1):
        level = [rw for rw in level if not rw.is_trivial()]
        if not level:
            return n
        nxt = []
        for rw in level:
            _, w1, w2 = reduced_sections(rw)
            nxt.extend((w1, w2))
        level = list(dict.fromkeys(nxt))
    return None


# ---------------------------------------------------------------------------
# Symmetric Grigorchuk group: a = (1 2)(1,1), b = (a,c), c = (a,d), d = (1,b)

_KLEIN = {"b": 1, "c": 2, "d": 3}
_KLEIN_SYM = {1: "b", 2: "c", 3: "d"}
_GRIG_SECTIONS = {"b": ("a", "c"), "c": ("a", "d"), "d": ("", "b")}


def grig_normal(letters: Iterable[Letter]) -> str:
    """Freely reduce using a^2 = b^2 = c^2 = d^2 = 1 and bc = cb = d; returns e.g. 'abada'."""
    out: list[str] = []
    for sym, _ in letters:
        if sym == "a":
            if out and out[-1] == "a":
                out.pop()
            else:
                out.append("a")
        else:
            if out and out[-1] != "a":
                v = _KLEIN[out.pop()] ^ _KLEIN[sym]
                if v:
                    out.append(_KLEIN_SYM[v])
            else:
                out.append(sym)
    return "".join(out)


def _grig_sections(s: str) -> tuple[list[tuple[str, int]], list[tuple[str, int]]]:
    left: list[tuple[str, int]] = []
    right: list[tuple[str, int]] = []
    for ch in s:
        if ch == "a":
            left, right = right, left
        else:
            f, g = _GRIG_SECTIONS[ch]
            if f:
                left.append((f, 1))
            right.append((g, 1))
    # each swap above was applied to the accumulated prefix: sections of u*a are swapped
    return left, right


def _grig_identity(s: str, stack: set[str], memo: dict[str, bool]) -> bool:
    if not s:
        return True
    if s.count("a") % 2:
        return False
    if s in memo:
        return memo[s]
    if s in stack:
        return True
    stack.add(s)
    left, right = _grig_sections(s)
    result = _grig_identity(grig_normal(left), stack, memo) and _grig_identity(grig_normal(right), stack, memo)
    stack.discard(s)
    memo[s] = result
    return result


def is_identity_grig(w: GroupWord | Sequence[Letter]) -> bool:
    letters = w.letters if isinstance(w, GroupWord) else w
    return _grig_identity(grig_normal(letters), set(), {})

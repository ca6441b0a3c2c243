"""
Finite abstract simplicial complexes: matching complexes of line graphs,
reduced integral homology via Smith normal form, links, homological
connectivity checks and complete-join verification.

Connectivity here is always *homological connectivity*: vanishing reduced
homology. Simple connectivity is never decided.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Callable, Hashable, Iterable, Mapping, Sequence

Simplex = frozenset


class ComplexError(ValueError):
    pass


@dataclass(frozen=True)
class SimplicialComplex:
    """Stored as the full, downward closed set of nonempty simplices."""

    simplices: frozenset[Simplex]

    @classmethod
    def from_facets(cls, facets: Iterable[Iterable[Hashable]]) -> SimplicialComplex:
        out: set[Simplex] = set()
        for f in facets:
            f = tuple(f)
            for r in range(1, len(f) + 1):
                out.update(frozenset(c) for c in itertools.combinations(f, r))
        return cls(frozenset(out))

    @classmethod
    def empty(cls) -> SimplicialComplex:
        return cls(frozenset())

    @property
    def vertices(self) -> list:
        return sorted({v for s in self.simplices if len(s) == 1 for v in s}, key=_sort_key)

    @property
    def dimension(self) -> int:
        return max((len(s) - 1 for s in self.simplices), default=-1)

    def faces(self, k: int) -> list[tuple]:
        """k-dimensional simplices as sorted tuples, in lexicographic order."""
        if k == -1:
            return [()]
        out = [tuple(sorted(s, key=_sort_key)) for s in self.simplices if len(s) == k + 1]
        return sorted(out, key=lambda t: [_sort_key(v) for v in t])

    def f_vector(self) -> list[int]:
        return [len(self.faces(k)) for k in range(self.dimension + 1)]

    def facets(self) -> list[tuple]:
        maximal = [s for s in self.simplices if not any(s < t for t in self.simplices if len(t) == len(s) + 1)]
        return sorted((tuple(sorted(s, key=_sort_key)) for s in maximal), key=lambda t: [_sort_key(v) for v in t])

    def __contains__(self, s) -> bool:
        s = frozenset(s)
        return not s or s in self.simplices

    def reduced_euler_characteristic(self) -> int:
        return -1 + sum((-1) ** k * n for k, n in enumerate(self.f_vector()))


def _sort_key(v):
    return (type(v).__name__, v)


# ---------------------------------------------------------------------------
# Constructions


def simplex(n: int) -> SimplicialComplex:
    return SimplicialComplex.from_facets([range(n + 1)])


def simplex_boundary(n: int) -> SimplicialComplex:
    """Boundary of the n-simplex: an (n-1)-sphere."""
    return SimplicialComplex.from_facets(itertools.combinations(range(n + 1), n))


def line_paths(d: int, m: int) -> list[tuple[int, ...]]:
    """Paths with d vertices (length d-1) in the line graph on vertices 1..m."""
    return [tuple(range(i, i + d)) for i in range(1, m - d + 2)]


def matching_complex(d: int, m: int) -> SimplicialComplex:
    """Vertices are the length-(d-1) paths of the line on m vertices; simplices are disjoint families."""
    paths = line_paths(d, m)
    out: set[Simplex] = set()

    def grow(chosen: list, start: int, last_end: int):
        for idx in range(start, len(paths)):
            p = paths[idx]
            if p[0] > last_end:
                new = chosen + [p]
                out.add(frozenset(new))
                grow(new, idx + 1, p[-1])

    grow([], 0, 0)
    return SimplicialComplex(frozenset(out))


def order_complex(elements: Sequence[Hashable], less: Callable[[Hashable, Hashable], bool]) -> SimplicialComplex:
    """Chains of a finite poset."""
    elements = list(elements)
    out: set[Simplex] = set()

    def grow(chain: list):
        out.add(frozenset(chain))
        for e in elements:
            if less(chain[-1], e):
                grow(chain + [e])

    for e in elements:
        grow([e])
    return SimplicialComplex(frozenset(out))


def face_poset(x: SimplicialComplex) -> tuple[list[Simplex], Callable[[Simplex, Simplex], bool]]:
    return sorted(x.simplices, key=lambda s: (len(s), sorted(map(_sort_key, s)))), lambda a, b: a < b


def link(x: SimplicialComplex, sigma: Iterable[Hashable]) -> SimplicialComplex:
    sigma = frozenset(sigma)
    if sigma and sigma not in x.simplices:
        raise ComplexError(f"{sorted(sigma, key=_sort_key)} is not a simplex")
    if not sigma:
        return x
    return SimplicialComplex(frozenset(t for t in x.simplices if not (t & sigma) and (t | sigma) in x.simplices))


def join(x: SimplicialComplex, y: SimplicialComplex) -> SimplicialComplex:
    """Vertices are tagged (0, v) and (1, w)."""
    xs = [frozenset((0, v) for v in s) for s in x.simplices] + [frozenset()]
    ys = [frozenset((1, v) for v in s) for s in y.simplices] + [frozenset()]
    return SimplicialComplex(frozenset(a | b for a in xs for b in ys if a | b))


# ---------------------------------------------------------------------------
# Smith normal form over Z


def smith_invariants(matrix: Sequence[Sequence[int]]) -> list[int]:
    """Nonzero invariant factors d_1 | d_2 | ... of an integer matrix."""
    a = [list(row) for row in matrix]
    rows = len(a)
    cols = len(a[0]) if rows else 0
    diag: list[int] = []
    t = 0
    while t < rows and t < cols:
        # pivot: smallest nonzero magnitude in the remaining block
        best = None
        for i in range(t, rows):
            for j in range(t, cols):
                v = a[i][j]
                if v and (best is None or abs(v) < best[0]):
                    best = (abs(v), i, j)
                    if best[0] == 1:
                        break
            if best and best[0] == 1:
                break
        if best is None:
            break
        _, i, j = best
        a[t], a[i] = a[i], a[t]
        for row in a:
            row[t], row[j] = row[j], row[t]
        while True:
            p = a[t][t]
            dirty = False
            for i in range(t + 1, rows):
                if a[i][t]:
                    q = a[i][t] // p
                    if q:
                        ri, rt = a[i], a[t]
                        for c in range(t, cols):
                            ri[c] -= q * rt[c]
                    if a[i][t]:
                        dirty = True
            for j in range(t + 1, cols):
                if a[t][j]:
                    q = a[t][j] // p
                    if q:
                        for r in range(t, rows):
                            a[r][j] -= q * a[r][t]
                    if a[t][j]:
                        dirty = True
            if not dirty:
                # divisibility: fold a row with a non-multiple into row t
                bad = next(
                    (i for i in range(t + 1, rows) for j in range(t + 1, cols) if a[i][j] % p),
                    None,
                )
                if bad is None:
                    break
                for c in range(t, cols):
                    a[t][c] += a[bad][c]
                continue
            # move the smallest nonzero of row/column t to the pivot
            cand = [(abs(a[i][t]), i, t) for i in range(t, rows) if a[i][t]]
            cand += [(abs(a[t][j]), t, j) for j in range(t, cols) if a[t][j]]
            _, i, j = min(cand)
            a[t], a[i] = a[i], a[t]
            for row in a:
                row[t], row[j] = row[j], row[t]
        diag.append(abs(a[t][t]))
        t += 1
    return diag


def boundary_matrix(x: SimplicialComplex, k: int) -> list[list[int]]:
    """Matrix of the augmented boundary C_k -> C_{k-1}; rows index (k-1)-faces."""
    lower = {f: i for i, f in enumerate(x.faces(k - 1))}
    upper = x.faces(k)
    mat = [[0] * len(upper) for _ in lower]
    for j, s in enumerate(upper):
        for pos in range(len(s)):
            face = s[:pos] + s[pos + 1:]
            mat[lower[face]][j] = -1 if pos % 2 else 1
    return mat


@dataclass(frozen=True)
class HomologyGroup:
    dim: int
    rank: int
    torsion: tuple[int, ...] = ()

    def is_zero(self) -> bool:
        return self.rank == 0 and not self.torsion

    def __str__(self) -> str:
        return f"dim {self.dim}: rank {self.rank}, torsion [{', '.join(map(str, self.torsion))}]"


def reduced_homology(x: SimplicialComplex, top_dim: int | None = None) -> list[HomologyGroup]:
    """Reduced integral homology in dimensions -1..top_dim (default: dim X)."""
    top = x.dimension if top_dim is None else top_dim
    invariants: dict[int, list[int]] = {}

    def inv(k: int) -> list[int]:
        if k not in invariants:
            if k > x.dimension or k < 0:
                invariants[k] = []
            else:
                invariants[k] = smith_invariants(boundary_matrix(x, k))
        return invariants[k]

    out = []
    for k in range(-1, top + 1):
        ck = len(x.faces(k)) if k <= x.dimension else 0
        rank = ck - len(inv(k)) - len(inv(k + 1))
        torsion = tuple(v for v in inv(k + 1) if v > 1)
        out.append(HomologyGroup(k, rank, torsion))
    return out


def format_homology(groups: Sequence[HomologyGroup]) -> str:
    return "\n".join(str(g) for g in groups)


def homologically_connected_through(x: SimplicialComplex, n: int) -> HomologyGroup | None:
    """First nonvanishing reduced homology group in dimensions <= n, if any."""
    if n < -1:
        return None
    for g in reduced_homology(x, n):
        if not g.is_zero():
            return g
    return None


@dataclass
class WcmReport:
    n: int
    ok: bool
    violation: str | None = None
    label: str = "homological connectivity"

    def __str__(self) -> str:
        head = f"wCM of dimension {self.n} ({self.label}): {'yes' if self.ok else 'no'}"
        return head if self.ok else f"{head}; {self.violation}"


def is_wcm_homological(x: SimplicialComplex, n: int) -> WcmReport:
    bad = homologically_connected_through(x, n - 1)
    if bad is not None:
        return WcmReport(n, False, f"complex has nonzero reduced homology in {bad}")
    for s in sorted(x.simplices, key=lambda s: (len(s), sorted(map(_sort_key, s)))):
        k = len(s) - 1
        bad = homologically_connected_through(link(x, s), n - k - 2)
        if bad is not None:
            simp = sorted(s, key=_sort_key)
            return WcmReport(n, False, f"link of {k}-simplex {simp} has nonzero reduced homology in {bad}")
    return WcmReport(n, True)


# ---------------------------------------------------------------------------
# Simplicial maps and complete joins


@dataclass
class SimplicialMap:
    source: SimplicialComplex
    target: SimplicialComplex
    vertex_map: Mapping[Hashable, Hashable]

    def __post_init__(self):
        for s in self.source.simplices:
            for v in s:
                if v not in self.vertex_map:
                    raise ComplexError(f"vertex {v!r} has no image")
            if self.image(s) not in self.target:
                raise ComplexError(f"image of {sorted(s, key=_sort_key)} is not a simplex")

    def image(self, s: Iterable[Hashable]) -> Simplex:
        return frozenset(self.vertex_map[v] for v in s)


@dataclass
class CompleteJoinReport:
    surjective: bool
    simplexwise_injective: bool
    fibers_are_joins: bool
    problems: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.surjective and self.simplexwise_injective and self.fibers_are_joins

    def __str__(self) -> str:
        head = "complete join" if self.ok else "not a complete join"
        return head + "".join(f"\n  {p}" for p in self.problems)


def check_complete_join(nu: SimplicialMap) -> CompleteJoinReport:
    src, tgt = nu.source, nu.target
    images = {nu.image(s) for s in src.simplices}
    missing = [t for t in tgt.simplices if t not in images]
    problems = []
    if missing:
        problems.append(f"not surjective: {len(missing)} target simplices missed")
    noninj = [s for s in src.simplices if len(nu.image(s)) != len(s)]
    if noninj:
        problems.append(f"not simplexwise injective on {sorted(min(noninj, key=len), key=_sort_key)}")
    fibers: dict[Hashable, list] = {}
    for v in src.vertices:
        fibers.setdefault(nu.vertex_map[v], []).append(v)
    joins_ok = True
    for t in sorted(tgt.simplices, key=lambda s: (len(s), sorted(map(_sort_key, s)))):
        fiber = {s for s in src.simplices if nu.image(s) == t}
        verts = sorted(t, key=_sort_key)
        joined = {frozenset(c) for c in itertools.product(*(fibers.get(v, []) for v in verts))}
        if fiber != joined:
            joins_ok = False
            problems.append(f"fiber over {verts} is not the join of the vertex fibers")
            break
    return CompleteJoinReport(not missing, not noninj, joins_ok, problems)


# ---------------------------------------------------------------------------
# File format: one facet per line, whitespace separated labels


def parse_complex(text: str) -> SimplicialComplex:
    facets = []
    for line in text.splitlines():
        line = line.split("#", 1)[0].strip()
        if line:
            facets.append([_label(tok) for tok in line.split()])
    return SimplicialComplex.from_facets(facets)


def _label(tok: str):
    try:
        return int(tok)
    except ValueError:
        return tok


def format_complex(x: SimplicialComplex) -> str:
    return "\n".join(" ".join(map(str, f)) for f in x.facets()) + "\n"

"""Root systems in their standard Bourbaki realizations, Weyl group tools.

Every root gets an integer index.  Positive roots come first, ordered by
height, and root ``i + N`` is ``-root[i]`` where ``N`` is the number of
positive roots; indices ``0 .. rank-1`` are the simple roots
``alpha_1 .. alpha_l`` in Bourbaki numbering.

Linear maps that permute the roots are handled as permutations of root
indices wherever possible; :class:`OrthoMap` is the exact matrix form used
at the API boundary.  Maps built here act as the identity on the orthogonal
complement of the span of the roots (relevant for ``A_n``, ``E6``, ``E7``
and ``G2`` whose ambient space is larger than the rank).
"""

from __future__ import annotations

import re
from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import factorial, lcm
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

from . import linalg as la
from .linalg import Matrix, Vec

Perm = Tuple[int, ...]
FundamentalSystem = Tuple[int, ...]

DEFAULT_WEYL_CAP = 4_000_000


class RootSystemError(ValueError):
    pass


class NotARoot(RootSystemError):
    pass


class NotRegular(RootSystemError):
    pass


class NotAFundamentalSystem(RootSystemError):
    pass


class NotAnAutomorphism(RootSystemError):
    pass


class WeylCapExceeded(RootSystemError):
    pass


# -- Cartan types ------------------------------------------------------------

_MIN_RANK = {"A": 1, "B": 2, "C": 2, "D": 3}
_EXCEPTIONAL = {"E": (6, 7, 8), "F": (4,), "G": (2,)}


@dataclass(frozen=True, order=True)
class CartanType:
    series: str
    rank: int

    def __post_init__(self):
        s, l = self.series, self.rank
        if s in _MIN_RANK:
            ok = isinstance(l, int) and l >= _MIN_RANK[s]
        else:
            ok = l in _EXCEPTIONAL.get(s, ())
        if not ok:
            raise RootSystemError(f"unsupported Cartan type {s}{l}")

    @classmethod
    def parse(cls, text: str) -> "CartanType":
        m = re.fullmatch(r"\s*([A-Ga-g])\s*_?\s*(\d+)\s*", text)
        if not m:
            raise RootSystemError(f"cannot parse Cartan type {text!r}")
        return cls(m.group(1).upper(), int(m.group(2)))

    def __str__(self) -> str:
        return f"{self.series}{self.rank}"

    @property
    def weyl_order(self) -> int:
        s, l = self.series, self.rank
        if s == "A":
            return factorial(l + 1)
        if s in "BC":
            return 2**l * factorial(l)
        if s == "D":
            return 2 ** (l - 1) * factorial(l)
        return {("E", 6): 51840, ("E", 7): 2903040, ("E", 8): 696729600,
                ("F", 4): 1152, ("G", 2): 12}[(s, l)]


def _e(n: int, *pairs) -> Vec:
    """Vector in Q^n from (coordinate, value) pairs, coordinates 1-based."""
    v = [Fraction(0)] * n
    for i, x in pairs:
        v[i - 1] += Fraction(x)
    return tuple(v)


def _e8_simple(n: int) -> List[Vec]:
    h = Fraction(1, 2)
    a1 = (h, -h, -h, -h, -h, -h, -h, h)
    rest = [_e(8, (1, 1), (2, 1)), _e(8, (2, 1), (1, -1))]
    rest += [_e(8, (i, 1), (i - 1, -1)) for i in range(3, 8)]
    return [a1] + rest[: n - 1]


def simple_root_vectors(ct: CartanType) -> Tuple[int, List[Vec]]:
    """Ambient dimension and simple roots of the Bourbaki realization."""
    s, l = ct.series, ct.rank
    if s == "A":
        n = l + 1
        return n, [_e(n, (i, 1), (i + 1, -1)) for i in range(1, l + 1)]
    if s in "BCD":
        chain = [_e(l, (i, 1), (i + 1, -1)) for i in range(1, l)]
        last = {"B": _e(l, (l, 1)),
                "C": _e(l, (l, 2)),
                "D": _e(l, (l - 1, 1), (l, 1))}[s]
        return l, chain + [last]
    if s == "E":
        return 8, _e8_simple(l)
    if s == "F":
        h = Fraction(1, 2)
        return 4, [_e(4, (2, 1), (3, -1)), _e(4, (3, 1), (4, -1)), _e(4, (4, 1)),
                   (h, -h, -h, -h)]
    # G2 in the plane x1 + x2 + x3 = 0; alpha_1 short, alpha_2 long
    return 3, [_e(3, (1, 1), (2, -1)), _e(3, (1, -2), (2, 1), (3, 1))]


# -- permutations ------------------------------------------------------------


def compose(p: Perm, q: Perm) -> Perm:
    """The permutation ``p ∘ q`` (apply q first)."""
    return tuple(p[x] for x in q)


def invert(p: Perm) -> Perm:
    inv = [0] * len(p)
    for i, x in enumerate(p):
        inv[x] = i
    return tuple(inv)


# -- maps ----------------------------------------------------------------------


@dataclass(frozen=True)
class OrthoMap:
    """An exact linear map of the ambient space, stored as a row-major matrix."""

    matrix: Matrix

    @classmethod
    def identity(cls, n: int) -> "OrthoMap":
        return cls(la.identity(n))

    @property
    def dim(self) -> int:
        return len(self.matrix)

    def __call__(self, v: Sequence) -> Vec:
        return la.mat_vec(self.matrix, v)

    def __matmul__(self, other: "OrthoMap") -> "OrthoMap":
        return OrthoMap(la.mat_mul(self.matrix, other.matrix))

    def inverse(self) -> "OrthoMap":
        return OrthoMap(la.inverse(self.matrix))

    def is_identity(self) -> bool:
        return self.matrix == la.identity(self.dim)

    def to_json(self) -> list:
        return [[la.format_scalar(x) for x in row] for row in self.matrix]

    @classmethod
    def from_json(cls, rows) -> "OrthoMap":
        return cls(tuple(tuple(la.parse_scalar(x) for x in row) for row in rows))


# -- root systems --------------------------------------------------------------


class RootSystem:
    """The roots of a simple Lie algebra in a fixed Euclidean realization.

    Use :func:`build_root_system` rather than instantiating directly; it
    caches one instance per Cartan type.
    """

    def __init__(self, ctype: CartanType):
        self.ctype = ctype
        self.rank = l = ctype.rank
        self.ambient_dim, simple_vecs = simple_root_vectors(ctype)
        self.gram_simple: Matrix = tuple(
            tuple(la.dot(a, b) for b in simple_vecs) for a in simple_vecs)
        g = self.gram_simple
        # a positive multiple of the Gram matrix with integer entries
        scale = lcm(*(x.denominator for row in g for x in row))
        self.gram_int: Tuple[Tuple[int, ...], ...] = tuple(
            tuple(int(x * scale) for x in row) for row in g)
        self.cartan: Tuple[Tuple[int, ...], ...] = tuple(
            tuple(int(2 * g[i][j] / g[j][j]) for j in range(l)) for i in range(l))

        positives = self._positive_coords()
        positives.sort(key=lambda c: (sum(c), tuple(-x for x in c)))
        self.npos = len(positives)
        coords = positives + [tuple(-x for x in c) for c in positives]
        self.coords: Tuple[Tuple[int, ...], ...] = tuple(coords)
        self.coord_index: Dict[Tuple[int, ...], int] = {c: i for i, c in enumerate(coords)}
        self.roots: Tuple[Vec, ...] = tuple(self._from_coords(c, simple_vecs) for c in coords)
        self.index: Dict[Vec, int] = {r: i for i, r in enumerate(self.roots)}
        self.simple: FundamentalSystem = tuple(range(l))
        n = self.npos
        self.neg: Perm = tuple(i + n if i < n else i - n for i in range(2 * n))

        self.complement: Matrix = la.nullspace(simple_vecs, self.ambient_dim)
        self._basis_inv = la.inverse(la.from_columns(list(simple_vecs) + list(self.complement)))
        self.simple_reflections: Tuple[Perm, ...] = tuple(
            self._simple_reflection_perm(i) for i in range(l))

    # construction helpers

    def _positive_coords(self) -> List[Tuple[int, ...]]:
        l, a = self.rank, self.cartan
        start = [tuple(1 if j == i else 0 for j in range(l)) for i in range(l)]
        seen = set(start)
        todo = deque(start)
        while todo:
            c = todo.popleft()
            for i in range(l):
                k = sum(c[j] * a[j][i] for j in range(l))
                if k == 0:
                    continue
                d = list(c)
                d[i] -= k
                d = tuple(d)
                if d not in seen:
                    seen.add(d)
                    todo.append(d)
        return [c for c in seen if all(x >= 0 for x in c)]

    @staticmethod
    def _from_coords(c, simple_vecs) -> Vec:
        v = la.zero(len(simple_vecs[0]))
        for x, a in zip(c, simple_vecs):
            if x:
                v = la.add(v, la.scale(x, a))
        return v

    def _simple_reflection_perm(self, i: int) -> Perm:
        a = self.cartan
        out = []
        for c in self.coords:
            k = sum(c[j] * a[j][i] for j in range(self.rank))
            d = list(c)
            d[i] -= k
            out.append(self.coord_index[tuple(d)])
        return tuple(out)

    # basic data

    @property
    def gram(self) -> Matrix:
        return la.identity(self.ambient_dim)

    @property
    def simple_vectors(self) -> Tuple[Vec, ...]:
        return self.roots[: self.rank]

    @property
    def positive(self) -> range:
        return range(self.npos)

    def __len__(self) -> int:
        return len(self.roots)

    def __repr__(self) -> str:
        return f"RootSystem({self.ctype})"

    def root_index(self, v: Sequence) -> int:
        try:
            return self.index[tuple(Fraction(x) for x in v)]
        except KeyError:
            raise NotARoot(f"{tuple(map(str, v))} is not a root of {self.ctype}") from None

    def in_span(self, v: Sequence) -> bool:
        return all(la.dot(c, v) == 0 for c in self.complement)

    def coroot_pairings(self, v: Sequence) -> Vec:
        """``2<v, alpha_j>/<alpha_j, alpha_j>`` for each simple root."""
        return tuple(2 * la.dot(v, a) / la.dot(a, a) for a in self.simple_vectors)

    def root_coordinates(self, v: Sequence) -> Vec:
        """Coordinates of v (assumed in the span of the roots) on the simple roots."""
        full = la.mat_vec(self._basis_inv, v)
        return full[: self.rank]

    def from_root_coordinates(self, x: Sequence) -> Vec:
        return self._from_coords(x, self.simple_vectors)

    # maps and permutations

    def permutation(self, phi: OrthoMap) -> Perm:
        """Root permutation induced by ``phi``; raises if phi does not preserve Δ."""
        out = []
        for r in self.roots:
            img = la.mat_vec(phi.matrix, r)
            j = self.index.get(img)
            if j is None:
                raise NotAnAutomorphism(f"map sends a root of {self.ctype} outside Δ")
            out.append(j)
        return tuple(out)

    def map_from_simple_images(self, images: Sequence[Sequence],
                               off_span: Optional[Sequence[Sequence]] = None) -> OrthoMap:
        """The linear map sending alpha_i to images[i].

        Off span(Δ) it is the identity, or sends the i-th complement basis
        vector to ``off_span[i]`` when given.
        """
        cols = list(images) + list(self.complement if off_span is None else off_span)
        return OrthoMap(la.mat_mul(la.from_columns(cols), self._basis_inv))

    def map_from_permutation(self, perm: Perm) -> OrthoMap:
        return self.map_from_simple_images([self.roots[perm[i]] for i in self.simple])

    def root_matrix(self, perm: Perm) -> Tuple[Tuple[int, ...], ...]:
        """Integer matrix of a root permutation on simple-root coordinates."""
        cols = [self.coords[perm[i]] for i in self.simple]
        return tuple(tuple(col[r] for col in cols) for r in range(self.rank))

    def reflection_permutation(self, k: int) -> Perm:
        if k < self.rank:
            return self.simple_reflections[k]
        a = self.roots[k]
        aa = la.dot(a, a)
        out = []
        for r in self.roots:
            img = la.sub(r, la.scale(2 * la.dot(r, a) / aa, a))
            out.append(self.index[img])
        return tuple(out)

    def word_permutation(self, word: Sequence[int]) -> Perm:
        """``s_{w[-1]} ∘ ... ∘ s_{w[0]}`` as a root permutation."""
        p: Perm = tuple(range(len(self.roots)))
        for i in word:
            p = compose(self.simple_reflections[i], p)
        return p

    def walk_to_dominant(self, pairings: Sequence) -> List[int]:
        """Word of simple reflections moving a vector to the dominant chamber.

        ``pairings`` are the coroot pairings of the vector; the word ``w``
        returned satisfies ``word_permutation(w)`` applied to the vector is
        dominant.
        """
        d = list(pairings)
        a = self.cartan
        word = []
        while True:
            i = next((j for j, x in enumerate(d) if x < 0), None)
            if i is None:
                return word
            di = d[i]
            for j in range(self.rank):
                if a[i][j]:
                    d[j] -= di * a[i][j]
            word.append(i)

    def to_standard(self, basis: Sequence[int]) -> Perm:
        """Weyl element (as permutation) sending the fundamental system to Π."""
        return _to_standard(self, tuple(basis))

    def _to_standard(self, basis: Tuple[int, ...]) -> Perm:
        if len(basis) != self.rank or len(set(basis)) != self.rank:
            raise NotAFundamentalSystem("wrong number of roots")
        # v with <v, b> = 1 for every b in basis lies in the chamber of the
        # basis; the walk only needs its coroot pairings up to a positive factor
        l = self.rank
        g = self.gram_int
        c = [self.coords[b] for b in basis]
        cg = [tuple(sum(row[k] * g[k][j] for k in range(l)) for j in range(l)) for row in c]
        gram_x = [[sum(cg[m][j] * c[n][j] for j in range(l)) for n in range(l)] for m in range(l)]
        try:
            x = la.integral(la.solve(gram_x, [1] * l))
        except ZeroDivisionError:
            raise NotAFundamentalSystem("roots are linearly dependent") from None
        pair = [sum(x[k] * cg[k][j] for k in range(l)) for j in range(l)]
        norms = [g[j][j] for j in range(l)]
        m = lcm(*norms)
        d = [2 * pair[j] * (m // norms[j]) for j in range(l)]
        s = self.word_permutation(self.walk_to_dominant(d))
        if sorted(s[b] for b in basis) != list(self.simple):
            raise NotAFundamentalSystem("roots do not form a fundamental system")
        return s


@lru_cache(maxsize=1 << 16)
def _to_standard(rs: RootSystem, basis: Tuple[int, ...]) -> Perm:
    return rs._to_standard(basis)


@lru_cache(maxsize=None)
def _build(ctype: CartanType) -> RootSystem:
    return RootSystem(ctype)


def build_root_system(ctype) -> RootSystem:
    """Root system of the given Cartan type (``CartanType`` or ``"D4"``)."""
    if isinstance(ctype, str):
        ctype = CartanType.parse(ctype)
    return _build(ctype)


# -- operations ----------------------------------------------------------------


def reflect(rs: RootSystem, alpha: Sequence, v: Sequence) -> Vec:
    """Reflection of v in the hyperplane orthogonal to the root alpha."""
    a = rs.roots[rs.root_index(alpha)]
    return la.sub(tuple(map(Fraction, v)), la.scale(2 * la.dot(a, v) / la.dot(a, a), a))


def reflection(rs: RootSystem, alpha: Sequence) -> OrthoMap:
    a = rs.roots[rs.root_index(alpha)]
    aa = la.dot(a, a)
    n = rs.ambient_dim
    return OrthoMap(tuple(tuple(Fraction(int(i == j)) - 2 * a[i] * a[j] / aa for j in range(n))
                          for i in range(n)))


def fundamental_from_regular(rs: RootSystem, v: Sequence) -> FundamentalSystem:
    """Simple roots of the positive system ``{α : <α, v> > 0}``.

    The result is ordered so that its i-th entry is the image of alpha_i under
    the Weyl element carrying Π onto it; that keeps node labels of diagrams
    comparable between fundamental systems.
    """
    v = tuple(map(Fraction, v))
    if len(v) != rs.ambient_dim:
        raise RootSystemError("vector has the wrong dimension")
    p = [la.dot(v, a) for a in rs.simple_vectors]
    for c in rs.coords[: rs.npos]:
        if sum(x * y for x, y in zip(c, p)) == 0:
            raise NotRegular("vector is orthogonal to a root")
    d = [2 * p[j] / rs.gram_simple[j][j] for j in range(rs.rank)]
    s = rs.word_permutation(rs.walk_to_dominant(d))
    s_inv = invert(s)
    return tuple(s_inv[i] for i in rs.simple)


def is_fundamental_system(rs: RootSystem, basis: Sequence[int]) -> bool:
    try:
        rs.to_standard(basis)
    except NotAFundamentalSystem:
        return False
    return True


def ordered_fundamental(rs: RootSystem, basis: Sequence[int]) -> FundamentalSystem:
    """Order a fundamental system compatibly with Π (see fundamental_from_regular)."""
    s_inv = invert(rs.to_standard(basis))
    return tuple(s_inv[i] for i in rs.simple)


def positive_roots(rs: RootSystem, basis: Sequence[int]) -> frozenset:
    s_inv = invert(rs.to_standard(basis))
    return frozenset(s_inv[i] for i in range(rs.npos))


def weyl_permutation_between(rs: RootSystem, src: Sequence[int], dst: Sequence[int]) -> Perm:
    return compose(invert(rs.to_standard(dst)), rs.to_standard(src))


def weyl_map_between(rs: RootSystem, src: Sequence[int], dst: Sequence[int]) -> OrthoMap:
    """The unique Weyl group element w with w(src) = dst (as sets)."""
    return rs.map_from_permutation(weyl_permutation_between(rs, src, dst))


def is_weyl_element(rs: RootSystem, phi: OrthoMap) -> bool:
    """Whether the Δ-automorphism phi lies in the Weyl group.

    phi maps Π to another fundamental system; composing with the Weyl element
    that brings it back gives an automorphism fixing Π as a set, and phi is in
    W exactly when that composite fixes every simple root.
    """
    perm = rs.permutation(phi)
    image = [perm[i] for i in rs.simple]
    back = rs.to_standard(image)
    return all(back[perm[i]] == i for i in rs.simple)


def weyl_permutations(rs: RootSystem, cap: int = DEFAULT_WEYL_CAP,
                      allow_e8: bool = False) -> List[Perm]:
    """All Weyl group elements as root permutations, breadth first from 1."""
    order = rs.ctype.weyl_order
    if order > cap:
        raise WeylCapExceeded(f"|W({rs.ctype})| = {order} exceeds the cap {cap}")
    if rs.ctype == CartanType("E", 8) and not allow_e8:
        raise WeylCapExceeded("enumerating W(E8) needs allow_e8=True")
    start: Perm = tuple(range(len(rs.roots)))
    seen = {start}
    out = [start]
    todo = deque([start])
    gens = rs.simple_reflections
    while todo:
        p = todo.popleft()
        for g in gens:
            q = tuple(g[x] for x in p)
            if q not in seen:
                seen.add(q)
                out.append(q)
                todo.append(q)
    return out


def enumerate_weyl(rs: RootSystem, cap: int = DEFAULT_WEYL_CAP,
                   allow_e8: bool = False) -> List[OrthoMap]:
    """Every Weyl group element as a matrix, sorted by matrix entries."""
    maps = [rs.map_from_permutation(p) for p in weyl_permutations(rs, cap, allow_e8)]
    maps.sort(key=lambda m: m.matrix)
    return maps


def cartan_isomorphisms(a: Sequence[Sequence[int]],
                        b: Sequence[Sequence[int]]) -> Iterator[Tuple[int, ...]]:
    """Node bijections f with b[f(i)][f(j)] == a[i][j], in lexicographic order."""
    n = len(a)
    if len(b) != n:
        return
    image: List[int] = []
    used = [False] * n

    def extend():
        i = len(image)
        if i == n:
            yield tuple(image)
            return
        for j in range(n):
            if used[j] or b[j][j] != a[i][i]:
                continue
            if all(b[j][image[k]] == a[i][k] and b[image[k]][j] == a[k][i] for k in range(i)):
                used[j] = True
                image.append(j)
                yield from extend()
                image.pop()
                used[j] = False

    yield from extend()


def diagram_automorphism_perms(rs: RootSystem) -> List[Tuple[int, ...]]:
    """Node permutations preserving the Cartan matrix; identity first."""
    return list(cartan_isomorphisms(rs.cartan, rs.cartan))


def diagram_automorphism(rs: RootSystem, nodes: Sequence[int]) -> OrthoMap:
    """The isometry sending alpha_i to alpha_{nodes[i]}."""
    return rs.map_from_simple_images([rs.roots[j] for j in nodes])


def diagram_permutation(rs: RootSystem, nodes: Sequence[int]) -> Perm:
    """Root permutation of the diagram automorphism alpha_i -> alpha_{nodes[i]}."""
    out = []
    for c in rs.coords:
        d = [0] * rs.rank
        for i, x in enumerate(c):
            d[nodes[i]] = x
        out.append(rs.coord_index[tuple(d)])
    return tuple(out)


def dynkin_automorphisms(rs: RootSystem) -> List[OrthoMap]:
    return [diagram_automorphism(rs, p) for p in diagram_automorphism_perms(rs)]


def permutation_order(perm: Perm, cap: Optional[int] = None) -> int:
    """Smallest k >= 1 with perm^k = 1 (raises past ``cap``)."""
    ident = tuple(range(len(perm)))
    p = perm
    k = 1
    while p != ident:
        k += 1
        if cap is not None and k > cap:
            raise RootSystemError(f"order exceeds {cap}")
        p = compose(perm, p)
    return k


# -- serialization ---------------------------------------------------------------


def root_system_to_json(rs: RootSystem) -> dict:
    return {
        "type": rs.ctype.series,
        "rank": rs.rank,
        "roots": [[la.format_scalar(x) for x in r] for r in rs.roots],
        "simple": list(rs.simple),
    }


def root_system_from_json(data: dict) -> RootSystem:
    rs = build_root_system(CartanType(data["type"], int(data["rank"])))
    roots = [tuple(la.parse_scalar(x) for x in r) for r in data.get("roots", [])]
    if roots and set(roots) != set(rs.roots):
        raise RootSystemError("roots do not match the standard realization")
    if "simple" in data:
        simple = [roots[i] if roots else rs.roots[i] for i in data["simple"]]
        if tuple(rs.root_index(v) for v in simple) != rs.simple:
            raise RootSystemError("simple roots do not match the standard realization")
    return rs

"""Involutive root-system automorphisms (σ-systems) and Satake diagrams."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import List, Optional, Sequence, Tuple

from . import linalg as la
from .linalg import Vec
from .rootsys import (
    CartanType,
    FundamentalSystem,
    OrthoMap,
    Perm,
    RootSystem,
    RootSystemError,
    build_root_system,
    cartan_isomorphisms,
    ordered_fundamental,
    positive_roots,
)


class SigmaError(RootSystemError):
    pass


class NotInvolutive(SigmaError):
    pass


class NotIsometric(SigmaError):
    pass


class NotRootPreserving(SigmaError):
    pass


class NotNormal(SigmaError):
    pass


class NotSigmaFundamental(SigmaError):
    pass


class InadmissibleDiagram(SigmaError):
    pass


# -- σ-systems -----------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class SigmaSystem:
    """A root system together with an involutive isometry preserving Δ.

    Build through :func:`make_sigma`, which validates the map.  ``perm`` is
    the induced permutation of root indices.
    """

    rs: RootSystem
    sigma: OrthoMap
    perm: Perm = field(repr=False)

    def __eq__(self, other):
        return (isinstance(other, SigmaSystem) and self.rs is other.rs
                and self.perm == other.perm)

    def __hash__(self):
        return hash((self.rs.ctype, self.perm))


def _on_span(rs: RootSystem, phi: OrthoMap) -> List[Vec]:
    return [phi(a) for a in rs.simple_vectors]


def make_sigma(rs: RootSystem, sigma: OrthoMap) -> SigmaSystem:
    """Validate sigma and wrap it; each failed condition has its own error."""
    if sigma.dim != rs.ambient_dim:
        raise SigmaError("matrix has the wrong size")
    images = _on_span(rs, sigma)
    if [sigma(v) for v in images] != list(rs.simple_vectors):
        raise NotInvolutive("sigma^2 is not the identity on span(Δ)")
    for i, u in enumerate(images):
        for j, v in enumerate(images):
            if la.dot(u, v) != rs.gram_simple[i][j]:
                raise NotIsometric("sigma does not preserve the inner product")
    try:
        perm = rs.permutation(sigma)
    except RootSystemError:
        raise NotRootPreserving("sigma does not map Δ onto Δ") from None
    return SigmaSystem(rs, sigma, perm)


def sigma_from_permutation(rs: RootSystem, perm: Perm) -> SigmaSystem:
    return make_sigma(rs, rs.map_from_permutation(perm))


def is_normal(ss: SigmaSystem) -> bool:
    """True when σ(α) − α is never a root."""
    return normality_witness(ss) is None


def normality_witness(ss: SigmaSystem) -> Optional[int]:
    rs = ss.rs
    for i, c in enumerate(rs.coords):
        d = tuple(x - y for x, y in zip(rs.coords[ss.perm[i]], c))
        if d in rs.coord_index:
            return i
    return None


def delta0(ss: SigmaSystem) -> frozenset:
    """Indices of the roots with σ(α) = −α."""
    return frozenset(i for i, j in enumerate(ss.perm) if j == ss.rs.neg[i])


def eigenspace(rs: RootSystem, perm: Perm, sign: int = 1) -> la.Matrix:
    """Basis (simple-root coordinates, RREF) of the ±1 eigenspace on span(Δ)."""
    m = rs.root_matrix(perm)
    l = rs.rank
    shifted = [[Fraction(m[r][c] - (sign if r == c else 0)) for c in range(l)] for r in range(l)]
    return la.canonical_subspace(la.nullspace(shifted, l))


def fixed_space(ss: SigmaSystem) -> la.Matrix:
    return eigenspace(ss.rs, ss.perm, 1)


def anti_space(ss: SigmaSystem) -> la.Matrix:
    return eigenspace(ss.rs, ss.perm, -1)


def sigma_rank(ss: SigmaSystem) -> int:
    """dim 𝔱^σ, the real rank of the associated symmetric pair."""
    return len(fixed_space(ss))


def projection_image(ss: SigmaSystem, i: int) -> Vec:
    """(α + σα)/2 in ambient coordinates."""
    r = ss.rs.roots
    return la.scale(Fraction(1, 2), la.add(r[i], r[ss.perm[i]]))


def is_sigma_fundamental(ss: SigmaSystem, basis: Sequence[int]) -> bool:
    pos = positive_roots(ss.rs, basis)
    zero = delta0(ss)
    return all(ss.perm[i] in pos for i in pos if i not in zero)


def _lex_positive(rs: RootSystem, functionals: Sequence[Sequence]) -> List[int]:
    """Roots whose first nonzero functional value is positive."""
    g = rs.gram_int
    # functionals are in simple-root coordinates and pair through the Gram
    # matrix; positive rescaling keeps every sign and lets this run on ints
    gf = []
    for f in functionals:
        f = la.integral(f)
        gf.append(tuple(sum(g[j][k] * f[k] for k in range(rs.rank)) for j in range(rs.rank)))
    out = []
    for i, c in enumerate(rs.coords):
        for f in gf:
            x = sum(a * b for a, b in zip(c, f))
            if x:
                if x > 0:
                    out.append(i)
                break
        else:
            raise SigmaError("functionals do not separate the roots")
    return out


def simple_of_positive(rs: RootSystem, positive: Sequence[int]) -> List[int]:
    """The indecomposable roots of a positive system."""
    pos = [rs.coords[i] for i in positive]
    pos_set = set(pos)
    simple = []
    for i, c in zip(positive, pos):
        decomposable = any(
            tuple(x - y for x, y in zip(c, d)) in pos_set for d in pos if d != c)
        if not decomposable:
            simple.append(i)
    return simple


def find_sigma_fundamental(ss: SigmaSystem) -> FundamentalSystem:
    """A fundamental system Π with σ(Δ⁺ − Δ₀) ⊂ Δ⁺.

    Positivity is the lexicographic order for a basis of 𝔱^σ followed by a
    basis of 𝔱^{−σ}: a root outside Δ₀ has nonzero projection onto 𝔱^σ and σ
    does not change that projection, so σ keeps it on the same side.
    """
    if not is_normal(ss):
        raise NotNormal("σ-fundamental systems need a normal σ")
    rs = ss.rs
    functionals = list(fixed_space(ss)) + list(anti_space(ss))
    positive = _lex_positive(rs, functionals)
    pi = ordered_fundamental(rs, simple_of_positive(rs, positive))
    assert is_sigma_fundamental(ss, pi)
    return pi


# -- Satake diagrams -----------------------------------------------------------


@dataclass(frozen=True)
class SatakeDiagram:
    """Dynkin diagram of a Cartan type with black nodes and arrows.

    Nodes are 0-based Bourbaki labels.  ``arrows`` lists the pairs (i, j),
    i < j, exchanged by the involution p of white nodes.
    """

    ctype: CartanType
    black: Tuple[int, ...]
    arrows: Tuple[Tuple[int, int], ...] = ()

    def __post_init__(self):
        l = self.ctype.rank
        black = tuple(sorted(set(self.black)))
        arrows = tuple(sorted(tuple(sorted(a)) for a in self.arrows))
        object.__setattr__(self, "black", black)
        object.__setattr__(self, "arrows", arrows)
        used = [x for a in arrows for x in a]
        if any(not 0 <= x < l for x in list(black) + used):
            raise InadmissibleDiagram("node index out of range")
        if len(set(used)) != len(used) or any(a == b for a, b in arrows):
            raise InadmissibleDiagram("arrows must pair distinct nodes disjointly")
        if set(used) & set(black):
            raise InadmissibleDiagram("arrows must join white nodes")

    @property
    def rank(self) -> int:
        return self.ctype.rank

    @property
    def white(self) -> Tuple[int, ...]:
        b = set(self.black)
        return tuple(i for i in range(self.rank) if i not in b)

    @property
    def p(self) -> Tuple[int, ...]:
        """p as a full node permutation, identity on black nodes."""
        out = list(range(self.rank))
        for i, j in self.arrows:
            out[i], out[j] = j, i
        return tuple(out)

    def act(self, nodes: Sequence[int]) -> "SatakeDiagram":
        """Image under the diagram automorphism i -> nodes[i]."""
        return SatakeDiagram(self.ctype, tuple(nodes[i] for i in self.black),
                             tuple((nodes[i], nodes[j]) for i, j in self.arrows))

    def real_rank(self) -> int:
        """Number of white nodes fixed by p plus the number of arrows."""
        return len(self.white) - len(self.arrows)

    def encoding(self) -> tuple:
        return (self.black, self.arrows)

    def to_json(self) -> dict:
        return {"type": self.ctype.series, "rank": self.rank,
                "black": list(self.black), "arrows": [list(a) for a in self.arrows]}

    @classmethod
    def from_json(cls, data: dict) -> "SatakeDiagram":
        return cls(CartanType(data["type"], int(data["rank"])),
                   tuple(data.get("black", ())),
                   tuple(tuple(a) for a in data.get("arrows", ())))


def satake_diagram(ss: SigmaSystem, basis: Optional[Sequence[int]] = None) -> SatakeDiagram:
    """Satake diagram of σ with respect to a σ-fundamental system.

    Defaults to the fundamental system produced by find_sigma_fundamental.
    """
    rs = ss.rs
    if basis is None:
        basis = find_sigma_fundamental(ss)
    basis = tuple(basis)
    if not is_sigma_fundamental(ss, basis):
        raise NotSigmaFundamental("fundamental system is not σ-fundamental")
    s = rs.to_standard(basis)
    # coordinates on basis[i]: apply s, then read standard coordinate of s(basis[i])
    label = [s[b] for b in basis]

    def coords(k):
        c = rs.coords[s[k]]
        return [c[label[i]] for i in range(rs.rank)]

    black = [i for i, b in enumerate(basis) if ss.perm[b] == rs.neg[b]]
    bset = set(black)
    p = {}
    for i, b in enumerate(basis):
        if i in bset:
            continue
        c = coords(ss.perm[b])
        white_part = [(j, x) for j, x in enumerate(c) if j not in bset and x != 0]
        if len(white_part) != 1 or white_part[0][1] != 1:
            raise NotSigmaFundamental("σ(α) has an unexpected white component")
        p[i] = white_part[0][0]
    if any(p[p[i]] != i for i in p):
        raise NotSigmaFundamental("white-node map is not an involution")
    arrows = tuple((i, j) for i, j in p.items() if i < j)
    return SatakeDiagram(rs.ctype, tuple(black), arrows)


def _sigma_matrix_from_diagram(rs: RootSystem, sd: SatakeDiagram) -> OrthoMap:
    simple = rs.simple_vectors
    minus = [la.sub(simple[i], simple[j]) for i, j in sd.arrows]
    minus += [simple[k] for k in sd.black]
    n = rs.ambient_dim
    proj = la.projection(minus, la.identity(n)) if minus else tuple(la.zero(n) for _ in range(n))
    ident = la.identity(n)
    return OrthoMap(tuple(tuple(ident[r][c] - 2 * proj[r][c] for c in range(n)) for r in range(n)))


def reconstruct_sigma(sd: SatakeDiagram) -> SigmaSystem:
    """The normal σ whose Satake diagram on Π is ``sd``.

    𝔱^{−σ} is spanned by α − p(α) over the arrows together with the black
    simple roots; σ is −1 there and +1 on the rest of span(Δ).  The candidate
    is then checked: it has to preserve Δ, be normal and reproduce ``sd``.
    """
    return _reconstruct(sd)


@lru_cache(maxsize=4096)
def _reconstruct(sd: SatakeDiagram) -> SigmaSystem:
    rs = build_root_system(sd.ctype)
    try:
        ss = make_sigma(rs, _sigma_matrix_from_diagram(rs, sd))
    except SigmaError as exc:
        raise InadmissibleDiagram(f"{sd}: {exc}") from None
    if not is_normal(ss):
        raise InadmissibleDiagram(f"{sd}: reconstructed σ is not normal")
    try:
        back = satake_diagram(ss, rs.simple)
    except SigmaError as exc:
        raise InadmissibleDiagram(f"{sd}: {exc}") from None
    if back != sd:
        raise InadmissibleDiagram(f"{sd}: reconstruction gives {back}")
    return ss


def is_admissible(sd: SatakeDiagram) -> bool:
    try:
        reconstruct_sigma(sd)
    except InadmissibleDiagram:
        return False
    return True


def satake_isomorphisms(s1: SatakeDiagram, s2: SatakeDiagram):
    """Node bijections carrying s1 onto s2 (edges, black nodes and arrows)."""
    a = build_root_system(s1.ctype).cartan
    b = build_root_system(s2.ctype).cartan
    if len(s1.black) != len(s2.black) or len(s1.arrows) != len(s2.arrows):
        return
    b2 = set(s2.black)
    p1, p2 = s1.p, s2.p
    for f in cartan_isomorphisms(a, b):
        if all(f[i] in b2 for i in s1.black) and all(f[p1[i]] == p2[f[i]] for i in range(len(f))):
            yield f


def satake_isomorphic(s1: SatakeDiagram, s2: SatakeDiagram) -> Optional[Tuple[int, ...]]:
    """A node bijection witnessing s1 ≅ s2, or None."""
    return next(satake_isomorphisms(s1, s2), None)


# -- restricted roots -------------------------------------------------------------


@dataclass(frozen=True)
class RestrictedRoots:
    """Σ = pr(Δ − Δ₀) with multiplicities; vectors in ambient coordinates."""

    roots: Tuple[Vec, ...]
    multiplicities: Tuple[int, ...]
    type: str

    def multiplicity(self, v: Sequence) -> int:
        return self.multiplicities[self.roots.index(tuple(map(Fraction, v)))]


def restricted_roots(ss: SigmaSystem) -> RestrictedRoots:
    zero = delta0(ss)
    counts: Counter = Counter(projection_image(ss, i) for i in range(len(ss.rs.roots))
                              if i not in zero)
    roots = tuple(sorted(counts, reverse=True))
    mults = tuple(counts[r] for r in roots)
    _check_root_axioms(roots)
    return RestrictedRoots(roots, mults, classify_root_set(roots))


def _check_root_axioms(roots: Sequence[Vec]) -> None:
    rset = set(roots)
    for a in roots:
        aa = la.dot(a, a)
        for b in roots:
            n = 2 * la.dot(a, b) / aa
            if n.denominator != 1:
                raise SigmaError("restricted roots violate integrality")
            if la.sub(b, la.scale(n, a)) not in rset:
                raise SigmaError("restricted roots are not closed under reflections")


def _components(roots: Sequence[Vec]) -> List[List[Vec]]:
    comps: List[List[Vec]] = []
    for r in roots:
        linked = [c for c in comps if any(la.dot(r, x) != 0 for x in c)]
        merged = [r]
        for c in linked:
            merged += c
            comps.remove(c)
        comps.append(merged)
    return comps


def _classify_irreducible(roots: Sequence[Vec]) -> str:
    rset = set(roots)
    if any(la.scale(2, r) in rset for r in roots):
        reduced = [r for r in roots if la.scale(Fraction(1, 2), r) not in rset]
        return "BC" + str(la.rank(reduced))
    r = la.rank(roots)
    n = len(roots)
    lengths = Counter(la.dot(x, x) for x in roots)
    if len(lengths) == 1:
        if n == r * (r + 1):
            return f"A{r}"
        if n == 2 * r * (r - 1):
            return f"D{r}"
        return {72: "E6", 126: "E7", 240: "E8"}[n]
    if n == 48 and r == 4:
        return "F4"
    if n == 12 and r == 2:
        return "G2"
    long_count = lengths[max(lengths)]
    if r == 2 or long_count == 2 * r * (r - 1):
        return f"B{r}"
    return f"C{r}"


def classify_root_set(roots: Sequence[Vec]) -> str:
    """Cartan type of a (possibly non-reduced) root system, e.g. ``"BC2"``."""
    if not roots:
        return "0"
    comps = sorted(_classify_irreducible(c) for c in _components(list(roots)))
    return "+".join(comps)

"""Pairs of σ-systems on one root system, their double Satake diagrams and invariants."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from itertools import combinations
from typing import Optional, Sequence, Tuple

from . import linalg as la
from .linalg import Vec
from .rootsys import (
    DEFAULT_WEYL_CAP,
    CartanType,
    FundamentalSystem,
    OrthoMap,
    Perm,
    RootSystem,
    WeylCapExceeded,
    build_root_system,
    cartan_isomorphisms,
    compose,
    invert,
    ordered_fundamental,
    permutation_order,
    weyl_permutation_between,
)
from .sigma import (
    NotSigmaFundamental,
    SatakeDiagram,
    SigmaSystem,
    find_sigma_fundamental,
    fixed_space,
    is_sigma_fundamental,
    make_sigma,
    reconstruct_sigma,
    satake_diagram,
)

ORDER_CAP = 60


@dataclass(frozen=True, eq=False)
class DoubleSigmaSystem:
    """(Δ, σ₁, σ₂): two σ-systems sharing a root system."""

    rs: RootSystem
    sigma1: SigmaSystem
    sigma2: SigmaSystem

    def __eq__(self, other):
        return (isinstance(other, DoubleSigmaSystem) and self.sigma1 == other.sigma1
                and self.sigma2 == other.sigma2)

    def __hash__(self):
        return hash((self.sigma1, self.sigma2))

    def swap(self) -> "DoubleSigmaSystem":
        return DoubleSigmaSystem(self.rs, self.sigma2, self.sigma1)


def make_double(rs: RootSystem, sigma1: OrthoMap, sigma2: OrthoMap) -> DoubleSigmaSystem:
    return DoubleSigmaSystem(rs, make_sigma(rs, sigma1), make_sigma(rs, sigma2))


def conjugate(ss: SigmaSystem, w: Perm) -> SigmaSystem:
    """w σ w⁻¹ for a root permutation w (a Weyl or diagram automorphism)."""
    rs = ss.rs
    perm = compose(w, compose(ss.perm, invert(w)))
    # w fixes the orthogonal complement of span(Δ), so there wσw⁻¹ acts as σ
    off = [ss.sigma(c) for c in rs.complement]
    matrix = rs.map_from_simple_images([rs.roots[perm[i]] for i in rs.simple], off)
    return SigmaSystem(rs, matrix, perm)


@dataclass(frozen=True)
class DoubleSatakeDiagram:
    """Two Satake diagrams drawn on the same Dynkin diagram."""

    s1: SatakeDiagram
    s2: SatakeDiagram

    def __post_init__(self):
        if self.s1.ctype != self.s2.ctype:
            raise ValueError("both diagrams must have the same Cartan type")

    @property
    def ctype(self) -> CartanType:
        return self.s1.ctype

    def act(self, nodes: Sequence[int]) -> "DoubleSatakeDiagram":
        return DoubleSatakeDiagram(self.s1.act(nodes), self.s2.act(nodes))

    def swap(self) -> "DoubleSatakeDiagram":
        return DoubleSatakeDiagram(self.s2, self.s1)

    def encoding(self) -> tuple:
        return (self.s1.encoding(), self.s2.encoding())

    def to_json(self) -> dict:
        def part(s):
            return {"black": list(s.black), "arrows": [list(a) for a in s.arrows]}
        return {"type": self.ctype.series, "rank": self.ctype.rank,
                "s1": part(self.s1), "s2": part(self.s2)}

    @classmethod
    def from_json(cls, data: dict) -> "DoubleSatakeDiagram":
        ct = CartanType(data["type"], int(data["rank"]))

        def part(d):
            return SatakeDiagram(ct, tuple(d.get("black", ())),
                                 tuple(tuple(a) for a in d.get("arrows", ())))
        return cls(part(data["s1"]), part(data["s2"]))


def quasi_canonicalize(ds: DoubleSigmaSystem):
    """Conjugate σ₂ by a Weyl element so one Π is σ₁- and σ₂-fundamental.

    Returns ``(ds', Π, w)`` with ds' = (Δ, σ₁, wσ₂w⁻¹) and w as an OrthoMap.
    """
    rs = ds.rs
    pi1 = find_sigma_fundamental(ds.sigma1)
    pi2 = find_sigma_fundamental(ds.sigma2)
    w = weyl_permutation_between(rs, pi2, pi1)
    out = DoubleSigmaSystem(rs, ds.sigma1, conjugate(ds.sigma2, w))
    return out, pi1, rs.map_from_permutation(w)


def is_canonical_wrt(ds: DoubleSigmaSystem, basis: Sequence[int]) -> bool:
    return is_sigma_fundamental(ds.sigma1, basis) and is_sigma_fundamental(ds.sigma2, basis)


def double_satake(ds: DoubleSigmaSystem, basis: Sequence[int]) -> DoubleSatakeDiagram:
    if not is_canonical_wrt(ds, basis):
        raise NotSigmaFundamental("fundamental system is not fundamental for both involutions")
    return DoubleSatakeDiagram(satake_diagram(ds.sigma1, basis), satake_diagram(ds.sigma2, basis))


def canonical_diagram(ds: DoubleSigmaSystem) -> DoubleSatakeDiagram:
    can, pi, _ = quasi_canonicalize(ds)
    return double_satake(can, pi)


def double_satake_isomorphisms(d1: DoubleSatakeDiagram, d2: DoubleSatakeDiagram):
    """Node bijections ψ with ψ·S₁ = S₁' and ψ·S₂ = S₂' simultaneously."""
    a = build_root_system(d1.ctype).cartan
    b = build_root_system(d2.ctype).cartan
    for f in cartan_isomorphisms(a, b):
        if d1.s1.act(f) == _recast(d2.s1, d1.ctype) and d1.s2.act(f) == _recast(d2.s2, d1.ctype):
            yield f


def _recast(sd: SatakeDiagram, ct: CartanType) -> SatakeDiagram:
    # diagrams of isomorphic but differently named types (A3/D3, B2/C2) are
    # compared as node data only
    return sd if sd.ctype == ct else SatakeDiagram(ct, sd.black, sd.arrows)


def double_satake_isomorphic(d1: DoubleSatakeDiagram, d2: DoubleSatakeDiagram) -> Optional[Tuple[int, ...]]:
    return next(double_satake_isomorphisms(d1, d2), None)


def from_double_satake(dd: DoubleSatakeDiagram) -> DoubleSigmaSystem:
    """The canonical double σ-system (with Π jointly fundamental) of a diagram."""
    ss1 = reconstruct_sigma(dd.s1)
    ss2 = reconstruct_sigma(dd.s2)
    return DoubleSigmaSystem(ss1.rs, ss1, ss2)


def equivalent(ds1: DoubleSigmaSystem, ds2: DoubleSigmaSystem) -> bool:
    """Equivalence of double σ-systems through their canonical double Satake diagrams."""
    return double_satake_isomorphic(canonical_diagram(ds1), canonical_diagram(ds2)) is not None


# -- invariants ---------------------------------------------------------------


def joint_fixed_space(ds: DoubleSigmaSystem) -> la.Matrix:
    """𝔱^{σ₁} ∩ 𝔱^{σ₂} inside span(Δ), in simple-root coordinates."""
    return la.intersect(fixed_space(ds.sigma1), fixed_space(ds.sigma2), ds.rs.rank)


def class_rank(ds: DoubleSigmaSystem) -> int:
    can, _, _ = quasi_canonicalize(ds)
    return len(joint_fixed_space(can))


def class_order(ds: DoubleSigmaSystem) -> int:
    """Order of σ₁σ₂' on span(Δ) after quasi-canonicalization."""
    can, _, _ = quasi_canonicalize(ds)
    return permutation_order(compose(can.sigma1.perm, can.sigma2.perm), cap=ORDER_CAP)


def class_invariants(ds: DoubleSigmaSystem) -> Tuple[DoubleSatakeDiagram, int, int]:
    """Canonical double Satake diagram, rank and order from one quasi-canonical form."""
    can, pi, _ = quasi_canonicalize(ds)
    order = permutation_order(compose(can.sigma1.perm, can.sigma2.perm), cap=ORDER_CAP)
    return double_satake(can, pi), len(joint_fixed_space(can)), order


def _reflect_coords(rs: RootSystem, i: int, x: Sequence) -> Vec:
    a = rs.cartan
    k = sum(x[j] * a[j][i] for j in range(rs.rank))
    if not k:
        return tuple(x)
    y = list(x)
    y[i] -= k
    return tuple(y)


def weyl_max_rank(ds: DoubleSigmaSystem, cap: int = DEFAULT_WEYL_CAP) -> int:
    """max over s in W of dim(𝔱^{σ₁} ∩ s𝔱^{σ₂}), by exhaustive search.

    The set {s𝔱^{σ₂} : s ∈ W} is traversed as an orbit under the simple
    reflections, which visits exactly the same subspaces as running over
    every group element.
    """
    rs = ds.rs
    order = rs.ctype.weyl_order
    if order > cap:
        raise WeylCapExceeded(f"|W({rs.ctype})| = {order} exceeds the cap {cap}")
    t1 = fixed_space(ds.sigma1)
    t2 = fixed_space(ds.sigma2)
    bound = min(len(t1), len(t2))
    best = -1
    seen = {t2}
    todo = deque([t2])
    while todo:
        u = todo.popleft()
        d = len(t1) + len(u) - la.rank(list(t1) + list(u)) if u and t1 else 0
        if d > best:
            best = d
            if best == bound:
                break
        for i in range(rs.rank):
            v = la.canonical_subspace([_reflect_coords(rs, i, x) for x in u])
            if v not in seen:
                seen.add(v)
                todo.append(v)
    return best


# -- cores --------------------------------------------------------------------


@dataclass(frozen=True)
class CoreData:
    """Projection data of a quasi-canonical pair on its fundamental system.

    ``pr_coords[i]`` is pr(α_i) written on α_1 .. α_l of the fundamental
    system used and ``pr_images[i]`` is the same vector in ambient
    coordinates.  Node labels are 0-based.
    """

    basis: FundamentalSystem
    rank: int
    pi0: Tuple[int, ...]
    core: Tuple[int, ...]
    independent: bool
    pr_coords: Tuple[Vec, ...] = field(repr=False)
    pr_images: Tuple[Vec, ...] = field(repr=False)


def _in_standard_frame(ds: DoubleSigmaSystem, basis: Sequence[int]) -> DoubleSigmaSystem:
    s = ds.rs.to_standard(basis)
    return DoubleSigmaSystem(ds.rs, conjugate(ds.sigma1, s), conjugate(ds.sigma2, s))


def core_data(ds: DoubleSigmaSystem, basis: Optional[Sequence[int]] = None) -> CoreData:
    """Π₀, a minimal core Π* and the projections pr(α) for α in Π.

    pr is the orthogonal projection onto 𝔱^{σ₁} ∩ 𝔱^{σ₂}.  Π₀ collects the
    simple roots killed by pr; a core is a subset Π* of Π − Π₀ such that
    {α, p₁(α), p₂(α) : α ∈ Π*} covers Π − Π₀.  The search runs by size and
    then lexicographically, preferring a core whose projections are linearly
    independent.
    """
    rs = ds.rs
    if basis is None:
        ds, basis, _ = quasi_canonicalize(ds)
    basis = ordered_fundamental(rs, basis)
    if not is_canonical_wrt(ds, basis):
        raise NotSigmaFundamental("fundamental system is not fundamental for both involutions")
    std = _in_standard_frame(ds, basis)
    dd = double_satake(std, rs.simple)
    joint = joint_fixed_space(std)
    proj = la.projection(joint, rs.gram_simple)
    pr = tuple(tuple(proj[r][c] for r in range(rs.rank)) for c in range(rs.rank))
    ambient = tuple(_combine(rs, basis, x) for x in pr)

    pi0 = tuple(i for i in range(rs.rank) if la.is_zero(pr[i]))
    rest = [i for i in range(rs.rank) if i not in pi0]
    p1, p2 = dd.s1.p, dd.s2.p
    target = set(rest)
    core: Tuple[int, ...] = ()
    independent = not rest
    for k in range(1, len(rest) + 1):
        covers = [c for c in combinations(rest, k)
                  if {x for i in c for x in (i, p1[i], p2[i])} >= target]
        if covers:
            good = [c for c in covers if la.rank([pr[i] for i in c]) == k]
            core = good[0] if good else covers[0]
            independent = bool(good)
            break
    return CoreData(basis, len(joint), pi0, core, independent, pr, ambient)


def _combine(rs: RootSystem, basis: Sequence[int], x: Sequence) -> Vec:
    v = la.zero(rs.ambient_dim)
    for c, b in zip(x, basis):
        if c:
            v = la.add(v, la.scale(c, rs.roots[b]))
    return v

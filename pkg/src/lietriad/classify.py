"""Classification of involution pairs (g, θ₁, θ₂) through double Satake diagrams."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from . import __version__
from .catalog import (
    Algebra,
    CatalogError,
    InvolutionClass,
    find_class,
    involution_classes,
    parse_algebra,
    snapshot_hash,
)
from .double import (
    DoubleSatakeDiagram,
    DoubleSigmaSystem,
    class_invariants,
    double_satake_isomorphic,
    equivalent,
    from_double_satake,
    weyl_max_rank,
)
from .rootsys import (
    CartanType,
    build_root_system,
    compose,
    diagram_automorphism_perms,
)
from .sigma import SatakeDiagram

# Default parameter bounds for classification runs.
DEFAULT_BOUNDS = {"su": 8, "so": 12, "sp": 6}
EXCEPTIONAL = ("e6", "e7", "e8", "f4", "g2")


# -- diagram automorphisms with names -------------------------------------------


def named_automorphisms(ct: CartanType) -> List[Tuple[str, Tuple[int, ...]]]:
    """Aut(Π) as node permutations with display names, identity first.

    For D4 the order-3 rotation is κ: (α1, α2, α3, α4) -> (α4, α2, α1, α3)
    and τ swaps α3 and α4.  For the other types the nontrivial element (if
    any) is called τ.
    """
    perms = diagram_automorphism_perms(build_root_system(ct))
    ident = tuple(range(ct.rank))
    if ct == CartanType("D", 4):
        kappa = (3, 1, 0, 2)
        tau = (0, 1, 3, 2)
        k2 = compose(kappa, kappa)
        named = [("id", ident), ("kappa", kappa), ("kappa2", k2), ("tau", tau),
                 ("tau*kappa", compose(tau, kappa)), ("tau*kappa2", compose(tau, k2))]
        assert sorted(p for _, p in named) == sorted(perms)
        return named
    others = [p for p in perms if p != ident]
    if len(others) > 1:
        raise AssertionError("unexpected automorphism group")
    return [("id", ident)] + [("tau", p) for p in others]


def is_invariant(sd: SatakeDiagram) -> bool:
    return all(sd.act(p) == sd for _, p in named_automorphisms(sd.ctype))


def ds_set(s1: SatakeDiagram, s2: SatakeDiagram,
           shortcut: bool = True) -> List[Tuple[str, DoubleSatakeDiagram]]:
    """Classes of (S₁, ψ·S₂), ψ ∈ Aut(Π), up to double Satake isomorphism.

    Each class is represented by the first ψ (in the order of
    :func:`named_automorphisms`) that reaches it.  When either diagram is
    Aut(Π)-invariant all choices of ψ are equivalent and the answer is the
    single class of (S₁, S₂); ``shortcut=False`` checks every ψ anyway.
    """
    if shortcut and (is_invariant(s1) or is_invariant(s2)):
        return [("id", DoubleSatakeDiagram(s1, s2))]
    reps: List[Tuple[str, DoubleSatakeDiagram]] = []
    for name, psi in named_automorphisms(s1.ctype):
        d = DoubleSatakeDiagram(s1, s2.act(psi))
        if not any(double_satake_isomorphic(d, r) for _, r in reps):
            reps.append((name, d))
    return reps


# -- triads ------------------------------------------------------------------------


def rank_and_order(ds: DoubleSigmaSystem) -> Tuple[int, int]:
    _, rank, order = class_invariants(ds)
    return rank, order


@dataclass(frozen=True)
class TriadClass:
    """One equivalence class of triads (g, θ₁, θ₂)."""

    algebra: Algebra
    k1: InvolutionClass
    k2: InvolutionClass
    twist: str
    diagram: DoubleSatakeDiagram
    rank: int
    order: int
    self_dual: bool

    @property
    def display_name(self) -> str:
        k2 = self.k2.k_label
        if self.twist in ("kappa", "kappa2"):
            k2 = f"κ({k2})" if self.twist == "kappa" else f"κ²({k2})"
        elif self.twist == "tau":
            k2 = f"{k2}′" if k2.startswith("u(") else f"τ({k2})"
        elif self.twist != "id":
            k2 = f"{self.twist}({k2})"
        return f"({self.algebra.name}, {self.k1.k_label}, {k2})"

    def double_sigma(self) -> DoubleSigmaSystem:
        return from_double_satake(self.diagram)

    def to_json(self) -> dict:
        return {"g": self.algebra.name, "k1": self.k1.k_label, "k2": self.k2.k_label,
                "twist": self.twist, "rank": self.rank, "order": self.order,
                "self_dual": self.self_dual, "diagram": self.diagram.to_json()}


def triads_for_pair(c1: InvolutionClass, c2: InvolutionClass) -> List[TriadClass]:
    out = []
    for twist, d in ds_set(c1.diagram, c2.diagram):
        rank, order = rank_and_order(from_double_satake(d))
        self_dual = double_satake_isomorphic(d, d.swap()) is not None
        out.append(TriadClass(c1.algebra, c1, c2, twist, d, rank, order, self_dual))
    return out


@dataclass
class ClassificationReport:
    algebra: Algebra
    triads: List[TriadClass]
    provenance: Dict[str, object] = field(default_factory=dict)

    def to_json(self) -> list:
        return [t.to_json() for t in self.triads]

    def find(self, k1: str, k2: str, twist: Optional[str] = None) -> List[TriadClass]:
        c1 = find_class(self.algebra, k1)
        c2 = find_class(self.algebra, k2)
        hits = [t for t in self.triads
                if {t.k1, t.k2} == {c1, c2} or (t.k1 == c1 and t.k2 == c2)]
        if twist is not None:
            hits = [t for t in hits if t.twist == twist]
        return hits


def classify_algebra(algebra, pair: Optional[Tuple[str, str]] = None) -> ClassificationReport:
    """Every triad class of g (or of one pair of involution classes)."""
    if isinstance(algebra, str):
        algebra = parse_algebra(algebra)
    classes = involution_classes(algebra)
    if pair is not None:
        c1, c2 = (find_class(algebra, k) for k in pair)
        pairs = [(c1, c2)]
    else:
        pairs = [(classes[i], classes[j]) for i in range(len(classes))
                 for j in range(i, len(classes))]
    triads = [t for c1, c2 in pairs for t in triads_for_pair(c1, c2)]
    return ClassificationReport(algebra, triads, provenance(algebra))


def provenance(algebra: Algebra) -> Dict[str, object]:
    try:
        digest = snapshot_hash()
    except OSError:
        digest = None
    return {"g": algebra.name, "cartan_type": str(algebra.ctype), "version": __version__,
            "catalog_sha256": digest}


def in_bounds(algebra: Algebra, max_rank: Optional[int] = None) -> bool:
    if max_rank is not None:
        return algebra.ctype.rank <= max_rank
    if algebra.family in DEFAULT_BOUNDS:
        return algebra.n <= DEFAULT_BOUNDS[algebra.family]
    return True


def default_algebras() -> List[Algebra]:
    algs = [Algebra("su", n) for n in range(2, DEFAULT_BOUNDS["su"] + 1)]
    algs += [Algebra("so", n) for n in range(5, DEFAULT_BOUNDS["so"] + 1)]
    algs += [Algebra("sp", n) for n in range(2, DEFAULT_BOUNDS["sp"] + 1)]
    algs += [Algebra(e) for e in EXCEPTIONAL]
    return algs


# -- markdown --------------------------------------------------------------------


def to_markdown(reports: Iterable[ClassificationReport]) -> str:
    lines = ["| (g, θ₁, θ₂) | rank | order | self-dual |", "|---|---|---|---|"]
    for rep in reports:
        for t in rep.triads:
            lines.append(f"| {t.display_name} | {t.rank} | {t.order} | "
                         f"{'yes' if t.self_dual else ''} |")
    return "\n".join(lines) + "\n"


def to_text(report: ClassificationReport) -> str:
    width = max((len(t.display_name) for t in report.triads), default=10)
    out = [f"{'triad':<{width}}  rank  order  self-dual"]
    for t in report.triads:
        out.append(f"{t.display_name:<{width}}  {t.rank:>4}  {t.order:>5}  "
                   f"{'yes' if t.self_dual else 'no'}")
    return "\n".join(out) + "\n"


# -- published values --------------------------------------------------------------

_EXCEPTIONAL_TABLE = {
    ("e6", "EI", "EII"): (4, 2), ("e6", "EI", "EIII"): (2, 2), ("e6", "EI", "EIV"): (2, 2),
    ("e6", "EII", "EIII"): (2, 2), ("e6", "EII", "EIV"): (1, 2), ("e6", "EIII", "EIV"): (1, 2),
    ("e7", "EV", "EVI"): (4, 2), ("e7", "EV", "EVII"): (3, 2), ("e7", "EVI", "EVII"): (2, 2),
    ("e8", "EVIII", "EIX"): (4, 2),
    ("f4", "FI", "FII"): (1, 2),
}

_SO8_TWISTED_RANK = {(1, 1): 0, (1, 2): 0, (1, 3): 0, (2, 2): 1, (2, 3): 1, (3, 3): 2}
_SO8_TWISTED_ORDER = {(1, 1): 3, (1, 2): 4, (1, 3): 6, (2, 2): 2, (2, 3): 4, (3, 3): 3}


def published_rank_order(t: TriadClass) -> Optional[Tuple[int, int]]:
    """Rank and order from the published classification table, if listed.

    Untwisted pairs of equal classes have rank(g, θ) and order 1.
    """
    a1, a2 = t.k1, t.k2
    f = t.algebra.family
    if t.twist == "id" and a1 == a2:
        return a1.rank, 1
    if f in ("e6", "e7", "e8", "f4"):
        key = (f, *sorted((a1.label, a2.label), key=_exc_order(f)))
        return _EXCEPTIONAL_TABLE.get(key)
    labels = {a1.label, a2.label}
    n = t.algebra.n
    if f == "su":
        m = n // 2
        if labels == {"AI", "AII"}:
            return m - 1, 2
        if labels == {"AI", "AIII"}:
            a = (a1 if a1.label == "AIII" else a2).params[0]
            return a, 2
        if labels == {"AII", "AIII"}:
            a = (a1 if a1.label == "AIII" else a2).params[0]
            return a // 2, 4 if a % 2 and m > a else 2
        if labels == {"AIII"}:
            return min(a1.params[0], a2.params[0]), 2
    if f == "so":
        if n == 8 and t.twist in ("kappa", "kappa2"):
            key = tuple(sorted((a1.params[0], a2.params[0])))
            return _SO8_TWISTED_RANK[key], _SO8_TWISTED_ORDER[key]
        if labels == {"BDI"} and t.twist == "id":
            return min(a1.params[0], a2.params[0]), 2
        if labels == {"BDI", "DIII"}:
            a = (a1 if a1.label == "BDI" else a2).params[0]
            m = n // 2
            return a // 2, 4 if a % 2 and m > a else 2
        if labels == {"DIII"} and t.twist == "tau":
            return n // 4 - 1, 2
    if f == "sp":
        if labels == {"CI", "CII"}:
            return (a1 if a1.label == "CII" else a2).params[0], 2
        if labels == {"CII"}:
            return min(a1.params[0], a2.params[0]), 2
    return None


def _exc_order(f):
    return [c.label for c in involution_classes(f)].index


# -- verification ------------------------------------------------------------------


@dataclass
class Check:
    name: str
    ok: bool
    detail: str = ""


def verify_table(algebras: Optional[Sequence[Algebra]] = None) -> List[Check]:
    """Compare computed ranks and orders with the published table."""
    out = []
    for alg in algebras or default_algebras():
        for t in classify_algebra(alg).triads:
            want = published_rank_order(t)
            got = (t.rank, t.order)
            if want is None:
                out.append(Check(t.display_name, False, f"not in the table, computed {got}"))
            else:
                out.append(Check(t.display_name, want == got, f"computed {got}, table {want}"))
    return out


def verify_rank_oracle(algebras: Optional[Sequence[Algebra]] = None,
                       weyl_cap: int = 200_000) -> List[Check]:
    """Class rank against max over s in W of dim(𝔱^{σ₁} ∩ s𝔱^{σ₂})."""
    out = []
    for alg in algebras or default_algebras():
        if alg.ctype.weyl_order > weyl_cap:
            continue
        for t in classify_algebra(alg).triads:
            best = weyl_max_rank(t.double_sigma(), cap=weyl_cap)
            out.append(Check(t.display_name, best == t.rank, f"rank {t.rank}, Weyl max {best}"))
    return out


def verify_round_trip(max_rank: int = 8) -> List[Check]:
    """Catalog diagram -> σ -> diagram for every catalog entry."""
    from .catalog import catalog_algebras
    from .sigma import reconstruct_sigma, satake_diagram, find_sigma_fundamental, sigma_rank
    out = []
    for alg in catalog_algebras(max_rank):
        for c in involution_classes(alg):
            ss = reconstruct_sigma(c.diagram)
            back = satake_diagram(ss, find_sigma_fundamental(ss))
            ok = back == c.diagram and sigma_rank(ss) == c.rank == c.diagram.real_rank()
            out.append(Check(f"{alg.name} {c.k_label}", ok))
    return out


# Pairs of triads identified by triality on so(8), so(5) ≅ sp(2) and
# su(4) ≅ so(6).
SPECIAL_ISOMORPHISMS = [
    (("so8", "u4", "so4+so4"), ("so8", "so2+so6", "so4+so4")),
    (("so5", "so1+so4", "so2+so3"), ("sp2", "sp1+sp1", "u2")),
    (("su4", "so4", "sp2"), ("so6", "so3+so3", "so1+so5")),
    (("su4", "so4", "s(u2+u2)"), ("so6", "so3+so3", "so2+so4")),
    (("su4", "so4", "s(u1+u3)"), ("so6", "so3+so3", "u3")),
    (("su4", "sp2", "s(u2+u2)"), ("so6", "so1+so5", "so2+so4")),
    (("su4", "sp2", "s(u1+u3)"), ("so6", "so1+so5", "u3")),
    (("su4", "s(u2+u2)", "s(u1+u3)"), ("so6", "so2+so4", "u3")),
]


def triad_system(g: str, k1: str, k2: str, twist: str = "id") -> DoubleSigmaSystem:
    alg = parse_algebra(g)
    c1, c2 = find_class(alg, k1), find_class(alg, k2)
    for name, d in ds_set(c1.diagram, c2.diagram, shortcut=False):
        if name == twist:
            return from_double_satake(d)
    raise CatalogError(f"no twist {twist!r} for {g} {k1} {k2}")


def triads_equivalent(t1, t2) -> bool:
    """Equivalence of two triads given as (g, k1, k2), allowing k1, k2 swapped."""
    a = triad_system(*t1)
    b = triad_system(*t2)
    return equivalent(a, b) or equivalent(a, b.swap())


def verify_special_isomorphisms(negatives: int = 10, seed: int = 0) -> List[Check]:
    out = [Check(f"{t1} ~ {t2}", triads_equivalent(t1, t2)) for t1, t2 in SPECIAL_ISOMORPHISMS]
    for t1, t2 in negative_controls(negatives, seed):
        out.append(Check(f"{t1} !~ {t2}", not triads_equivalent(t1, t2)))
    return out


# Class correspondences under su(4) = so(6) and so(5) = sp(2).
_CORRESPONDENCE = {
    ("su4", "so6"): {"so4": "so3+so3", "sp2": "so1+so5", "s(u2+u2)": "so2+so4", "s(u1+u3)": "u3"},
    ("so5", "sp2"): {"so1+so4": "sp1+sp1", "so2+so3": "u2"},
}


def negative_controls(count: int, seed: int = 0) -> List[Tuple[tuple, tuple]]:
    """Seeded sample of cross-algebra triad pairs not related by the low-rank isomorphisms."""
    pool = []
    for (g, h), corr in _CORRESPONDENCE.items():
        ks = list(corr)
        pairs_g = [(a, b) for i, a in enumerate(ks) for b in ks[i:]]
        for a, b in pairs_g:
            for c, d in [(x, y) for i, x in enumerate(corr.values()) for y in list(corr.values())[i:]]:
                if sorted((corr[a], corr[b])) == sorted((c, d)):
                    continue
                pool.append(((g, a, b), (h, c, d)))
    rng = random.Random(seed)
    return rng.sample(pool, min(count, len(pool)))


def self_dual_classes(algebras: Optional[Sequence[Algebra]] = None) -> List[TriadClass]:
    """Self-dual triad classes with θ₁ and θ₂ not conjugate (order > 1)."""
    out = []
    for alg in algebras or default_algebras():
        out += [t for t in classify_algebra(alg).triads if t.self_dual and t.order > 1]
    return out


def published_ds_size(c1: InvolutionClass, c2: InvolutionClass) -> int:
    """Number of triad classes over a pair of involution classes.

    Two for (so(4m), u(2m), u(2m)) with m >= 3 and for so(8) with both
    involutions of type so(a)⊕so(8-a), a in {1, 2, 3}; one otherwise.
    """
    alg = c1.algebra
    if alg.family == "so" and alg.n % 4 == 0 and alg.n >= 12 and c1.label == c2.label == "DIII":
        return 2
    if alg == Algebra("so", 8) and c1.label == c2.label == "BDI" and \
            c1.params[0] <= 3 and c2.params[0] <= 3:
        return 2
    return 1


def published_self_dual(t: TriadClass) -> bool:
    """Self-duality expected among classes with θ₁ and θ₂ not conjugate."""
    alg = t.algebra
    if t.k1 != t.k2:
        return False
    if alg.family == "so" and alg.n % 4 == 0 and alg.n >= 12:
        return t.k1.label == "DIII" and t.twist == "tau"
    if alg == Algebra("so", 8):
        return t.twist != "id" and t.k1.params[0] <= 3
    return False


def verify_ds_sizes(algebras: Optional[Sequence[Algebra]] = None) -> List[Check]:
    out = []
    for alg in algebras or default_algebras():
        classes = involution_classes(alg)
        for i, c1 in enumerate(classes):
            for c2 in classes[i:]:
                got = len(ds_set(c1.diagram, c2.diagram, shortcut=False))
                want = published_ds_size(c1, c2)
                out.append(Check(f"({alg.name}, {c1.k_label}, {c2.k_label})", got == want,
                                 f"{got} classes, expected {want}"))
    return out


def verify_self_duality(algebras: Optional[Sequence[Algebra]] = None) -> List[Check]:
    out = []
    for alg in algebras or default_algebras():
        for t in classify_algebra(alg).triads:
            if t.order == 1:
                continue
            want = published_self_dual(t)
            out.append(Check(t.display_name, t.self_dual == want,
                             f"self-dual {t.self_dual}, expected {want}"))
    return out

"""Involution classes of the simple Lie algebras and their Satake diagrams.

Diagrams use 0-based Bourbaki node labels; comments quote the 1-based
labels alpha_1 .. alpha_l.
"""

from __future__ import annotations

import hashlib
import json
import re
from dataclasses import dataclass
from importlib import resources
from pathlib import Path
from typing import List, Optional, Tuple

from .rootsys import CartanType
from .sigma import SatakeDiagram


class CatalogError(ValueError):
    pass


@dataclass(frozen=True, order=True)
class Algebra:
    family: str  # "su", "so", "sp" or an exceptional name such as "e6"
    n: int = 0

    @property
    def name(self) -> str:
        return f"{self.family}({self.n})" if self.family in ("su", "so", "sp") else self.family

    @property
    def short(self) -> str:
        return f"{self.family}{self.n}" if self.family in ("su", "so", "sp") else self.family

    @property
    def ctype(self) -> CartanType:
        f, n = self.family, self.n
        if f == "su":
            return CartanType("A", n - 1)
        if f == "so":
            return CartanType("B", (n - 1) // 2) if n % 2 else CartanType("D", n // 2)
        if f == "sp":
            return CartanType("C", n)
        return CartanType(f[0].upper(), int(f[1]))

    def __str__(self) -> str:
        return self.name


_EXCEPTIONAL = ("e6", "e7", "e8", "f4", "g2")


def parse_algebra(text: str) -> Algebra:
    """Parse ``"so8"``, ``"so(8)"``, ``"su6"``, ``"sp3"``, ``"e6"`` ..."""
    t = text.strip().lower().replace(" ", "")
    if t in _EXCEPTIONAL:
        return Algebra(t)
    m = re.fullmatch(r"(su|so|sp)\(?(\d+)\)?", t)
    if not m:
        raise CatalogError(f"unknown Lie algebra {text!r}")
    fam, n = m.group(1), int(m.group(2))
    if fam == "su" and n < 2:
        raise CatalogError("su(n) needs n >= 2")
    if fam == "so" and n < 5:
        raise CatalogError(f"so({n}) is not simple or is covered by su(2)" if n != 4
                           else "so(4) is not simple")
    if fam == "sp" and n < 2:
        raise CatalogError("sp(1) is su(2); use su2")
    return Algebra(fam, n)


def algebra_for_type(ct: CartanType) -> Algebra:
    s, l = ct.series, ct.rank
    if s == "A":
        return Algebra("su", l + 1)
    if s == "B":
        return Algebra("so", 2 * l + 1)
    if s == "C":
        return Algebra("sp", l)
    if s == "D":
        return Algebra("so", 2 * l)
    return Algebra(f"{s.lower()}{l}")


@dataclass(frozen=True)
class InvolutionClass:
    """One Aut(g)-conjugacy class of involutions of g."""

    algebra: Algebra
    label: str  # "AI", "AII", "AIII", "BDI", "DIII", "CI", "CII", "EI", ...
    params: Tuple[int, ...]
    k_label: str
    diagram: SatakeDiagram
    rank: int

    @property
    def short(self) -> str:
        return short_k(self.k_label)

    def to_json(self) -> dict:
        return {"g": self.algebra.name, "class_label": self.label, "k_label": self.k_label,
                "params": list(self.params), "diagram": self.diagram.to_json()}


def short_k(label: str) -> str:
    """``"so(3)⊕so(5)"`` -> ``"so3+so5"``, ``"s(u(2)⊕u(4))"`` -> ``"s(u2+u4)"``."""
    return re.sub(r"\((\d+)\)", r"\1", label).replace("⊕", "+")


# -- diagram families ------------------------------------------------------------


def _sd(ct, black=(), arrows=()) -> SatakeDiagram:
    return SatakeDiagram(ct, tuple(black), tuple(arrows))


def diagram_for(algebra: Algebra, label: str, params: Tuple[int, ...] = ()) -> SatakeDiagram:
    """Satake diagram of the involution ``label(params)`` of ``algebra``."""
    ct = algebra.ctype
    l = ct.rank
    f, n = algebra.family, algebra.n
    key = (f, label)
    if key == ("su", "AI"):
        return _sd(ct)
    if key == ("su", "AII"):
        if n % 2 or n < 4:
            raise CatalogError("AII needs even n >= 4")
        return _sd(ct, range(0, l, 2))  # alpha_1, alpha_3, ..., alpha_{n-1}
    if key == ("su", "AIII"):
        a, b = params
        if a + b != n or not 1 <= a <= b:
            raise CatalogError(f"bad AIII parameters {params} for su({n})")
        if a < b:
            # alpha_i <-> alpha_{n-i} for i <= a, black in between
            return _sd(ct, range(a, n - a - 1), [(i, n - 2 - i) for i in range(a)])
        return _sd(ct, (), [(i, n - 2 - i) for i in range(a - 1)])
    if key in (("so", "BDI"),):
        a, b = params
        if a + b != n or not 1 <= a <= b:
            raise CatalogError(f"bad parameters {params} for so({n})")
        if ct.series == "B" or a <= l - 2:
            return _sd(ct, range(a, l))  # white alpha_1 .. alpha_a
        if a == l - 1:
            return _sd(ct, (), [(l - 2, l - 1)])
        return _sd(ct)
    if key == ("so", "DIII"):
        if ct.series != "D":
            raise CatalogError("DIII needs so(2l)")
        if l % 2 == 0:
            return _sd(ct, range(0, l - 1, 2))  # alpha_1, alpha_3, ..., alpha_{l-1}
        return _sd(ct, range(0, l - 2, 2), [(l - 2, l - 1)])
    if key == ("sp", "CI"):
        return _sd(ct)
    if key == ("sp", "CII"):
        a, b = params
        if a + b != n or not 1 <= a <= b:
            raise CatalogError(f"bad CII parameters {params} for sp({n})")
        # alpha_1, alpha_3, ..., alpha_{2a-1} and alpha_{2a+1} .. alpha_l black
        return _sd(ct, list(range(0, 2 * a - 1, 2)) + list(range(2 * a, l)))
    exceptional = {
        ("e6", "EI"): ((), ()),
        ("e6", "EII"): ((), [(0, 5), (2, 4)]),
        ("e6", "EIII"): ((2, 3, 4), [(0, 5)]),
        ("e6", "EIV"): ((1, 2, 3, 4), ()),
        ("e7", "EV"): ((), ()),
        ("e7", "EVI"): ((1, 4, 6), ()),
        ("e7", "EVII"): ((1, 2, 3, 4), ()),
        ("e8", "EVIII"): ((), ()),
        ("e8", "EIX"): ((1, 2, 3, 4), ()),
        ("f4", "FI"): ((), ()),
        ("f4", "FII"): ((0, 1, 2), ()),
        ("g2", "G"): ((), ()),
    }
    if key in exceptional:
        black, arrows = exceptional[key]
        return _sd(ct, black, arrows)
    raise CatalogError(f"no involution {label} for {algebra}")


_EXCEPTIONAL_CLASSES = {
    "e6": [("EI", "sp(4)", 6), ("EII", "su(6)⊕su(2)", 4), ("EIII", "so(10)⊕so(2)", 2),
           ("EIV", "f4", 2)],
    "e7": [("EV", "su(8)", 7), ("EVI", "so(12)⊕su(2)", 4), ("EVII", "e6⊕so(2)", 3)],
    "e8": [("EVIII", "so(16)", 8), ("EIX", "e7⊕su(2)", 4)],
    "f4": [("FI", "sp(3)⊕su(2)", 4), ("FII", "so(9)", 1)],
    "g2": [("G", "su(2)⊕su(2)", 2)],
}


def make_class(algebra: Algebra, label: str, params: Tuple[int, ...] = ()) -> InvolutionClass:
    f, n = algebra.family, algebra.n
    params = tuple(params)
    if f in _EXCEPTIONAL_CLASSES:
        for lab, k, r in _EXCEPTIONAL_CLASSES[f]:
            if lab == label:
                return InvolutionClass(algebra, label, (), k, diagram_for(algebra, label), r)
        raise CatalogError(f"no involution {label} for {algebra}")
    if label == "AI":
        k, r = f"so({n})", n - 1
    elif label == "AII":
        k, r = f"sp({n // 2})", n // 2 - 1
    elif label == "AIII":
        a, b = params
        k, r = f"s(u({a})⊕u({b}))", a
    elif label == "BDI":
        a, b = params
        k, r = f"so({a})⊕so({b})", a
    elif label == "DIII":
        k, r = f"u({n // 2})", n // 4
    elif label == "CI":
        k, r = f"u({n})", n
    elif label == "CII":
        a, b = params
        k, r = f"sp({a})⊕sp({b})", a
    else:
        raise CatalogError(f"no involution {label} for {algebra}")
    return InvolutionClass(algebra, label, params, k, diagram_for(algebra, label, params), r)


def involution_classes(algebra) -> List[InvolutionClass]:
    """All involution classes of g up to Aut(g), in a fixed order.

    su(2) has a single class.  In so(8) the class u(4) coincides with
    so(2)⊕so(6) under triality, so only so(a)⊕so(8-a), a = 1..4, appear.
    """
    if isinstance(algebra, str):
        algebra = parse_algebra(algebra)
    f, n = algebra.family, algebra.n
    if f in _EXCEPTIONAL_CLASSES:
        return [make_class(algebra, lab) for lab, _, _ in _EXCEPTIONAL_CLASSES[f]]
    out = []
    if f == "su":
        out.append(make_class(algebra, "AI"))
        if n == 2:
            return out
        if n % 2 == 0:
            out.append(make_class(algebra, "AII"))
        out += [make_class(algebra, "AIII", (a, n - a)) for a in range(1, n // 2 + 1)]
    elif f == "so":
        out += [make_class(algebra, "BDI", (a, n - a)) for a in range(1, n // 2 + 1)]
        if n % 2 == 0 and n != 8:
            out.append(make_class(algebra, "DIII"))
    elif f == "sp":
        out.append(make_class(algebra, "CI"))
        out += [make_class(algebra, "CII", (a, n - a)) for a in range(1, n // 2 + 1)]
    return out


def find_class(algebra, name: str) -> InvolutionClass:
    """Look a class up by k (``"so3+so5"``, ``"s(u2+u4)"``) or label (``"EII"``)."""
    if isinstance(algebra, str):
        algebra = parse_algebra(algebra)
    want = _normal_k(name)
    for c in involution_classes(algebra):
        if want in (_normal_k(c.k_label), c.label.lower(),
                    f"{c.label.lower()}{','.join(map(str, c.params))}"):
            return c
    # so(8): u(4) is conjugate to so(2)+so(6) under triality and is not listed
    # separately, but its own diagram is still available by name
    if algebra == Algebra("so", 8) and want in ("u4", "diii"):
        return make_class(algebra, "DIII")
    raise CatalogError(f"{name!r} is not an involution class of {algebra}")


def _normal_k(text: str) -> str:
    t = short_k(text.strip().lower().replace(" ", ""))

    def split_sorted(s):
        return "+".join(sorted(s.split("+")))
    t = re.sub(r"s\(([^()]*)\)", lambda m: "s(" + split_sorted(m.group(1)) + ")", t)
    if "s(" not in t:
        t = split_sorted(t)
    return t


# -- snapshot --------------------------------------------------------------------

SNAPSHOT_MAX_RANK = 8


def catalog_algebras(max_rank: int = SNAPSHOT_MAX_RANK) -> List[Algebra]:
    algs = [Algebra("su", n) for n in range(2, max_rank + 2)]
    algs += [Algebra("so", n) for n in range(5, 2 * max_rank + 2)]
    algs += [Algebra("sp", n) for n in range(2, max_rank + 1)]
    algs += [Algebra(e) for e in _EXCEPTIONAL if Algebra(e).ctype.rank <= max_rank]
    return algs


def catalog_entries(max_rank: int = SNAPSHOT_MAX_RANK) -> List[dict]:
    return [c.to_json() for a in catalog_algebras(max_rank) for c in involution_classes(a)]


def catalog_json(max_rank: int = SNAPSHOT_MAX_RANK) -> str:
    """Snapshot text: a JSON array with one entry per line."""
    rows = [json.dumps(e, ensure_ascii=False) for e in catalog_entries(max_rank)]
    return "[\n" + ",\n".join(rows) + "\n]\n"


def default_snapshot_path() -> Path:
    return Path(str(resources.files("lietriad") / "data" / "catalog.json"))


def load_snapshot(path: Optional[Path] = None) -> List[dict]:
    path = Path(path) if path else default_snapshot_path()
    try:
        return json.loads(path.read_text(encoding="utf-8"))
    except (OSError, ValueError) as exc:
        raise CatalogError(f"cannot read catalog snapshot {path}: {exc}") from None


def snapshot_hash(path: Optional[Path] = None) -> str:
    path = Path(path) if path else default_snapshot_path()
    return hashlib.sha256(path.read_bytes()).hexdigest()


def check_snapshot(path: Optional[Path] = None) -> List[str]:
    """Differences between the generated catalog and a snapshot file."""
    stored = load_snapshot(path)
    fresh = catalog_entries()
    problems = []
    if len(stored) != len(fresh):
        problems.append(f"snapshot has {len(stored)} entries, generated {len(fresh)}")
    for old, new in zip(stored, fresh):
        if old != new:
            problems.append(f"{new['g']} {new['k_label']}: snapshot differs")
    return problems

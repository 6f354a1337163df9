"""Exact rational linear algebra on tuples of Fractions.

Vectors are tuples, matrices are tuples of row tuples.  Everything here is
small (dimension at most 9), so plain Gaussian elimination is plenty.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Sequence, Tuple

Scalar = Fraction
Vec = Tuple[Fraction, ...]
Matrix = Tuple[Vec, ...]


def vec(*xs) -> Vec:
    return tuple(Fraction(x) for x in xs)


def zero(n: int) -> Vec:
    return (Fraction(0),) * n


def unit(n: int, i: int) -> Vec:
    return tuple(Fraction(1 if j == i else 0) for j in range(n))


def dot(u: Sequence, v: Sequence) -> Fraction:
    # most vectors here are sparse; skipping zero terms avoids Fraction arithmetic
    return sum((a * b for a, b in zip(u, v) if a and b), Fraction(0))


def add(u: Sequence, v: Sequence) -> Vec:
    return tuple(a + b for a, b in zip(u, v))


def sub(u: Sequence, v: Sequence) -> Vec:
    return tuple(a - b for a, b in zip(u, v))


def scale(c, v: Sequence) -> Vec:
    return tuple(c * a for a in v)


def is_zero(v: Sequence) -> bool:
    return all(a == 0 for a in v)


def parse_scalar(text: str) -> Fraction:
    """Parse ``"p/q"`` (or a bare integer) into a Fraction."""
    return Fraction(text.strip())


def format_scalar(x) -> str:
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


# -- matrices --------------------------------------------------------------


def identity(n: int) -> Matrix:
    return tuple(unit(n, i) for i in range(n))


def transpose(a: Sequence[Sequence]) -> Matrix:
    return tuple(tuple(col) for col in zip(*a))


def mat_vec(a: Sequence[Sequence], v: Sequence) -> Vec:
    return tuple(dot(row, v) for row in a)


def mat_mul(a: Sequence[Sequence], b: Sequence[Sequence]) -> Matrix:
    cols = transpose(b)
    return tuple(tuple(dot(row, c) for c in cols) for row in a)


def from_columns(cols: Sequence[Sequence]) -> Matrix:
    return transpose(cols)


def as_matrix(rows: Iterable[Iterable]) -> Matrix:
    return tuple(tuple(Fraction(x) for x in row) for row in rows)


def rref(rows: Sequence[Sequence]) -> Tuple[Matrix, Tuple[int, ...]]:
    """Reduced row echelon form.  Returns the nonzero rows and pivot columns."""
    m = [list(map(Fraction, r)) for r in rows]
    if not m:
        return (), ()
    ncols = len(m[0])
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return tuple(tuple(row) for row in m[:r]), tuple(pivots)


def rank(rows: Sequence[Sequence]) -> int:
    return len(rref(rows)[1])


def nullspace(a: Sequence[Sequence], ncols: int | None = None) -> Matrix:
    """Basis of ``{x : a x = 0}``, one vector per free column."""
    if ncols is None:
        ncols = len(a[0])
    red, pivots = rref(a) if a else ((), ())
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        x = [Fraction(0)] * ncols
        x[f] = Fraction(1)
        for row, p in zip(red, pivots):
            x[p] = -row[f]
        basis.append(tuple(x))
    return tuple(basis)


def solve(a: Sequence[Sequence], b: Sequence) -> Vec:
    """The unique x with a x = b for a square invertible a."""
    n = len(a)
    red, pivots = rref([list(row) + [y] for row, y in zip(a, b)])
    if pivots != tuple(range(n)):
        raise ZeroDivisionError("matrix is singular")
    return tuple(row[n] for row in red)


def integral(v: Sequence) -> Tuple[int, ...]:
    """The positive multiple of a rational vector with smallest integer entries."""
    v = [Fraction(x) for x in v]
    den = lcm(*(x.denominator for x in v)) if v else 1
    w = [int(x * den) for x in v]
    g = gcd(*w) or 1
    return tuple(x // g for x in w)


def inverse(a: Sequence[Sequence]) -> Matrix:
    n = len(a)
    aug = [list(map(Fraction, row)) + list(unit(n, i)) for i, row in enumerate(a)]
    red, pivots = rref(aug)
    if tuple(pivots[:n]) != tuple(range(n)) or len(red) < n:
        raise ZeroDivisionError("matrix is singular")
    return tuple(tuple(row[n:]) for row in red)


def canonical_subspace(basis: Sequence[Sequence]) -> Matrix:
    """Unique representative of span(basis): its RREF rows."""
    return rref(basis)[0]


def intersect(u: Sequence[Sequence], v: Sequence[Sequence], n: int) -> Matrix:
    """Basis of span(u) ∩ span(v) inside Q^n."""
    if not u or not v:
        return ()
    # x·u = y·v  <=>  [u; -v]^T (x, y) = 0
    cols = [tuple(r) for r in u] + [tuple(-a for a in r) for r in v]
    sols = nullspace(transpose(cols), len(cols))
    vecs = []
    for s in sols:
        w = zero(n)
        for coeff, r in zip(s[: len(u)], u):
            if coeff:
                w = add(w, scale(coeff, r))
        vecs.append(w)
    return canonical_subspace(vecs) if vecs else ()


def projection(basis: Sequence[Sequence], gram: Sequence[Sequence]) -> Matrix:
    """Orthogonal projection onto span(basis) for the form ``gram``.

    Coordinates are whatever coordinates ``basis`` and ``gram`` are written
    in; the result acts on column vectors in those coordinates.
    """
    n = len(gram)
    if not basis:
        return tuple(zero(n) for _ in range(n))
    u = from_columns(basis)  # n x k
    g_u = mat_mul(gram, u)  # n x k
    small = mat_mul(transpose(u), g_u)  # k x k
    return mat_mul(mat_mul(u, inverse(small)), transpose(g_u))

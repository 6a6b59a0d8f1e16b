"""Exact rational scalars, vectors, matrices and integer/rational linear algebra.

Everything downstream (geometry, lattices, flag keys) runs on top of this
module, so all values are immutable and all operations are pure.  Scalars are
``fractions.Fraction`` (always reduced, positive denominator); vectors are
tuples of Fractions; matrices are tuples of row vectors.
"""

from __future__ import annotations

import functools
from fractions import Fraction
from math import gcd, lcm

Rational = Fraction
Vec = tuple[Fraction, ...]
Mat = tuple[Vec, ...]

ZERO = Fraction(0)
ONE = Fraction(1)


def vec(*entries) -> Vec:
    """Build a vector of Fractions from ints/strings/Fractions."""
    return tuple(Fraction(e) for e in entries)


def mat(rows) -> Mat:
    """Build a rectangular matrix of Fractions."""
    out = tuple(tuple(Fraction(e) for e in row) for row in rows)
    if out and any(len(r) != len(out[0]) for r in out):
        raise ValueError("ragged matrix")
    return out


def zeros(n: int) -> Vec:
    return (ZERO,) * n


def identity(n: int) -> Mat:
    return tuple(tuple(ONE if i == j else ZERO for j in range(n)) for i in range(n))


def vadd(a: Vec, b: Vec) -> Vec:
    return tuple(x + y for x, y in zip(a, b, strict=True))


def vsub(a: Vec, b: Vec) -> Vec:
    return tuple(x - y for x, y in zip(a, b, strict=True))


def vscale(c: Fraction, a: Vec) -> Vec:
    return tuple(c * x for x in a)


def dot(a: Vec, b: Vec) -> Fraction:
    return sum((x * y for x, y in zip(a, b, strict=True)), ZERO)


def is_zero_vec(a: Vec) -> bool:
    return all(x == 0 for x in a)


def mat_vec(m: Mat, x: Vec) -> Vec:
    return tuple(dot(row, x) for row in m)


def vec_mat(x: Vec, m: Mat) -> Vec:
    """Row vector times matrix."""
    if not m:
        return ()
    n = len(m[0])
    return tuple(sum((x[i] * m[i][j] for i in range(len(m))), ZERO) for j in range(n))


def mat_mul(a: Mat, b: Mat) -> Mat:
    return tuple(vec_mat(row, b) for row in a)


def transpose(m: Mat) -> Mat:
    return tuple(zip(*m)) if m else ()


def det(m: Mat) -> Fraction:
    """Exact determinant by fraction Gaussian elimination."""
    n = len(m)
    if n == 0:
        return ONE
    if any(len(r) != n for r in m):
        raise ValueError("determinant of non-square matrix")
    rows = [list(r) for r in m]
    result = ONE
    for c in range(n):
        piv = next((i for i in range(c, n) if rows[i][c] != 0), None)
        if piv is None:
            return ZERO
        if piv != c:
            rows[c], rows[piv] = rows[piv], rows[c]
            result = -result
        result *= rows[c][c]
        inv = 1 / rows[c][c]
        for i in range(c + 1, n):
            if rows[i][c] != 0:
                f = rows[i][c] * inv
                rows[i] = [rows[i][j] - f * rows[c][j] for j in range(n)]
    return result


def inverse(m: Mat) -> Mat | None:
    """Exact inverse, or None when singular."""
    n = len(m)
    aug = [list(m[i]) + [ONE if i == j else ZERO for j in range(n)] for i in range(n)]
    for c in range(n):
        piv = next((i for i in range(c, n) if aug[i][c] != 0), None)
        if piv is None:
            return None
        aug[c], aug[piv] = aug[piv], aug[c]
        inv = 1 / aug[c][c]
        aug[c] = [e * inv for e in aug[c]]
        for i in range(n):
            if i != c and aug[i][c] != 0:
                f = aug[i][c]
                aug[i] = [a - f * b for a, b in zip(aug[i], aug[c])]
    return tuple(tuple(row[n:]) for row in aug)


def rref(m: Mat) -> tuple[Mat, tuple[int, ...]]:
    """Reduced row echelon form and pivot columns.

    Deterministic: pivots are chosen left to right, first nonzero row below.
    """
    if not m:
        return (), ()
    rows = [list(r) for r in m]
    nrows, ncols = len(rows), len(rows[0])
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        piv = next((i for i in range(r, nrows) if rows[i][c] != 0), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = 1 / rows[r][c]
        rows[r] = [e * inv for e in rows[r]]
        for i in range(nrows):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
    return tuple(tuple(row) for row in rows), tuple(pivots)


def rank(m: Mat) -> int:
    return len(rref(m)[1])


def solve_linear(a: Mat, b: Vec) -> Vec | None:
    """One exact solution of a.x = b, or None when inconsistent.

    Free variables are set to zero, so the result is deterministic.
    """
    if len(a) != len(b):
        raise ValueError("row count of a must match length of b")
    if not a:
        return ()
    ncols = len(a[0])
    aug = tuple(tuple(a[i]) + (b[i],) for i in range(len(a)))
    red, pivots = rref(aug)
    if ncols in pivots:
        return None  # pivot in the constant column: inconsistent
    x = [ZERO] * ncols
    for i, c in enumerate(pivots):
        x[c] = red[i][ncols]
    return tuple(x)


def kernel_basis(a: Mat) -> Mat:
    """Basis rows of the exact right null space of a.

    One row per free column of the RREF; rows are scaled to primitive integer
    vectors with positive leading entry so the result is canonical.
    """
    if not a:
        return ()
    ncols = len(a[0])
    red, pivots = rref(a)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [ZERO] * ncols
        v[f] = ONE
        for i, c in enumerate(pivots):
            v[c] = -red[i][f]
        basis.append(primitive_vector(tuple(v)))
    return tuple(basis)


def hnf(m: Mat) -> Mat:
    """Row-style Hermite normal form of an integer matrix.

    Upper echelon with positive pivots; entries above each pivot reduced into
    [0, pivot).  The integer row span is preserved.  Zero rows sink to the
    bottom; the zero matrix is returned unchanged.
    """
    rows: list[list[int]] = []
    for row in m:
        ints = []
        for e in row:
            f = Fraction(e)
            if f.denominator != 1:
                raise ValueError("hnf requires integer entries")
            ints.append(f.numerator)
        rows.append(ints)
    if not rows:
        return ()
    nrows, ncols = len(rows), len(rows[0])
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        # Euclidean reduction in column c over rows r..end.
        while True:
            nz = [i for i in range(r, nrows) if rows[i][c] != 0]
            if not nz:
                break
            i0 = min(nz, key=lambda i: (abs(rows[i][c]), i))
            if i0 != r:
                rows[r], rows[i0] = rows[i0], rows[r]
            clean = True
            for i in range(r + 1, nrows):
                if rows[i][c] != 0:
                    q = rows[i][c] // rows[r][c]
                    rows[i] = [x - q * y for x, y in zip(rows[i], rows[r])]
                    if rows[i][c] != 0:
                        clean = False
            if clean:
                break
        if r < nrows and rows[r][c] != 0:
            if rows[r][c] < 0:
                rows[r] = [-x for x in rows[r]]
            for i in range(r):
                q = rows[i][c] // rows[r][c]
                if q:
                    rows[i] = [x - q * y for x, y in zip(rows[i], rows[r])]
            r += 1
    return tuple(tuple(Fraction(x) for x in row) for row in rows)


def in_integer_row_span(h: Mat, v: Vec) -> bool:
    """Is v an integer combination of the rows of the HNF matrix h?"""
    residual = [Fraction(e) for e in v]
    for row in h:
        lead = next((j for j, e in enumerate(row) if e != 0), None)
        if lead is None:
            continue
        q = residual[lead] / row[lead]
        if q.denominator != 1:
            return False
        if q:
            for j in range(lead, len(residual)):
                residual[j] -= q * row[j]
    return all(e == 0 for e in residual)


def primitive_vector(v: Vec) -> Vec:
    """Scale a nonzero rational vector to a primitive integer vector.

    The first nonzero coordinate is made positive; the zero vector is
    returned unchanged.
    """
    nums = [Fraction(e) for e in v]
    nonzero = [e for e in nums if e != 0]
    if not nonzero:
        return tuple(nums)
    mult = lcm(*(e.denominator for e in nonzero))
    ints = [e * mult for e in nums]
    g = 0
    for e in ints:
        g = gcd(g, e.numerator)
    scaled = [e / g for e in ints]
    first = next(e for e in scaled if e != 0)
    if first < 0:
        scaled = [-e for e in scaled]
    return tuple(scaled)


@functools.lru_cache(maxsize=65536)
def canonical_subspace_basis(spanning: Mat) -> Mat:
    """Canonical basis of the rational subspace spanned by the given rows.

    RREF rows scaled to primitive integer vectors with positive leading
    entry.  Depends on the subspace only, not on the particular spanning
    set, which is what makes flag-orbit keys comparable by value.
    """
    red, pivots = rref(spanning)
    return tuple(primitive_vector(red[i]) for i in range(len(pivots)))


def in_span(basis: Mat, v: Vec) -> bool:
    """Is v in the rational row span of basis?"""
    if is_zero_vec(v):
        return True
    if not basis:
        return False
    return rank(basis + (v,)) == rank(basis)

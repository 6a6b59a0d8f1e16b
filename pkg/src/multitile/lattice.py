"""Full-rank rational lattices, duals, and coset reduction modulo L + W.

The key primitive is reduce_mod: the canonical representative of a coset of
L + W for a rational subspace W.  In lattice coordinates W is rational, so
L + W is a closed subgroup and membership is decidable exactly; reduce_mod
projects out the W component along the pivot-column complement and reduces
the residual into the half-open fundamental box of the projected lattice.
"""

from __future__ import annotations

import functools
import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from math import lcm

from .errors import DegenerateInputError
from .exact import (
    Mat,
    Vec,
    ZERO,
    det,
    hnf,
    inverse,
    mat_vec,
    rref,
    transpose,
    vec_mat,
)


@dataclass(frozen=True)
class Lattice:
    """Lattice generated by the rows of an invertible rational basis."""

    basis: Mat
    _inv_t: Mat = field(init=False, repr=False, compare=False)
    _det: Fraction = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        basis = tuple(tuple(Fraction(x) for x in row) for row in self.basis)
        object.__setattr__(self, "basis", basis)
        d = len(basis)
        if d == 0 or any(len(row) != d for row in basis):
            raise DegenerateInputError("lattice basis must be square")
        dd = det(basis)
        if dd == 0:
            raise DegenerateInputError("lattice basis is singular")
        # Columns of _inv_t give coordinates: coords(v) = v . basis^{-1}.
        object.__setattr__(self, "_inv_t", inverse(transpose(basis)))
        object.__setattr__(self, "_det", abs(dd))

    @property
    def dim(self) -> int:
        return len(self.basis)

    def to_coords(self, v: Vec) -> Vec:
        """Coefficients c with v = sum c_i basis_i."""
        return mat_vec(self._inv_t, v)

    def from_coords(self, c: Vec) -> Vec:
        return vec_mat(c, self.basis)


@dataclass(frozen=True)
class CosetKey:
    """Canonical identifier of a coset of L + W."""

    direction: Mat  # canonical basis of W
    rep: Vec        # reduced representative; reducing rep returns rep

    def __hash__(self):
        h = self.__dict__.get("_hash")
        if h is None:
            h = hash((self.direction, self.rep))
            object.__setattr__(self, "_hash", h)
        return h


def det_lattice(l: Lattice) -> Fraction:
    return l._det


def dual_basis(l: Lattice) -> Lattice:
    """Rows b* with <b_i, b*_j> = delta_ij."""
    return Lattice(transpose(inverse(l.basis)))


def contains(l: Lattice, v: Vec) -> bool:
    """True iff v is an integer combination of the basis rows."""
    return all(c.denominator == 1 for c in l.to_coords(v))


@functools.lru_cache(maxsize=4096)
def _coset_context(basis: Mat, w_basis: Mat):
    """Projection data for reduction modulo L + span(W).

    Returns (lat, pivots, free_cols, w_rref, proj_hnf) where proj_hnf is an
    upper-triangular rational basis of the projection of Z^d (in lattice
    coordinates) onto the free columns, along the RREF rows of W.
    """
    lat = Lattice(basis)
    d = lat.dim
    w_rows = tuple(lat.to_coords(w) for w in w_basis)
    w_red, pivots = rref(w_rows)
    if len(pivots) != len(w_basis):
        raise DegenerateInputError("subspace basis rows are linearly dependent")
    w_red = w_red[:len(pivots)]
    free = tuple(c for c in range(d) if c not in pivots)
    m = len(free)
    if m == 0:
        return lat, pivots, free, w_red, ()
    # Generators of the projected lattice: images of the unit coordinate
    # vectors under "subtract the W-combination that kills pivot coords".
    gens = []
    for j in range(d):
        if j in pivots:
            i = pivots.index(j)
            gens.append(tuple(-w_red[i][c] for c in free))
        else:
            gens.append(tuple(Fraction(1) if c == j else ZERO for c in free))
    denom = lcm(*(x.denominator for g in gens for x in g), 1)
    h = hnf(tuple(tuple(x * denom for x in g) for g in gens))
    proj = tuple(tuple(x / denom for x in row) for row in h if any(row))
    assert len(proj) == m, "projected lattice must have full rank"
    return lat, pivots, free, w_red, proj


def _project(ctx, coords: Vec) -> Vec:
    """Residual of coords on the free columns after killing pivot columns
    with W rows."""
    lat, pivots, free, w_red, _ = ctx
    res = list(coords[c] for c in free)
    for i, p in enumerate(pivots):
        t = coords[p]
        if t:
            for k, c in enumerate(free):
                res[k] -= t * w_red[i][c]
    return tuple(res)


def reduce_mod(l: Lattice, w_basis: Mat, v: Vec) -> Vec:
    """Canonical representative of v + (L + span(w_basis)).

    Idempotent; two vectors reduce equal iff their difference is in L + W.
    """
    ctx = _coset_context(l.basis, tuple(tuple(Fraction(x) for x in w) for w in w_basis))
    lat, pivots, free, _, proj = ctx
    if not free:
        return (ZERO,) * lat.dim
    u = list(_project(ctx, lat.to_coords(v)))
    for i in range(len(proj)):
        piv = proj[i][i]
        q = u[i] / piv
        q = Fraction(math.floor(q))
        if q:
            for j in range(i, len(u)):
                u[j] -= q * proj[i][j]
    coords = [ZERO] * lat.dim
    for k, c in enumerate(free):
        coords[c] = u[k]
    return lat.from_coords(tuple(coords))


def coset_contains(l: Lattice, w_basis: Mat, v: Vec) -> bool:
    """True iff v lies in L + span(w_basis)."""
    rep = reduce_mod(l, w_basis, v)
    return all(x == 0 for x in rep)


def coset_key(l: Lattice, w_basis: Mat, v: Vec) -> CosetKey:
    from .exact import canonical_subspace_basis

    direction = canonical_subspace_basis(tuple(tuple(Fraction(x) for x in w) for w in w_basis))
    return CosetKey(direction=direction, rep=reduce_mod(l, direction, v))


def enumerate_in_box(l: Lattice, lo: Vec, hi: Vec) -> list[Vec]:
    """All lattice points with lo <= p <= hi componentwise.

    Scans integer coefficient tuples in the basis-inverse image of the box.
    """
    d = l.dim
    lo = tuple(Fraction(x) for x in lo)
    hi = tuple(Fraction(x) for x in hi)
    if any(a > b for a, b in zip(lo, hi)):
        raise ValueError("box has lo > hi")
    corners = itertools.product(*[(lo[i], hi[i]) for i in range(d)])
    coord_corners = [l.to_coords(c) for c in corners]
    ranges = []
    for i in range(d):
        vals = [cc[i] for cc in coord_corners]
        ranges.append(range(math.ceil(min(vals)), math.floor(max(vals)) + 1))
    out = []
    for coeffs in itertools.product(*ranges):
        p = l.from_coords(tuple(Fraction(c) for c in coeffs))
        if all(lo[i] <= p[i] <= hi[i] for i in range(d)):
            out.append(p)
    return out

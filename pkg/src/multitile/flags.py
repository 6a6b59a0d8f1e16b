"""Face chains of simplices and canonical flag-orbit keys modulo a lattice.

A face chain S_r c S_{r+1} c ... c S_{d-1} of a simplex determines a flag of
nested affine subspaces (the affine hulls).  Its direction flag is the
sequence of linear parts with one canonical basis per level and one
sign-normalized normal per level; the orbit key adds the canonical coset
representative of the anchor point modulo L + W_r.  Two chains get equal
keys exactly when their flags are related by a lattice translation.
"""

from __future__ import annotations

import functools
import itertools
from dataclasses import dataclass
from fractions import Fraction

from .errors import MultitileError
from .exact import (
    Mat,
    Vec,
    ZERO,
    canonical_subspace_basis,
    det,
    dot,
    identity,
    in_span,
    inverse,
    mat_vec,
    primitive_vector,
    solve_linear,
    transpose,
    vadd,
    vsub,
)
from .geom import Simplex, _factorial
from .lattice import CosetKey, Lattice, reduce_mod


@dataclass(frozen=True)
class FaceChain:
    """Nested vertex-index subsets S_r c ... c S_{d-1} of one simplex."""

    simplex: Simplex
    levels: tuple[tuple[int, ...], ...]

    @property
    def r(self) -> int:
        return len(self.levels[0]) - 1

    def vertices_at(self, i: int) -> tuple[Vec, ...]:
        return tuple(self.simplex.vertices[k] for k in self.levels[i])

    def translate(self, t: Vec) -> "FaceChain":
        return FaceChain(self.simplex.translate(t), self.levels)


@dataclass(frozen=True)
class DirectionFlag:
    """Linear parts W_r c ... c W_{d-1} with canonical bases and normals.

    normals[j] lies in the next level up (the whole space at the top), is
    exactly orthogonal to the level-j linear part, and has positive first
    nonzero coordinate.
    """

    r: int
    bases: tuple[Mat, ...]
    normals: tuple[Vec, ...]

    def __hash__(self):
        # Rational hashes are costly; keys are hashed repeatedly in the
        # accumulator, so cache.
        h = self.__dict__.get("_hash")
        if h is None:
            h = hash((self.r, self.bases, self.normals))
            object.__setattr__(self, "_hash", h)
        return h


@dataclass(frozen=True)
class FlagOrbitKey:
    direction: DirectionFlag
    anchor: CosetKey

    def __hash__(self):
        h = self.__dict__.get("_hash")
        if h is None:
            h = hash((self.direction, self.anchor))
            object.__setattr__(self, "_hash", h)
        return h


@dataclass(frozen=True)
class ChainContribution:
    key: FlagOrbitKey
    value: Fraction


def face_chains(s: Simplex, r: int) -> list[FaceChain]:
    """All nested chains with |S_j| = j+1 from level r up to d-1.

    Count is (d+1)! / (r+1)!: one vertex is removed per level going down.
    """
    d = s.dim
    if not 0 <= r <= d - 1:
        raise ValueError(f"chain level {r} out of range 0..{d - 1}")
    full = tuple(range(d + 1))
    partial = [(sub,) for sub in itertools.combinations(full, d)]
    level_size = d
    while level_size > r + 1:
        nxt = []
        for chain in partial:
            for sub in itertools.combinations(chain[0], level_size - 1):
                nxt.append((sub,) + chain)
        partial = nxt
        level_size -= 1
    return [FaceChain(s, chain) for chain in partial]


def _subspace_of(points: tuple[Vec, ...]) -> Mat:
    base = points[0]
    return tuple(vsub(p, base) for p in points[1:])


def _orthogonalize(u: Vec, basis: Mat) -> Vec:
    """Component of u orthogonal to span(basis), scaled to a primitive
    integer vector with positive first nonzero coordinate."""
    if basis:
        gram = tuple(tuple(dot(a, b) for b in basis) for a in basis)
        sol = mat_vec(inverse(gram), tuple(dot(a, u) for a in basis))
        proj = tuple(sum((sol[i] * basis[i][k] for i in range(len(basis))), ZERO)
                     for k in range(len(u)))
        u = vsub(u, proj)
    return primitive_vector(u)


def _centroid(points: tuple[Vec, ...]) -> Vec:
    n = len(points)
    return tuple(sum((p[i] for p in points), ZERO) / n for i in range(len(points[0])))


@functools.lru_cache(maxsize=65536)
def _chain_geometry(rel_vertices: tuple[Vec, ...], levels: tuple[tuple[int, ...], ...]):
    """Translation-invariant data of a chain: (direction flag, sign product
    times relative volume, anchor offset from the first simplex vertex).

    Keyed on vertices relative to the first one, so all lattice translates
    of a simplex share one entry.
    """
    d = len(rel_vertices[0])
    r = len(levels[0]) - 1
    level_pts = [tuple(rel_vertices[k] for k in lv) for lv in levels]
    bases = [canonical_subspace_basis(_subspace_of(pts)) for pts in level_pts]
    full = identity(d)
    normals = []
    for j in range(len(bases)):
        upper = bases[j + 1] if j + 1 < len(bases) else full
        u = next(row for row in upper if not in_span(bases[j], row))
        normals.append(_orthogonalize(u, bases[j]))
    df = DirectionFlag(r=r, bases=tuple(bases), normals=tuple(normals))

    cents = [_centroid(pts) for pts in level_pts] + [_centroid(rel_vertices)]
    value = _relative_volume_of(level_pts[0], bases[0])
    for j, n in enumerate(normals):
        sgn = dot(vsub(cents[j + 1], cents[j]), n)
        if sgn == 0:
            raise MultitileError("zero adjacency sign: degenerate simplex slipped through")
        if sgn < 0:
            value = -value
    anchor_offset = min(level_pts[0])
    return df, value, anchor_offset


def _relative_volume_of(pts: tuple[Vec, ...], basis: Mat) -> Fraction:
    r = len(pts) - 1
    if r == 0:
        return Fraction(1)
    bt = transpose(basis)
    rows = tuple(solve_linear(bt, vsub(p, pts[0])) for p in pts[1:])
    return abs(det(rows)) / _factorial(r)


def _relative(c: FaceChain) -> tuple[Vec, ...]:
    v0 = c.simplex.vertices[0]
    return tuple(vsub(v, v0) for v in c.simplex.vertices)


def direction_flag_of(c: FaceChain) -> DirectionFlag:
    """Canonical direction flag of a chain; translation invariant."""
    df, _, _ = _chain_geometry(_relative(c), c.levels)
    return df


def epsilon_signs(c: FaceChain, df: DirectionFlag) -> tuple[int, ...]:
    """Sign of <centroid(F_{j+1}) - centroid(F_j), n_j> per level; never 0."""
    cents = [_centroid(c.vertices_at(i)) for i in range(len(c.levels))]
    cents.append(_centroid(c.simplex.vertices))
    signs = []
    for j, n in enumerate(df.normals):
        val = dot(vsub(cents[j + 1], cents[j]), n)
        if val == 0:
            raise MultitileError("zero adjacency sign: degenerate simplex slipped through")
        signs.append(1 if val > 0 else -1)
    return tuple(signs)


def relative_volume(c: FaceChain) -> Fraction:
    """r-volume of F_r measured in coordinates of the canonical basis of W_r.

    Exactly rational; equals the true r-volume times a positive constant that
    depends only on W_r, so comparisons within one orbit are exact.  A vertex
    has relative volume 1.
    """
    pts = c.vertices_at(0)
    if c.r == 0:
        return Fraction(1)
    return _relative_volume_of(pts, canonical_subspace_basis(_subspace_of(pts)))


def orbit_key(c: FaceChain, l: Lattice) -> FlagOrbitKey:
    """Canonical key of the chain's flag modulo translations by l."""
    df, _, offset = _chain_geometry(_relative(c), c.levels)
    anchor = vadd(c.simplex.vertices[0], offset)
    rep = reduce_mod(l, df.bases[0], anchor)
    return FlagOrbitKey(direction=df, anchor=CosetKey(direction=df.bases[0], rep=rep))


def chain_contribution(coeff: int, c: FaceChain, l: Lattice) -> ChainContribution:
    """Signed weight of one chain: coeff times the sign product times the
    relative r-volume, attached to the chain's orbit key."""
    if coeff == 0:
        raise ValueError("coefficient must be nonzero")
    df, value, offset = _chain_geometry(_relative(c), c.levels)
    anchor = vadd(c.simplex.vertices[0], offset)
    rep = reduce_mod(l, df.bases[0], anchor)
    key = FlagOrbitKey(direction=df, anchor=CosetKey(direction=df.bases[0], rep=rep))
    return ChainContribution(key=key, value=coeff * value)

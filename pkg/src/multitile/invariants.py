"""Hadwiger-style invariant accumulation per flag orbit and the top-level
decisions: multi-tiling, equidecomposability, group-element equivalence.

An element tiles at some level along a lattice exactly when every one of its
accumulated per-orbit invariant values vanishes; in that case the level is
volume divided by the lattice determinant, which is then necessarily an
integer.  Equidecomposability of two polytopes is volume equality plus the
vanishing of the accumulated invariants of their difference.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction

from .errors import InvalidFlagError
from .exact import Mat, Vec, canonical_subspace_basis, dot, identity, in_span, rank
from .flags import (
    DirectionFlag,
    FlagOrbitKey,
    chain_contribution,
    face_chains,
    _orthogonalize,
)
from .geom import GroupElement, Polytope, volume
from .lattice import CosetKey, Lattice, det_lattice, reduce_mod


@dataclass
class HadwigerReport:
    """Map from flag-orbit key to its exactly accumulated rational value.

    Only nonzero values are stored; an absent key means the value is zero.
    """

    dim: int
    lattice: Lattice
    entries: dict[FlagOrbitKey, Fraction]

    def is_zero(self) -> bool:
        return not self.entries

    def items_sorted(self) -> list[tuple[FlagOrbitKey, Fraction]]:
        return sorted(self.entries.items(), key=lambda kv: key_sort_string(kv[0]))


@dataclass(frozen=True)
class TilingVerdict:
    tiles: bool
    level: int | None
    witness: FlagOrbitKey | None


def _as_element(p: GroupElement | Polytope) -> GroupElement:
    return p.as_element() if isinstance(p, Polytope) else p


def key_document(key: FlagOrbitKey) -> dict:
    """JSON-style document of an orbit key (rationals as strings)."""
    return {
        "r": key.direction.r,
        "direction": [[[str(x) for x in row] for row in basis]
                      for basis in key.direction.bases],
        "normals": [[str(x) for x in n] for n in key.direction.normals],
        "anchor": [str(x) for x in key.anchor.rep],
    }


def key_sort_string(key: FlagOrbitKey) -> str:
    """Canonical serialization used for deterministic ordering of keys."""
    return json.dumps(key_document(key), sort_keys=True, separators=(",", ":"))


def hadwiger_accumulate(p: GroupElement | Polytope, l: Lattice) -> HadwigerReport:
    """Fold every chain of every term into the per-orbit map, for all levels
    r = 0..d-1; exact zeros are pruned after the full accumulation."""
    p = _as_element(p)
    if p.terms and p.dim != l.dim:
        raise ValueError("dimension mismatch between element and lattice")
    acc: dict[FlagOrbitKey, Fraction] = {}
    for m, s in p.terms:
        for r in range(p.dim):
            for chain in face_chains(s, r):
                contrib = chain_contribution(m, chain, l)
                acc[contrib.key] = acc.get(contrib.key, Fraction(0)) + contrib.value
    entries = {k: v for k, v in acc.items() if v != 0}
    return HadwigerReport(dim=p.dim, lattice=l, entries=entries)


def is_tiling(p: GroupElement | Polytope, l: Lattice) -> TilingVerdict:
    """Decide multi-tiling along l.

    Tiles iff the accumulated report is empty; the level is then
    volume / det(l) and is asserted to be an integer (a non-integer here
    would be an implementation bug, not bad input).
    """
    p = _as_element(p)
    report = hadwiger_accumulate(p, l)
    if report.is_zero():
        ratio = volume(p) / det_lattice(l)
        assert ratio.denominator == 1, f"tiling level {ratio} is not an integer"
        return TilingVerdict(tiles=True, level=int(ratio), witness=None)
    witness = min(report.entries, key=key_sort_string)
    return TilingVerdict(tiles=False, level=None, witness=witness)


def equidecomposable(a: Polytope, b: Polytope, l: Lattice) -> bool:
    """Can a be cut into finitely many polytope pieces that translate by
    lattice vectors onto a partition of b?  Equal volume plus vanishing
    invariants of the difference."""
    if a.dim != b.dim:
        raise ValueError("dimension mismatch")
    if volume(a) != volume(b):
        return False
    diff = a.as_element() - b.as_element()
    return hadwiger_accumulate(diff, l).is_zero()


def group_equivalent(p: GroupElement, q: GroupElement, l: Lattice) -> bool:
    """Equality of all invariants, the top level being volume equality."""
    if p.dim != q.dim:
        raise ValueError("dimension mismatch")
    if volume(p) != volume(q):
        return False
    return hadwiger_accumulate(p - q, l).is_zero()


@dataclass(frozen=True)
class AffineFlag:
    """Explicit flag: an anchor point, spanning sets for the linear parts of
    the nested subspaces (dimensions r, r+1, ..., d-1), and one orientation
    vector per level pointing into the chosen positive half-space."""

    anchor: Vec
    spans: tuple[Mat, ...]
    orientations: tuple[Vec, ...]


def h_at_flag(p: GroupElement | Polytope, flag: AffineFlag, l: Lattice) -> Fraction:
    """Invariant value at the orbit of an explicitly given flag, re-signed to
    the caller's orientation convention."""
    p = _as_element(p)
    d = l.dim
    spans = tuple(tuple(tuple(Fraction(x) for x in row) for row in span)
                  for span in flag.spans)
    bases = [canonical_subspace_basis(span) for span in spans]
    if len(bases) != len(flag.orientations):
        raise InvalidFlagError("need one orientation vector per level")
    r = d - len(bases)
    if r < 0 or (bases and len(bases[0]) != r):
        raise InvalidFlagError(
            f"lowest subspace must have dimension {max(r, 0)}, got {len(bases[0]) if bases else 'none'}")
    for j, basis in enumerate(bases):
        if len(basis) != r + j:
            raise InvalidFlagError(f"level {j} subspace must have dimension {r + j}")
        if j + 1 < len(bases) and rank(bases[j + 1] + basis) != len(bases[j + 1]):
            raise InvalidFlagError(f"level {j} subspace is not nested in level {j + 1}")
    if not bases:
        raise InvalidFlagError("a flag needs at least one subspace below the full space")

    normals = []
    flips = Fraction(1)
    full = identity(d)
    for j, basis in enumerate(bases):
        upper = bases[j + 1] if j + 1 < len(bases) else full
        u = flag.orientations[j]
        if not in_span(upper, u) or in_span(basis, u):
            raise InvalidFlagError(
                f"orientation vector at level {j} must lie in the next subspace but not the current one")
        n = _orthogonalize(next(row for row in upper if not in_span(basis, row)), basis)
        normals.append(n)
        side = dot(u, n)
        if side == 0:
            raise InvalidFlagError(f"orientation vector at level {j} is orthogonal to the normal")
        if side < 0:
            flips = -flips

    df = DirectionFlag(r=r, bases=tuple(bases), normals=tuple(normals))
    rep = reduce_mod(l, bases[0], flag.anchor)
    key = FlagOrbitKey(direction=df, anchor=CosetKey(direction=bases[0], rep=rep))
    report = hadwiger_accumulate(p, l)
    return flips * report.entries.get(key, Fraction(0))

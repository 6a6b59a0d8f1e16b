"""Constructive equidecomposition by lattice translations.

The construction follows the overlap-set recursion: pick the least lattice
vector with positive intersection volume, carve out the common part, emit it
with that shift, and recurse on the remainders.  The overlap set strictly
shrinks, so the recursion terminates.  Certificates are machine-checkable
without trusting the builder (pairwise volumes, volume sums, indicator
agreement at random points).
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

from .errors import NotEquidecomposableError, NotZeroTilerError
from .exact import Vec, ZERO, dot, vadd, vscale, vsub
from .geom import (
    GroupElement,
    Polytope,
    Simplex,
    bounding_box,
    canonicalize,
    indicator_value,
    intersect_convex,
    intersect_polytopes,
    subtract,
    volume,
)
from .invariants import equidecomposable, hadwiger_accumulate, is_tiling, key_sort_string
from .lattice import Lattice, enumerate_in_box


@dataclass(frozen=True)
class DecompositionCertificate:
    """Pieces of a partition of A together with the lattice shift taking each
    piece into the matching partition of B."""

    dim: int
    pieces: tuple[tuple[Simplex, Vec], ...]

    def source(self) -> Polytope:
        return Polytope(self.dim, tuple(s for s, _ in self.pieces), validate=False)

    def target(self) -> Polytope:
        return Polytope(self.dim, tuple(s.translate(t) for s, t in self.pieces),
                        validate=False)


def overlap_set(a: Polytope, b: Polytope, l: Lattice) -> list[Vec]:
    """All lattice vectors lam with vol(a intersect (b - lam)) > 0, ordered
    lexicographically by lattice coordinates."""
    if a.dim != b.dim:
        raise ValueError("dimension mismatch")
    if a.is_empty or b.is_empty:
        return []
    lo_a, hi_a = bounding_box(a)
    lo_b, hi_b = bounding_box(b)
    candidates = enumerate_in_box(l, vsub(lo_b, hi_a), vsub(hi_b, lo_a))
    out = []
    for lam in candidates:
        # Cheap reject: the shifted bounding boxes must overlap with volume.
        if any(hi_b[i] - lam[i] <= lo_a[i] or hi_a[i] <= lo_b[i] - lam[i]
               for i in range(a.dim)):
            continue
        shifted = b.translate(tuple(-x for x in lam))
        if any(intersect_convex(s, t).simplices
               for s in a.simplices for t in shifted.simplices):
            out.append(lam)
    out.sort(key=lambda lam: l.to_coords(lam))
    return out


def equidecompose(a: Polytope, b: Polytope, l: Lattice) -> DecompositionCertificate:
    """Build an explicit equidecomposition of a onto b.

    Raises NotEquidecomposableError (with the volume mismatch or the first
    nonzero invariant key) when no decomposition exists.
    """
    if a.dim != b.dim:
        raise ValueError("dimension mismatch")
    if volume(a) != volume(b):
        raise NotEquidecomposableError(
            f"volumes differ: {volume(a)} vs {volume(b)}")
    report = hadwiger_accumulate(a.as_element() - b.as_element(), l)
    if not report.is_zero():
        witness = min(report.entries, key=key_sort_string)
        raise NotEquidecomposableError(
            "a nonzero invariant separates the polytopes", witness=witness)

    pieces: list[tuple[Simplex, Vec]] = []
    cur_a, cur_b = a, b
    while not cur_a.is_empty:
        overlaps = overlap_set(cur_a, cur_b, l)
        assert overlaps, "empty overlap set for equivalent nonempty polytopes"
        lam = overlaps[0]
        common = intersect_polytopes(cur_a, cur_b.translate(tuple(-x for x in lam)))
        assert not common.is_empty
        pieces.extend((s, lam) for s in common.simplices)
        cur_a = subtract(cur_a, common)
        cur_b = subtract(cur_b, common.translate(lam))
    return DecompositionCertificate(dim=a.dim, pieces=tuple(pieces))


def check_certificate(a: Polytope, b: Polytope, l: Lattice,
                      cert: DecompositionCertificate,
                      samples: int = 1000, seed: int = 0) -> None:
    """Soundness check that does not trust the builder.

    Verifies: every shift is a lattice vector; pieces are pairwise interior
    disjoint on both sides; volume sums match; and the piece unions agree
    with a and b at random non-boundary points.  Raises AssertionError with
    a description on failure.
    """
    from .lattice import contains

    for s, t in cert.pieces:
        assert contains(l, t), f"shift {t} is not a lattice vector"
    src = [s for s, _ in cert.pieces]
    tgt = [s.translate(t) for s, t in cert.pieces]
    for side, sims in (("source", src), ("target", tgt)):
        for i in range(len(sims)):
            for j in range(i + 1, len(sims)):
                inter = intersect_convex(sims[i], sims[j])
                assert inter.is_empty, f"{side} pieces {i},{j} overlap"
    vol = sum((s._volume for s in src), ZERO)
    assert vol == volume(a), f"piece volumes sum to {vol}, expected {volume(a)}"
    assert vol == volume(b), "certificate volume differs from target volume"
    rng = random.Random(seed)
    lo_a, hi_a = bounding_box(a)
    lo_b, hi_b = bounding_box(b)
    src_poly = Polytope(a.dim, src, validate=False)
    tgt_poly = Polytope(b.dim, tgt, validate=False)
    for poly, union, lo, hi in ((a, src_poly, lo_a, hi_a), (b, tgt_poly, lo_b, hi_b)):
        checked = 0
        while checked < samples:
            x = tuple(lo[i] + Fraction(rng.getrandbits(30), 1 << 30) * (hi[i] - lo[i])
                      for i in range(a.dim))
            want = indicator_value(poly, x)
            got = indicator_value(union, x)
            if want is None or got is None:
                continue
            assert want == got, f"indicator mismatch at {x}: {want} vs {got}"
            checked += 1


def represent_zero_tiler(p: GroupElement, l: Lattice) -> list[tuple[Simplex, Vec, int]]:
    """Write a level-zero element as signed pairs (piece, shift, +-1), each
    pair meaning [piece] - [piece + shift].

    Positive and negative parts are first relocated (by multiples of the
    first basis vector, spaced beyond the total extent) so that each side
    becomes a genuine polytope, then the two relocated polytopes are
    equidecomposed.  Replaying all moves against p cancels it exactly.
    """
    verdict = is_tiling(p, l)
    if not verdict.tiles or verdict.level != 0:
        raise NotZeroTilerError(
            f"element does not tile at level zero (tiles={verdict.tiles}, level={verdict.level})")
    if p.is_empty:
        return []

    positives: list[Simplex] = []
    negatives: list[Simplex] = []
    for m, s in p.terms:
        (positives if m > 0 else negatives).extend([s] * abs(m))
    assert positives and negatives, "level-zero element must have both signs"

    b0 = l.basis[0]
    b0_norm = dot(b0, b0)
    all_vals = [dot(v, b0) / b0_norm for s in positives + negatives for v in s.vertices]
    extent = max(all_vals) - min(all_vals)
    step = Fraction(int(extent) + 1)  # integer multiple of b0 keeps shifts in l

    moves: list[tuple[Simplex, Vec, int]] = []
    relocated_pos: list[Simplex] = []
    for j, s in enumerate(positives):
        shift = vscale(j * step, b0)
        if any(shift):
            moves.append((s, shift, +1))
        relocated_pos.append(s.translate(shift))
    relocated_neg: list[Simplex] = []
    for k, s in enumerate(negatives):
        shift = vscale(k * step, b0)
        if any(shift):
            moves.append((s, shift, -1))
        relocated_neg.append(s.translate(shift))

    pos_poly = Polytope(p.dim, relocated_pos, validate=False)
    neg_poly = Polytope(p.dim, relocated_neg, validate=False)
    cert = equidecompose(pos_poly, neg_poly, l)
    moves.extend((s, t, +1) for s, t in cert.pieces)
    return moves


def replay_moves(p: GroupElement, moves: list[tuple[Simplex, Vec, int]]) -> GroupElement:
    """p minus the sum of the moves' pair elements, canonicalized.

    Empty output certifies that the moves represent p.
    """
    terms = list(p.terms)
    for s, t, c in moves:
        terms.append((-c, s))
        terms.append((c, s.translate(t)))
    return canonicalize(GroupElement(p.dim, tuple(terms)))

"""Dimension-specific tiling criteria, independent of the general engine.

These implement the classical characterizations directly on boundary
structure (interval endpoints, polygon edges, polyhedron facets and
four-legged edge frames), which makes them useful cross-checks for the
invariant-based decision.  Each check can record per-condition diagnostics
into an optional list for CLI reporting.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from .errors import DegenerateInputError, HypothesisNotMetError
from .exact import Vec, ZERO, primitive_vector, vadd, vscale, vsub
from .geom import (
    Polytope,
    convex_hull,
    hull_ring_2d,
    hull_triangles_3d,
    volume,
)
from .lattice import Lattice, contains, coset_contains, det_lattice, reduce_mod

Segment = tuple[Vec, Vec]


def _fmt(value) -> str:
    if isinstance(value, tuple):
        return "(" + ", ".join(_fmt(x) for x in value) + ")"
    return str(value)


def _record(checks, subject: str, condition: str, ok: bool, detail: str = ""):
    if checks is not None:
        checks.append({"subject": subject, "condition": condition,
                       "ok": ok, "detail": detail})
    return ok


def _level_of(vol: Fraction, l: Lattice) -> int:
    ratio = vol / det_lattice(l)
    assert ratio.denominator == 1, f"criterion passed but level {ratio} is not an integer"
    return int(ratio)


# ---------------------------------------------------------------------------
# Dimension one.

@dataclass(frozen=True)
class IntervalSet:
    """Disjoint closed intervals, sorted by left endpoint."""

    intervals: tuple[tuple[Fraction, Fraction], ...]

    def __post_init__(self):
        ivs = tuple((Fraction(a), Fraction(b)) for a, b in self.intervals)
        object.__setattr__(self, "intervals", ivs)
        for a, b in ivs:
            if a >= b:
                raise DegenerateInputError(f"empty interval [{a}, {b}]")
        for (a1, b1), (a2, b2) in zip(ivs, ivs[1:]):
            if b1 > a2:
                raise DegenerateInputError("intervals overlap")

    @classmethod
    def from_polytope(cls, p: Polytope) -> "IntervalSet":
        if p.dim != 1:
            raise DegenerateInputError("interval set requires a one-dimensional polytope")
        segs = sorted((min(v[0] for v in s.vertices), max(v[0] for v in s.vertices))
                      for s in p.simplices)
        merged: list[list[Fraction]] = []
        for a, b in segs:
            if merged and a <= merged[-1][1]:
                merged[-1][1] = max(merged[-1][1], b)
            else:
                merged.append([a, b])
        return cls(tuple((a, b) for a, b in merged))

    def total_length(self) -> Fraction:
        return sum((b - a for a, b in self.intervals), ZERO)


def tiles_1d(s: IntervalSet, l: Lattice, checks=None) -> int | None:
    """A union of intervals tiles iff left and right endpoints can be matched
    in pairs whose differences are lattice elements; equivalently, the
    multisets of endpoint residues agree."""
    if l.dim != 1:
        raise DegenerateInputError("tiles_1d needs a one-dimensional lattice")
    lefts = sorted(reduce_mod(l, (), (a,)) for a, _ in s.intervals)
    rights = sorted(reduce_mod(l, (), (b,)) for _, b in s.intervals)
    ok = _record(checks, "endpoints", "residue multisets match", lefts == rights,
                 f"left {[_fmt(x) for x in lefts]} right {[_fmt(x) for x in rights]}")
    if not ok:
        return None
    return _level_of(s.total_length(), l)


# ---------------------------------------------------------------------------
# Dimension two.

@dataclass(frozen=True)
class ConvexPolygon:
    """Strictly convex polygon, counterclockwise vertex ring."""

    vertices: tuple[Vec, ...]

    def __post_init__(self):
        verts = tuple(tuple(Fraction(x) for x in v) for v in self.vertices)
        object.__setattr__(self, "vertices", verts)
        n = len(verts)
        if n < 3:
            raise DegenerateInputError("polygon needs at least 3 vertices")
        for i in range(n):
            a, b, c = verts[i], verts[(i + 1) % n], verts[(i + 2) % n]
            cross = (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])
            if cross <= 0:
                raise DegenerateInputError(
                    "vertex ring is not strictly convex counterclockwise")

    @classmethod
    def from_points(cls, points) -> "ConvexPolygon":
        return cls(tuple(hull_ring_2d([tuple(Fraction(x) for x in p) for p in points])))

    def edges(self) -> list[Segment]:
        n = len(self.vertices)
        return [(self.vertices[i], self.vertices[(i + 1) % n]) for i in range(n)]

    def centroid_of_vertices(self) -> Vec:
        n = len(self.vertices)
        return tuple(sum((v[i] for v in self.vertices), ZERO) / n for i in range(2))

    def area(self) -> Fraction:
        total = ZERO
        for (p, q) in self.edges():
            total += p[0] * q[1] - q[0] * p[1]
        return total / 2


def _is_centrally_symmetric(points: tuple[Vec, ...]) -> tuple[bool, Vec]:
    n = len(points)
    center = tuple(sum((p[i] for p in points), ZERO) / n for i in range(len(points[0])))
    reflected = sorted(tuple(2 * center[i] - p[i] for i in range(len(p))) for p in points)
    return sorted(points) == reflected, center


def bolle(p: ConvexPolygon, l: Lattice, checks=None) -> int | None:
    """Convex polygon criterion: central symmetry plus, per parallel edge
    pair, (i) some lattice translate of one edge is colinear with the other
    and (ii) if the edge vector is not in the lattice, the carrying vector
    between the pair is."""
    symmetric, center = _is_centrally_symmetric(p.vertices)
    if not _record(checks, "polygon", "centrally symmetric", symmetric):
        return None
    n = len(p.vertices)
    verts = p.vertices
    ok = True
    for i in range(n // 2):
        a, b = verts[i], verts[(i + 1) % n]
        edge = vsub(b, a)
        tau = vsub(vscale(Fraction(2), center), vadd(a, b))
        name = f"edge {i}"
        colinear = coset_contains(l, (edge,), tau)
        ok &= _record(checks, name, "lattice translate onto parallel edge line",
                      colinear, f"tau={_fmt(tau)}")
        if not contains(l, edge):
            carried = contains(l, tau)
            ok &= _record(checks, name, "edge vector not in lattice, carrying vector is",
                          carried, f"edge={_fmt(edge)} tau={_fmt(tau)}")
    if not ok:
        return None
    return _level_of(p.area(), l)


def boundary_edges_2d(p: Polytope) -> list[Segment]:
    """Maximal straight boundary segments of a triangulated planar region.

    Triangle edges are refined at every vertex lying in their relative
    interior (interior contacts of an interior-disjoint triangulation always
    happen at vertices), boundary pieces are the refined segments used by
    exactly one triangle, and collinear touching pieces are merged back into
    maximal segments.
    """
    if p.dim != 2:
        raise DegenerateInputError("boundary extraction requires a planar polytope")
    all_vertices = sorted({v for s in p.simplices for v in s.vertices})
    counts: dict[frozenset, int] = {}
    for s in p.simplices:
        for a, b in itertools.combinations(s.vertices, 2):
            direction = vsub(b, a)
            splits = [a, b]
            for v in all_vertices:
                if v == a or v == b:
                    continue
                av = vsub(v, a)
                if av[0] * direction[1] - av[1] * direction[0] != 0:
                    continue
                t = (av[0] / direction[0]) if direction[0] else (av[1] / direction[1])
                if 0 < t < 1:
                    splits.append(v)
            splits.sort()
            for u, w in zip(splits, splits[1:]):
                key = frozenset((u, w))
                counts[key] = counts.get(key, 0) + 1
    pieces = [tuple(sorted(k)) for k, c in counts.items() if c == 1]
    # Merge collinear touching pieces; group by supporting line.
    by_line: dict[tuple, list[Segment]] = {}
    for a, b in pieces:
        u = primitive_vector(vsub(b, a))
        c = a[0] * u[1] - a[1] * u[0]
        by_line.setdefault((u, c), []).append((a, b))
    out: list[Segment] = []
    for (u, _), segs in by_line.items():
        segs.sort()
        cur_a, cur_b = segs[0]
        for a, b in segs[1:]:
            if a == cur_b:
                cur_b = b
            else:
                out.append((cur_a, cur_b))
                cur_a, cur_b = a, b
        out.append((cur_a, cur_b))
    return sorted(out)


def _carrying_vector(e: Segment, f: Segment) -> Vec:
    """Translation taking segment e onto segment f (parallel, same length)."""
    (p, q), (p2, q2) = e, f
    if vsub(q, p) == vsub(q2, p2):
        return vsub(p2, p)
    return vsub(p2, q)


def kolountzakis(p: Polytope | ConvexPolygon, l: Lattice, checks=None) -> int | None:
    """Planar criterion for polygons in which every edge has at most one
    parallel partner: each edge needs an equal-length parallel partner,
    a lattice translate onto the partner's line, and, when the edge vector
    is not in the lattice, a lattice carrying vector.

    Raises HypothesisNotMetError when some edge has two or more parallel
    partners.
    """
    if isinstance(p, ConvexPolygon):
        edges = p.edges()
        area = p.area()
    else:
        edges = boundary_edges_2d(p)
        area = volume(p)
    dirs = [primitive_vector(vsub(b, a)) for a, b in edges]
    ok = True
    for i, e in enumerate(edges):
        partners = [j for j in range(len(edges)) if j != i and dirs[j] == dirs[i]]
        if len(partners) > 1:
            raise HypothesisNotMetError(
                f"edge {i} has {len(partners)} parallel partners")
        name = f"edge {i}"
        if not partners:
            ok &= _record(checks, name, "parallel partner exists", False)
            continue
        f = edges[partners[0]]
        ve, vf = vsub(e[1], e[0]), vsub(f[1], f[0])
        same_len = sum(x * x for x in ve) == sum(x * x for x in vf)
        ok &= _record(checks, name, "partner has equal length", same_len)
        if not same_len:
            continue
        colinear = coset_contains(l, (ve,), vsub(f[0], e[0]))
        ok &= _record(checks, name, "lattice translate onto partner line", colinear)
        if not contains(l, ve):
            tau = _carrying_vector(e, f)
            ok &= _record(checks, name, "edge vector not in lattice, carrying vector is",
                          contains(l, tau), f"tau={_fmt(tau)}")
    if not ok:
        return None
    return _level_of(area, l)


# ---------------------------------------------------------------------------
# Dimension three.

@dataclass(frozen=True)
class ConvexPolytope3:
    """Convex polytope in space: hull vertices, facet vertex rings (outward
    oriented), and facet adjacency through edges."""

    vertices: tuple[Vec, ...]
    facets: tuple[tuple[Vec, ...], ...]

    @classmethod
    def from_points(cls, points) -> "ConvexPolytope3":
        tris = hull_triangles_3d([tuple(Fraction(x) for x in p) for p in points])
        groups: dict[tuple, list] = {}
        for a, b, c in tris:
            u, v = vsub(b, a), vsub(c, a)
            normal = (u[1] * v[2] - u[2] * v[1],
                      u[2] * v[0] - u[0] * v[2],
                      u[0] * v[1] - u[1] * v[0])
            nprim = primitive_vector(normal)
            offset = sum(nprim[i] * a[i] for i in range(3))
            groups.setdefault((nprim, offset), []).append((a, b, c))
        facets = []
        for tris_in_plane in groups.values():
            facets.append(_ring_of_triangles(tris_in_plane))
        verts = tuple(sorted({v for f in facets for v in f}))
        return cls(vertices=verts, facets=tuple(facets))

    def facet_edges(self, facet: tuple[Vec, ...]) -> list[Segment]:
        n = len(facet)
        return [(facet[i], facet[(i + 1) % n]) for i in range(n)]

    def volume(self) -> Fraction:
        return volume(convex_hull(list(self.vertices)))


def _ring_of_triangles(tris) -> tuple[Vec, ...]:
    """Boundary vertex ring of a set of coplanar, consistently oriented
    triangles forming a convex facet."""
    directed: dict[Vec, Vec] = {}
    edge_set = set()
    for t in tris:
        for e in ((t[0], t[1]), (t[1], t[2]), (t[2], t[0])):
            edge_set.add(e)
    for e in edge_set:
        if (e[1], e[0]) not in edge_set:
            directed[e[0]] = e[1]
    start = min(directed)
    ring = [start]
    cur = directed[start]
    while cur != start:
        ring.append(cur)
        cur = directed[cur]
    return tuple(ring)


@dataclass(frozen=True)
class FourLeggedFrame:
    """Four parallel equal edges spanned by a facet-to-facet translation and
    an in-facet edge-to-edge translation."""

    e: Segment
    tau1: Vec  # carries the facet onto its opposite facet
    tau2: Vec  # carries the edge onto its partner inside the facet

    def legs(self) -> tuple[Segment, Segment, Segment, Segment]:
        def shift(seg: Segment, t: Vec) -> Segment:
            return (vadd(seg[0], t), vadd(seg[1], t))

        return (self.e, shift(self.e, self.tau1), shift(self.e, self.tau2),
                shift(shift(self.e, self.tau1), self.tau2))

    def canonical(self):
        """Identity up to the choices that provably do not change the three
        conditions: starting leg within the facet pair and facet order.

        The same four legs can also arise from the other facet pair that
        contains them; those frames carry different (tau1, tau2) roles and
        must be kept separate, so the facet pair stays in the key.
        """
        legs = frozenset(frozenset(seg) for seg in self.legs())
        return (legs, primitive_vector(self.tau1))


def enumerate_frames(p: ConvexPolytope3) -> list[FourLeggedFrame]:
    """All four-legged frames of a centrally symmetric polytope with
    centrally symmetric facets, one representative per (leg set, facet pair)."""
    _, center = _is_centrally_symmetric(p.vertices)
    frames: dict = {}
    for facet in p.facets:
        sym, fcenter = _is_centrally_symmetric(facet)
        assert sym, "enumerate_frames requires centrally symmetric facets"
        tau1 = vsub(vscale(Fraction(2), center), vscale(Fraction(2), fcenter))
        for a, b in p.facet_edges(facet):
            tau2 = vsub(vscale(Fraction(2), fcenter), vadd(a, b))
            frame = FourLeggedFrame(e=(a, b), tau1=tau1, tau2=tau2)
            frames.setdefault(frame.canonical(), frame)
    def sort_key(key):
        legs, tau1_dir = key
        return (sorted(sorted(sorted(pt) for pt in seg) for seg in legs), tau1_dir)

    return [frames[k] for k in sorted(frames, key=sort_key)]


def frames_3d(p: ConvexPolytope3, l: Lattice, checks=None) -> int | None:
    """Spatial criterion: central symmetry of the polytope and of every
    facet, plus three per-frame lattice conditions on the facet planes, the
    edge lines and the diagonal edge vectors."""
    symmetric, center = _is_centrally_symmetric(p.vertices)
    if not _record(checks, "polytope", "centrally symmetric", symmetric):
        return None
    facets_ok = True
    for idx, facet in enumerate(p.facets):
        sym, _ = _is_centrally_symmetric(facet)
        facets_ok &= _record(checks, f"facet {idx}", "centrally symmetric", sym)
    if not facets_ok:
        return None
    ok = True
    for idx, frame in enumerate(enumerate_frames(p)):
        name = f"frame {idx}"
        a, b = frame.e
        ve = vsub(b, a)
        plane_span = (ve, frame.tau2)
        cond1 = coset_contains(l, plane_span, frame.tau1)
        ok &= _record(checks, name, "facet plane reachable by lattice translate",
                      cond1, f"tau'={_fmt(frame.tau1)}")
        cond2 = (coset_contains(l, (ve,), frame.tau1)
                 or coset_contains(l, (ve,), frame.tau2))
        ok &= _record(checks, name, "edge line reachable onto a parallel leg", cond2)
        if not (contains(l, ve) or contains(l, frame.tau1) or contains(l, frame.tau2)):
            diag = all(contains(l, vadd(ve, vadd(vscale(Fraction(s1), frame.tau1),
                                                 vscale(Fraction(s2), frame.tau2))))
                       for s1 in (1, -1) for s2 in (1, -1))
            ok &= _record(checks, name,
                          "no frame vector in lattice, all four diagonals are",
                          diag)
    if not ok:
        return None
    return _level_of(p.volume(), l)


# ---------------------------------------------------------------------------
# Sufficient condition in any of the supported dimensions (d <= 3).

def grs_sufficient(points_or_polytope, l: Lattice, relaxed: bool = False,
                   checks=None) -> int | None:
    """Sufficient condition: centrally symmetric with centrally symmetric
    facets and all vertices in the lattice (strict), or all facet carrying
    vectors in the lattice (relaxed).  Absence means inconclusive."""
    d = l.dim
    if isinstance(points_or_polytope, Polytope):
        pts = [v for s in points_or_polytope.simplices for v in s.vertices]
        input_volume = volume(points_or_polytope)
    else:
        pts = [tuple(Fraction(x) for x in p) for p in points_or_polytope]
        input_volume = None
    hull = convex_hull(pts)
    if input_volume is not None and volume(hull) != input_volume:
        _record(checks, "polytope", "input is convex", False,
                "hull volume differs from input volume")
        return None

    if d == 1:
        xs = sorted(x for p in pts for x in p)
        a, b = (xs[0],), (xs[-1],)
        vertices: tuple[Vec, ...] = (a, b)
        center = ((a[0] + b[0]) / 2,)
        facet_centers: list[Vec] = [a, b]
        symmetric = True
        facets_ok = True
    elif d == 2:
        ring = hull_ring_2d(pts)
        vertices = tuple(ring)
        symmetric, center = _is_centrally_symmetric(vertices)
        facets_ok = True  # every segment is centrally symmetric
        n = len(ring)
        facet_centers = [tuple((ring[i][k] + ring[(i + 1) % n][k]) / 2 for k in range(2))
                         for i in range(n)]
    elif d == 3:
        poly3 = ConvexPolytope3.from_points(pts)
        vertices = poly3.vertices
        symmetric, center = _is_centrally_symmetric(vertices)
        facets_ok = True
        facet_centers = []
        for idx, facet in enumerate(poly3.facets):
            sym, fc = _is_centrally_symmetric(facet)
            facets_ok &= _record(checks, f"facet {idx}", "centrally symmetric", sym)
            facet_centers.append(fc)
    else:
        raise DegenerateInputError("supported in dimensions 1..3 only")

    if not _record(checks, "polytope", "centrally symmetric", symmetric):
        return None
    if not facets_ok:
        return None
    if relaxed:
        ok = True
        for i, fc in enumerate(facet_centers):
            lam = vsub(vscale(Fraction(2), center), vscale(Fraction(2), fc))
            ok &= _record(checks, f"facet {i}", "carrying vector in lattice",
                          contains(l, lam), f"lambda={_fmt(lam)}")
        if not ok:
            return None
    else:
        ok = True
        for v in vertices:
            ok &= _record(checks, f"vertex {_fmt(v)}", "lies in lattice", contains(l, v))
        if not ok:
            return None
    return _level_of(volume(hull), l)

"""Simplices, polytopes, group elements and exact boolean operations.

A polytope is a finite union of full-dimensional simplices with pairwise
disjoint interiors; a group element is a formal integer combination of
simplices whose meaning is its indicator function up to measure zero.
All coordinates are Fractions, all predicates exact.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import DegenerateInputError, InvalidSimplexError, UnsupportedDimensionError
from .exact import (
    Mat,
    Vec,
    ZERO,
    det,
    dot,
    inverse,
    kernel_basis,
    mat_vec,
    vadd,
    vscale,
    vsub,
)

INTERIOR = "interior"
BOUNDARY = "boundary"
OUTSIDE = "outside"

_FACT = [1, 1, 2, 6, 24, 120, 720, 5040]


def _factorial(n: int) -> int:
    while len(_FACT) <= n:
        _FACT.append(_FACT[-1] * len(_FACT))
    return _FACT[n]


@dataclass(frozen=True)
class Simplex:
    """d+1 affinely independent vertices in ambient dimension d."""

    vertices: tuple[Vec, ...]
    _edge_inv: Mat = field(init=False, repr=False, compare=False)
    _volume: Fraction = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        verts = tuple(tuple(Fraction(x) for x in v) for v in self.vertices)
        object.__setattr__(self, "vertices", verts)
        if not verts:
            raise InvalidSimplexError("empty vertex list")
        d = len(verts[0])
        if d < 1 or len(verts) != d + 1 or any(len(v) != d for v in verts):
            raise InvalidSimplexError(f"need d+1 vertices of dimension d, got {len(verts)} in dim {d}")
        edges = tuple(vsub(v, verts[0]) for v in verts[1:])
        dd = det(edges)
        if dd == 0:
            raise InvalidSimplexError("vertices are affinely dependent")
        inv = inverse(tuple(zip(*edges)))  # columns are edge vectors
        object.__setattr__(self, "_edge_inv", inv)
        object.__setattr__(self, "_volume", abs(dd) / _factorial(d))

    @property
    def dim(self) -> int:
        return len(self.vertices[0])

    def barycentric(self, x: Vec) -> tuple[Fraction, ...]:
        """Exact barycentric coordinates of x (sum to 1)."""
        coeffs = mat_vec(self._edge_inv, vsub(x, self.vertices[0]))
        return (1 - sum(coeffs),) + tuple(coeffs)

    def translate(self, t: Vec) -> "Simplex":
        return Simplex(tuple(vadd(v, t) for v in self.vertices))


def simplex_volume(s: Simplex) -> Fraction:
    """|det of edge vectors| / d!; strictly positive."""
    return s._volume


def faces(s: Simplex, j: int) -> list[tuple[Vec, ...]]:
    """All j-dimensional faces as (j+1)-subsets of the vertex set."""
    d = s.dim
    if not 0 <= j <= d:
        raise ValueError(f"face dimension {j} out of range 0..{d}")
    return [tuple(s.vertices[i] for i in idx)
            for idx in itertools.combinations(range(d + 1), j + 1)]


def point_location(s: Simplex, x: Vec) -> str:
    """Classify x as interior / boundary / outside by exact barycentrics."""
    coords = s.barycentric(x)
    if any(c < 0 for c in coords):
        return OUTSIDE
    if any(c == 0 for c in coords):
        return BOUNDARY
    return INTERIOR


@dataclass(frozen=True)
class Polytope:
    """Union of same-dimension simplices with pairwise disjoint interiors."""

    dim: int
    simplices: tuple[Simplex, ...]

    def __init__(self, dim: int, simplices, validate: bool = True):
        object.__setattr__(self, "dim", dim)
        object.__setattr__(self, "simplices", tuple(simplices))
        for s in self.simplices:
            if s.dim != dim:
                raise InvalidSimplexError(f"simplex of dimension {s.dim} in polytope of dimension {dim}")
        if validate:
            self._check_disjoint()

    def _check_disjoint(self):
        ss = self.simplices
        for i in range(len(ss)):
            for j in range(i + 1, len(ss)):
                if intersect_convex(ss[i], ss[j]).simplices:
                    raise InvalidSimplexError(
                        f"simplices {i} and {j} have overlapping interiors")

    @property
    def is_empty(self) -> bool:
        return not self.simplices

    def translate(self, t: Vec) -> "Polytope":
        return Polytope(self.dim, tuple(s.translate(t) for s in self.simplices), validate=False)

    def volume(self) -> Fraction:
        return sum((s._volume for s in self.simplices), ZERO)

    def as_element(self) -> "GroupElement":
        return GroupElement(self.dim, tuple((1, s) for s in self.simplices))


@dataclass(frozen=True)
class GroupElement:
    """Formal integer combination of simplices; identity is its indicator a.e."""

    dim: int
    terms: tuple[tuple[int, Simplex], ...]

    def __post_init__(self):
        object.__setattr__(self, "terms", tuple((int(m), s) for m, s in self.terms))
        for m, s in self.terms:
            if m == 0:
                raise ValueError("zero coefficient in group element")
            if s.dim != self.dim:
                raise InvalidSimplexError("mixed ambient dimensions in group element")

    def __add__(self, other: "GroupElement") -> "GroupElement":
        if other.dim != self.dim:
            raise ValueError("dimension mismatch")
        return GroupElement(self.dim, self.terms + other.terms)

    def __neg__(self) -> "GroupElement":
        return GroupElement(self.dim, tuple((-m, s) for m, s in self.terms))

    def __sub__(self, other: "GroupElement") -> "GroupElement":
        return self + (-other)

    def translate(self, t: Vec) -> "GroupElement":
        return GroupElement(self.dim, tuple((m, s.translate(t)) for m, s in self.terms))

    @property
    def is_empty(self) -> bool:
        return not self.terms


def empty_element(dim: int) -> GroupElement:
    return GroupElement(dim, ())


def volume(p: GroupElement | Polytope) -> Fraction:
    """Signed volume: sum of coeff times simplex volume."""
    if isinstance(p, Polytope):
        return p.volume()
    return sum((m * s._volume for m, s in p.terms), ZERO)


def indicator_value(p: GroupElement | Polytope, x: Vec) -> int | None:
    """Value of the indicator at x, or None when x lies on a cell boundary."""
    if isinstance(p, Polytope):
        p = p.as_element()
    total = 0
    for m, s in p.terms:
        loc = point_location(s, x)
        if loc == BOUNDARY:
            return None
        if loc == INTERIOR:
            total += m
    return total


# ---------------------------------------------------------------------------
# Boolean operations.  A simplex is carved by a hyperplane by recursively
# splitting along edges whose endpoints lie strictly on opposite sides; each
# split replaces one simplex with two, and the number of strictly crossing
# vertex pairs decreases, so the recursion terminates with every piece on a
# single closed side.

def _split_simplex(s: Simplex, normal: Vec, offset: Fraction) -> tuple[list[Simplex], list[Simplex]]:
    """Split s by the hyperplane <normal, x> = offset.

    Returns (pieces on the <= side, pieces on the >= side); both lists
    triangulate their side exactly.
    """
    below: list[Simplex] = []
    above: list[Simplex] = []
    stack = [s]
    while stack:
        cur = stack.pop()
        vals = [dot(normal, v) - offset for v in cur.vertices]
        crossing = None
        for i, j in itertools.combinations(range(len(vals)), 2):
            if vals[i] * vals[j] < 0:
                crossing = (i, j)
                break
        if crossing is None:
            if any(v < 0 for v in vals):
                below.append(cur)
            else:
                above.append(cur)
            continue
        i, j = crossing
        t = vals[i] / (vals[i] - vals[j])
        mid = vadd(cur.vertices[i], vscale(t, vsub(cur.vertices[j], cur.vertices[i])))
        va = list(cur.vertices)
        va[i] = mid
        vb = list(cur.vertices)
        vb[j] = mid
        stack.append(Simplex(tuple(va)))
        stack.append(Simplex(tuple(vb)))
    return below, above


def _facet_halfspaces(s: Simplex) -> list[tuple[Vec, Fraction]]:
    """Half-spaces (n, c) with s = intersection of {<n, x> <= c}, one per facet.

    Fixed order: the facet opposite vertex i comes i-th.
    """
    out = []
    for i in range(len(s.vertices)):
        rest = [v for k, v in enumerate(s.vertices) if k != i]
        spanning = tuple(vsub(v, rest[0]) for v in rest[1:])
        normals = kernel_basis(spanning) if spanning else kernel_basis(((ZERO,) * s.dim,))
        n = normals[0]
        c = dot(n, rest[0])
        if dot(n, s.vertices[i]) > c:
            n, c = vscale(Fraction(-1), n), -c
        out.append((n, c))
    return out


def _boxes_strictly_overlap(s: Simplex, t: Simplex) -> bool:
    for i in range(s.dim):
        s_lo = min(v[i] for v in s.vertices)
        s_hi = max(v[i] for v in s.vertices)
        t_lo = min(v[i] for v in t.vertices)
        t_hi = max(v[i] for v in t.vertices)
        if s_hi <= t_lo or t_hi <= s_lo:
            return False
    return True


def intersect_convex(s: Simplex, t: Simplex) -> Polytope:
    """Triangulated s intersect t; lower-dimensional contact yields empty."""
    if s.dim != t.dim:
        raise ValueError("dimension mismatch")
    if not _boxes_strictly_overlap(s, t):
        return Polytope(s.dim, (), validate=False)
    pieces = [s]
    for n, c in _facet_halfspaces(t):
        nxt: list[Simplex] = []
        for p in pieces:
            nxt.extend(_split_simplex(p, n, c)[0])
        pieces = nxt
        if not pieces:
            break
    return Polytope(s.dim, pieces, validate=False)


def _subtract_simplex(p: Simplex, t: Simplex) -> list[Simplex]:
    """Triangulation of closure(p minus t): carve p by t's facet half-spaces,
    emitting the outside slab at each step."""
    if not _boxes_strictly_overlap(p, t):
        return [p]
    out: list[Simplex] = []
    inside = [p]
    for n, c in _facet_halfspaces(t):
        nxt: list[Simplex] = []
        for q in inside:
            below, above = _split_simplex(q, n, c)
            out.extend(above)
            nxt.extend(below)
        inside = nxt
        if not inside:
            break
    return out


def intersect_polytopes(a: Polytope, b: Polytope) -> Polytope:
    """Union over simplex pairs of pairwise intersections."""
    if a.dim != b.dim:
        raise ValueError("dimension mismatch")
    pieces: list[Simplex] = []
    for s in a.simplices:
        for t in b.simplices:
            pieces.extend(intersect_convex(s, t).simplices)
    return Polytope(a.dim, pieces, validate=False)


def subtract(a: Polytope, b: Polytope) -> Polytope:
    """Triangulated closure(a minus b), equal up to measure zero."""
    if a.dim != b.dim:
        raise ValueError("dimension mismatch")
    pieces: list[Simplex] = []
    for s in a.simplices:
        parts = [s]
        for t in b.simplices:
            parts = [piece for q in parts for piece in _subtract_simplex(q, t)]
            if not parts:
                break
        pieces.extend(parts)
    return Polytope(a.dim, pieces, validate=False)


def canonicalize(p: GroupElement) -> GroupElement:
    """Overlay all terms into pairwise disjoint cells carrying the a.e. value
    of the indicator; cells with value zero are dropped."""
    cells: list[tuple[int, Simplex]] = []
    for m, s in p.terms:
        incoming = [s]
        updated: list[tuple[int, Simplex]] = []
        for c, t in cells:
            overlap: list[Simplex] = []
            for piece in incoming:
                overlap.extend(intersect_convex(t, piece).simplices)
            t_rest = [t]
            for piece in incoming:
                t_rest = [r for q in t_rest for r in _subtract_simplex(q, piece)]
            incoming = [r for piece in incoming for r in _subtract_simplex(piece, t)]
            if c + m != 0:
                updated.extend((c + m, o) for o in overlap)
            updated.extend((c, r) for r in t_rest)
        if m != 0:
            updated.extend((m, q) for q in incoming)
        cells = updated
    return GroupElement(p.dim, tuple(cells))


# ---------------------------------------------------------------------------
# Convex hulls, exact, ambient dimension <= 3.

def _orient2d(a: Vec, b: Vec, c: Vec) -> Fraction:
    return (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])


def _orient3d(a: Vec, b: Vec, c: Vec, d: Vec) -> Fraction:
    return det((vsub(b, a), vsub(c, a), vsub(d, a)))


def hull_ring_2d(points: list[Vec]) -> list[Vec]:
    """Counterclockwise vertex ring of the 2D convex hull (monotone chain)."""
    pts = sorted(set(tuple(p) for p in points))
    if len(pts) < 3:
        raise DegenerateInputError("need at least 3 distinct points in the plane")
    lower: list[Vec] = []
    for p in pts:
        while len(lower) >= 2 and _orient2d(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    upper: list[Vec] = []
    for p in reversed(pts):
        while len(upper) >= 2 and _orient2d(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    ring = lower[:-1] + upper[:-1]
    if len(ring) < 3:
        raise DegenerateInputError("points are collinear")
    return ring


def hull_triangles_3d(points: list[Vec]) -> list[tuple[Vec, Vec, Vec]]:
    """Outward-oriented triangles of the 3D convex hull (incremental, exact).

    Coplanar facets come out triangulated; orientation is such that
    _orient3d(tri, inner point) < 0.
    """
    pts = sorted(set(tuple(p) for p in points))
    if len(pts) < 4:
        raise DegenerateInputError("need at least 4 distinct points in space")
    # Deterministic affinely independent seed.
    a = pts[0]
    b = pts[1]
    c = next((p for p in pts if _independent2(vsub(b, a), vsub(p, a))), None)
    if c is None:
        raise DegenerateInputError("points are collinear")
    d = next((p for p in pts if _orient3d(a, b, c, p) != 0), None)
    if d is None:
        raise DegenerateInputError("points are coplanar")
    if _orient3d(a, b, c, d) > 0:
        a, b = b, a
    tris = [(a, b, c), (a, d, b), (a, c, d), (b, d, c)]
    for p in pts:
        if p in (a, b, c, d):
            continue
        visible = [t for t in tris if _orient3d(*t, p) > 0]
        if not visible:
            continue
        visible_set = set(visible)
        horizon = []
        for t in visible:
            for e in ((t[0], t[1]), (t[1], t[2]), (t[2], t[0])):
                # Edge is on the horizon if its mirrored twin is not visible.
                twin_owner = next((u for u in tris
                                   if u not in visible_set and _has_edge(u, (e[1], e[0]))), None)
                if twin_owner is not None:
                    horizon.append(e)
        tris = [t for t in tris if t not in visible_set]
        tris.extend((e[0], e[1], p) for e in horizon)
    return tris


def _independent2(u: Vec, v: Vec) -> bool:
    for i, j in itertools.combinations(range(len(u)), 2):
        if u[i] * v[j] - u[j] * v[i] != 0:
            return True
    return False


def _has_edge(tri, e) -> bool:
    edges = ((tri[0], tri[1]), (tri[1], tri[2]), (tri[2], tri[0]))
    return e in edges


def convex_hull(points: list[Vec]) -> Polytope:
    """Triangulated convex hull for ambient dimension <= 3."""
    points = [tuple(Fraction(x) for x in p) for p in points]
    if not points:
        raise DegenerateInputError("no points")
    d = len(points[0])
    if d > 3:
        raise UnsupportedDimensionError("convex hull supported for d <= 3 only")
    if d == 1:
        lo = min(p[0] for p in points)
        hi = max(p[0] for p in points)
        if lo == hi:
            raise DegenerateInputError("all points coincide")
        return Polytope(1, (Simplex(((lo,), (hi,))),), validate=False)
    if d == 2:
        ring = hull_ring_2d(points)
        tris = [Simplex((ring[0], ring[i], ring[i + 1])) for i in range(1, len(ring) - 1)]
        return Polytope(2, tuple(tris), validate=False)
    tris = hull_triangles_3d(points)
    v0 = tris[0][0]
    tets = []
    for t in tris:
        if v0 in t:
            continue
        if _orient3d(t[0], t[1], t[2], v0) == 0:
            continue  # facet whose plane contains v0: covered by its own fan
        tets.append(Simplex((v0,) + t))
    return Polytope(3, tuple(tets), validate=False)


def bounding_box(p: GroupElement | Polytope) -> tuple[Vec, Vec]:
    """Componentwise (min, max) over all vertices."""
    if isinstance(p, Polytope):
        simplices = p.simplices
        dim = p.dim
    else:
        simplices = tuple(s for _, s in p.terms)
        dim = p.dim
    if not simplices:
        return (ZERO,) * dim, (ZERO,) * dim
    verts = [v for s in simplices for v in s.vertices]
    lo = tuple(min(v[i] for v in verts) for i in range(dim))
    hi = tuple(max(v[i] for v in verts) for i in range(dim))
    return lo, hi

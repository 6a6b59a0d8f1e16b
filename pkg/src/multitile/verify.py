"""Independent oracles for the exact engine.

Two kinds of corroboration, neither of which reuses the invariant pipeline:

* exact multiplicity sampling: draw points with exact dyadic-rational
  coordinates inside a fundamental parallelepiped and count covering
  multiplicity by direct membership tests;
* numerical transform check: the integral transform of the indicator must
  vanish on the nonzero dual-lattice points when the element tiles.  This is
  the one non-exact component; it runs in high-precision arithmetic
  (>= 50 significant digits) and is corroborative only, never authoritative.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction

import mpmath

from .errors import DegenerateInputError
from .exact import Vec, dot, vsub
from .geom import GroupElement, Polytope, bounding_box, indicator_value, volume
from .lattice import Lattice, dual_basis, enumerate_in_box

DEFAULT_PRECISION_DPS = 50
DEFAULT_FOURIER_TOL = 1e-20
BOUNDARY_RESAMPLE_CAP = 1000
_DYADIC_BITS = 40


@dataclass
class SampleReport:
    samples: int
    resampled_boundary: int
    observed_levels: dict[int, int]
    constant: bool
    level: int | None
    failures: list[tuple[Vec, int]]


@dataclass
class FourierReport:
    frequencies: list[Vec]
    max_abs: float
    tol: float
    passed: bool


def _as_element(p: GroupElement | Polytope) -> GroupElement:
    return p.as_element() if isinstance(p, Polytope) else p


def multiplicity_at(p: GroupElement | Polytope, l: Lattice, x: Vec) -> int | None:
    """Exact covering multiplicity sum at x, or None on a boundary hit.

    Only lattice vectors that put x inside the bounding box of p can
    contribute, so the sum is finite.
    """
    p = _as_element(p)
    lo, hi = bounding_box(p)
    shifts = enumerate_in_box(l, vsub(x, hi), vsub(x, lo))
    total = 0
    for lam in shifts:
        val = indicator_value(p, vsub(x, lam))
        if val is None:
            return None
        total += val
    return total


def sample_tiling(p: GroupElement | Polytope, l: Lattice, n: int,
                  seed: int = 0) -> SampleReport:
    """Check constancy of the covering multiplicity at n random points.

    Points are drawn with exact dyadic coordinates (denominator 2**40)
    inside a fundamental parallelepiped of l, so the membership tests stay
    exact; boundary hits are resampled and counted.  Deterministic per seed.
    """
    if n < 1:
        raise ValueError("need at least one sample")
    p = _as_element(p)
    rng = random.Random(seed)
    d = l.dim
    denom = 1 << _DYADIC_BITS
    resampled = 0
    levels: dict[int, int] = {}
    points: list[tuple[Vec, int]] = []
    for _ in range(n):
        for attempt in range(BOUNDARY_RESAMPLE_CAP + 1):
            coords = tuple(Fraction(rng.getrandbits(_DYADIC_BITS), denom)
                           for _ in range(d))
            x = l.from_coords(coords)
            val = multiplicity_at(p, l, x)
            if val is not None:
                break
            resampled += 1
        else:
            raise DegenerateInputError(
                f"{BOUNDARY_RESAMPLE_CAP} consecutive boundary hits while sampling")
        levels[val] = levels.get(val, 0) + 1
        points.append((x, val))
    # Reference level: the most frequent one, smallest value on ties.
    ref = min(levels, key=lambda k: (-levels[k], k))
    failures = [(x, v) for x, v in points if v != ref]
    constant = len(levels) == 1
    return SampleReport(
        samples=n,
        resampled_boundary=resampled,
        observed_levels=levels,
        constant=constant,
        level=ref if constant else None,
        failures=failures,
    )


# ---------------------------------------------------------------------------
# High-precision transform of the indicator.
#
# For one simplex with vertices v_0..v_d the transform at frequency xi is
#
#     d! vol * DD[t -> exp(-2 pi i t)](t_0, ..., t_d) / (-2 pi i)^d,
#
# where t_j = <xi, v_j> and DD is the divided difference, confluent
# (derivative-based) on repeated nodes.  Repeated nodes are detected by exact
# equality when xi is rational and by a 1e-40 closeness threshold otherwise.


def _nodes(simplex, xi) -> tuple[list, bool]:
    if all(isinstance(c, (int, Fraction)) for c in xi):
        qxi = tuple(Fraction(c) for c in xi)
        return [dot(qxi, v) for v in simplex.vertices], True
    mxi = [c if isinstance(c, mpmath.mpf) else mpmath.mpf(c) for c in xi]
    ts = [sum(mxi[i] * _to_mpf(v[i]) for i in range(len(v)))
          for v in simplex.vertices]
    return ts, False


def _to_mpf(q: Fraction):
    return mpmath.mpf(q.numerator) / q.denominator


def _cluster(ts, exact: bool):
    """Sort nodes and assign cluster ids to (near-)equal ones."""
    order = sorted(range(len(ts)), key=lambda i: ts[i])
    sorted_ts = [ts[i] for i in order]
    ids = [0] * len(ts)
    cid = 0
    for k in range(1, len(sorted_ts)):
        if exact:
            same = sorted_ts[k] == sorted_ts[k - 1]
        else:
            same = abs(sorted_ts[k] - sorted_ts[k - 1]) < mpmath.mpf("1e-40")
        if not same:
            cid += 1
        ids[k] = cid
    return sorted_ts, ids


def _dd_core(sorted_vals, spans, ids, d, vol):
    """Divided-difference evaluation from sorted node values (mpf), exact
    span lookup and cluster ids; returns the simplex transform value."""
    n = len(sorted_vals)
    minus_two_pi_i = -2 * mpmath.pi * mpmath.mpc(0, 1)
    gvals = [mpmath.exp(minus_two_pi_i * v) for v in sorted_vals]
    table = [gvals]
    for length in range(1, n):
        prev = table[-1]
        row = []
        for i in range(n - length):
            j = i + length
            if ids[i] == ids[j]:
                # Confluent entry: g^(length)(t_i) / length!.
                val = (minus_two_pi_i ** length) * gvals[i] / mpmath.factorial(length)
            else:
                val = (prev[i + 1] - prev[i]) / spans(i, j)
            row.append(val)
        table.append(row)
    return mpmath.factorial(d) * vol * table[-1][0] / (minus_two_pi_i ** d)


def _simplex_transform(simplex, xi):
    d = simplex.dim
    ts, exact = _nodes(simplex, xi)
    sorted_ts, ids = _cluster(ts, exact)
    if exact:
        vals = [_to_mpf(t) for t in sorted_ts]

        def spans(i, j):
            return _to_mpf(sorted_ts[j] - sorted_ts[i])
    else:
        vals = sorted_ts

        def spans(i, j):
            return sorted_ts[j] - sorted_ts[i]

    return _dd_core(vals, spans, ids, d, _to_mpf(simplex._volume))


def _prepare_simplex_for_grid(simplex, dual_rows):
    """Integerize the node machinery for a dual-coefficient grid: node j at
    coefficients c equals (sum_i c_i Y[j][i]) / den exactly."""
    from math import lcm

    pairings = [[dot(row, v) for row in dual_rows] for v in simplex.vertices]
    den = lcm(*(q.denominator for row in pairings for q in row), 1)
    ints = [[int(q * den) for q in row] for row in pairings]
    return ints, den, _to_mpf(simplex._volume)


def _grid_transform(prep, coeffs, d):
    ints, den, vol = prep
    nodes = [sum(c * row[i] for i, c in enumerate(coeffs)) for row in ints]
    order = sorted(range(len(nodes)), key=lambda i: nodes[i])
    sorted_nodes = [nodes[i] for i in order]
    ids = [0] * len(nodes)
    cid = 0
    for k in range(1, len(sorted_nodes)):
        if sorted_nodes[k] != sorted_nodes[k - 1]:
            cid += 1
        ids[k] = cid
    vals = [mpmath.mpf(t) / den for t in sorted_nodes]

    def spans(i, j):
        return mpmath.mpf(sorted_nodes[j] - sorted_nodes[i]) / den

    return _dd_core(vals, spans, ids, d, vol)


def fourier_transform(p: GroupElement | Polytope, xi, dps: int = DEFAULT_PRECISION_DPS):
    """Transform of the indicator of p at frequency xi (high precision).

    At xi = 0 this equals the volume of p.
    """
    p = _as_element(p)
    with mpmath.workdps(dps):
        total = mpmath.mpc(0)
        for m, s in p.terms:
            total += m * _simplex_transform(s, tuple(xi))
        return total


def fourier_check(p: GroupElement | Polytope, l: Lattice, radius: int,
                  tol: float = DEFAULT_FOURIER_TOL,
                  dps: int = DEFAULT_PRECISION_DPS) -> FourierReport:
    """Evaluate |transform| on all nonzero dual points with coefficients in
    [-radius, radius]; pass iff every value is below tol.

    The indicator is real, so the magnitude at -xi equals the one at xi;
    one representative of each +-pair is evaluated.
    """
    if radius < 1:
        raise ValueError("radius must be at least 1")
    if tol <= 0:
        raise ValueError("tolerance must be positive")
    p = _as_element(p)
    dual = dual_basis(l)
    d = l.dim
    freqs: list[Vec] = []
    grid: list[tuple[int, ...]] = []
    for coeffs in itertools.product(range(-radius, radius + 1), repeat=d):
        if all(c == 0 for c in coeffs):
            continue
        freqs.append(dual.from_coords(tuple(Fraction(c) for c in coeffs)))
        first = next(c for c in coeffs if c != 0)
        if first > 0:
            grid.append(coeffs)
    max_abs = 0.0
    with mpmath.workdps(dps):
        prepared = [(m, _prepare_simplex_for_grid(s, dual.basis), s.dim)
                    for m, s in p.terms]
        for coeffs in grid:
            total = mpmath.mpc(0)
            for m, prep, dim in prepared:
                total += m * _grid_transform(prep, coeffs, dim)
            mag = float(abs(total))
            if mag > max_abs:
                max_abs = mag
    return FourierReport(frequencies=freqs, max_abs=max_abs, tol=tol,
                         passed=max_abs <= tol)

import math
import random
from fractions import Fraction as F

import mpmath
import numpy as np
import pytest
from numpy.polynomial.legendre import leggauss

from multitile.exact import mat, vec
from multitile.geom import GroupElement, Polytope, Simplex, volume
from multitile.lattice import Lattice
from multitile.verify import (
    fourier_check,
    fourier_transform,
    multiplicity_at,
    sample_tiling,
)

from shapes import Z, box, unit_square, unit_triangle


def gl_simplex_transform(vertices, xi, order=24):
    """Quadrature oracle: iterated Gauss-Legendre over the collapsed cube,
    mapped affinely onto the simplex.  Float64; the integrand is entire, so
    convergence is superexponential in the order."""
    d = len(vertices) - 1
    nodes, weights = leggauss(order)
    nodes = (nodes + 1) / 2
    weights = weights / 2
    v0 = np.array([float(x) for x in vertices[0]])
    edges = np.array([[float(vertices[i + 1][k] - vertices[0][k])
                       for k in range(d)] for i in range(d)])
    jac = abs(np.linalg.det(edges))
    xiv = np.array([float(c) for c in xi])
    grids = np.meshgrid(*([nodes] * d), indexing="ij")
    w = np.ones_like(grids[0])
    for ax in range(d):
        shape = [1] * d
        shape[ax] = -1
        w = w * weights.reshape(shape)
    rem = np.ones_like(grids[0])
    lam = []
    for i in range(d):
        li = grids[i] * rem
        lam.append(li)
        w = w * rem
        rem = rem - li
    pts = v0 + np.tensordot(np.stack(lam, axis=-1), edges, axes=([d], [0]))
    phase = np.exp(-2j * np.pi * np.tensordot(pts, xiv, axes=([d], [0])))
    return jac * np.sum(w * phase)


SEG = Polytope(1, (Simplex((vec(0), vec(1))),))


class TestMultiplicity:
    def test_square(self):
        assert multiplicity_at(unit_square(), Z(2), vec("1/3", "1/3")) == 1

    def test_two_level_box(self):
        assert multiplicity_at(box([2, 1]), Z(2), vec("1/3", "1/3")) == 2

    def test_triangle(self):
        tri = unit_triangle()
        assert multiplicity_at(tri, Z(2), vec("2/3", "2/3")) == 0
        assert multiplicity_at(tri, Z(2), vec("1/5", "1/5")) == 1

    def test_boundary_flag(self):
        assert multiplicity_at(unit_square(), Z(2), vec(0, "1/3")) is None

    def test_translation_equivariance(self):
        tri = unit_triangle()
        rng = random.Random(4)
        for _ in range(50):
            x = (F(rng.getrandbits(20), 1 << 20), F(rng.getrandbits(20), 1 << 20))
            lam = vec(rng.randint(-2, 2), rng.randint(-2, 2))
            a = multiplicity_at(tri, Z(2), x)
            b = multiplicity_at(tri, Z(2), (x[0] + lam[0], x[1] + lam[1]))
            assert a == b


class TestSampling:
    def test_square_constant(self):
        rep = sample_tiling(unit_square(), Z(2), 1000, seed=0)
        assert rep.constant and rep.level == 1
        assert not rep.failures
        assert rep.observed_levels == {1: 1000}

    def test_triangle_two_levels(self):
        rep = sample_tiling(unit_triangle(), Z(2), 1000, seed=0)
        assert not rep.constant
        assert set(rep.observed_levels) == {0, 1}
        assert rep.failures

    def test_half_det_lattice_level_two(self):
        l = Lattice(mat([[1, 0], ["1/2", "1/2"]]))
        rep = sample_tiling(unit_square(), l, 1000, seed=0)
        assert rep.constant and rep.level == 2

    def test_deterministic(self):
        a = sample_tiling(unit_triangle(), Z(2), 200, seed=7)
        b = sample_tiling(unit_triangle(), Z(2), 200, seed=7)
        assert a.observed_levels == b.observed_levels
        assert a.failures == b.failures

    def test_report_consistency(self):
        rep = sample_tiling(unit_triangle(), Z(2), 300, seed=1)
        assert (len(rep.observed_levels) == 1) == rep.constant
        assert (not rep.failures) == rep.constant
        assert sum(rep.observed_levels.values()) == rep.samples


class TestTransform:
    def test_integer_frequency_vanishes(self):
        assert abs(fourier_transform(SEG, (F(1),))) < 1e-45

    def test_half_frequency_magnitude(self):
        got = abs(fourier_transform(SEG, (F(1, 2),)))
        # closed form: |(1 - exp(-pi i)) / (pi i)| = 2 / pi
        assert abs(float(got) - 2 / math.pi) < 1e-12
        # adaptive quadrature cross-check
        import scipy.integrate as si

        re, _ = si.quad(lambda x: math.cos(-math.pi * x), 0, 1)
        im, _ = si.quad(lambda x: math.sin(-math.pi * x), 0, 1)
        assert abs(complex(got) - abs(complex(re, im))) < 1e-10

    def test_zero_frequency_is_volume(self):
        for p in (unit_square(), unit_triangle(), box([1, 2, 1])):
            xi = (F(0),) * p.dim
            got = fourier_transform(p, xi)
            rel = abs(got - mpmath.mpf(volume(p).numerator) / volume(p).denominator)
            assert rel < mpmath.mpf("1e-30")

    def test_repeated_nodes_confluent(self):
        # frequency orthogonal to an edge forces exactly equal nodes
        tri = unit_triangle()
        got = complex(fourier_transform(tri, (F(0), F(1))))
        oracle = gl_simplex_transform(tri.simplices[0].vertices, (0, 1))
        assert abs(got - oracle) < 1e-12

    def test_against_quadrature_50_random_simplices(self):
        # Quadrature order grows with the phase span, so the oracle stays
        # far below the 1e-10 comparison tolerance.
        rng = random.Random(12)
        cases = [(1, 20, 6, 4, 200), (2, 20, 4, 2, 64), (3, 10, 3, 2, 48)]
        for d, count, vbound, xibound, order in cases:
            done = 0
            while done < count:
                pts = [tuple(F(rng.randint(-vbound, vbound), rng.randint(1, 2))
                             for _ in range(d)) for _ in range(d + 1)]
                try:
                    s = Simplex(tuple(pts))
                except Exception:
                    continue
                xi = tuple(F(rng.randint(-xibound, xibound), rng.randint(1, 2))
                           for _ in range(d))
                got = complex(fourier_transform(Polytope(d, (s,)), xi))
                oracle = gl_simplex_transform(s.vertices, xi, order=order)
                scale = max(abs(got), abs(oracle), 1e-3)
                assert abs(got - oracle) / scale < 1e-10
                done += 1

    def test_irrational_frequency(self):
        got = fourier_transform(SEG, (0.5,))
        assert abs(abs(got) - 2 / math.pi) < 1e-10


class TestFourierCheck:
    def test_square_passes(self):
        rep = fourier_check(unit_square(), Z(2), radius=5, tol=1e-30)
        assert rep.passed
        assert len(rep.frequencies) == 11 * 11 - 1

    def test_triangle_fails(self):
        rep = fourier_check(unit_triangle(), Z(2), radius=3, tol=1e-6)
        assert not rep.passed
        assert rep.max_abs > 1e-3

    def test_fundamental_cells_pass(self):
        from shapes import fundamental_cells, random_lattice

        rng = random.Random(2)
        l = random_lattice(rng, 2)
        p = fundamental_cells(l, [(0, 0), (1, 0), (0, 1)])
        rep = fourier_check(p, l, radius=3, tol=1e-20)
        assert rep.passed

    def test_invalid_args(self):
        with pytest.raises(ValueError):
            fourier_check(unit_square(), Z(2), radius=0)
        with pytest.raises(ValueError):
            fourier_check(unit_square(), Z(2), radius=2, tol=0)

import numpy as np
import pytest

from twophase import grid
from twophase.grid import VectorField


def vec(rng, shape):
    return VectorField(rng.normal(size=shape), rng.normal(size=shape))


def inner_vec(a, b):
    return float(np.sum(a.x * b.x) + np.sum(a.y * b.y))


class TestGradient:
    def test_constant_field_is_zero(self):
        g = grid.gradient(np.full((3, 3), 5.0))
        assert np.all(g.x == 0.0) and np.all(g.y == 0.0)

    def test_row_forward_differences(self):
        # width 3, height 1
        g = grid.gradient(np.array([[0.0, 1.0, 3.0]]))
        assert g.x.tolist() == [[1.0, 2.0, 0.0]]
        assert g.y.tolist() == [[0.0, 0.0, 0.0]]

    def test_single_pixel(self):
        g = grid.gradient(np.array([[7.0]]))
        assert g.x.tolist() == [[0.0]] and g.y.tolist() == [[0.0]]


class TestDivergence:
    def test_zero_field(self):
        w = VectorField(np.zeros((4, 5)), np.zeros((4, 5)))
        assert np.all(grid.divergence(w) == 0.0)

    def test_two_pixel_case_table(self):
        # width 2, height 1; x-contribution is +c at i=0 and -c at i=1,
        # the last column of w.x is never read
        c = 3.5
        w = VectorField(np.array([[c, 99.0]]), np.zeros((1, 2)))
        assert grid.divergence(w).tolist() == [[c, -c]]

    def test_adjointness_random_grids(self, rng):
        for _ in range(50):
            h, w = rng.integers(1, 17, size=2)
            u = rng.normal(size=(h, w))
            wf = vec(rng, (h, w))
            lhs = inner_vec(grid.gradient(u), wf)
            rhs = -float(np.sum(u * grid.divergence(wf)))
            scale = np.linalg.norm(u) * np.hypot(
                np.linalg.norm(wf.x), np.linalg.norm(wf.y))
            assert abs(lhs - rhs) <= 1e-10 * max(scale, 1e-30)


class TestLaplacian:
    def test_constant_is_zero(self):
        assert np.all(grid.laplacian(np.full((4, 6), 2.5)) == 0.0)

    def test_interior_five_point_stencil(self, rng):
        u = rng.normal(size=(5, 5))
        lap = grid.laplacian(u)
        j, i = 2, 2
        expect = u[j, i + 1] + u[j, i - 1] + u[j + 1, i] + u[j - 1, i] - 4 * u[j, i]
        assert lap[j, i] == pytest.approx(expect, abs=1e-14)

    def test_equals_composition_exactly(self, rng):
        u = rng.normal(size=(6, 6))
        composed = grid.divergence(grid.gradient(u))
        assert np.array_equal(grid.laplacian(u), composed)

    def test_symmetric_negative_semidefinite(self, rng):
        for _ in range(20):
            h, w = rng.integers(1, 13, size=2)
            u = rng.normal(size=(h, w))
            v = rng.normal(size=(h, w))
            lu, lv = grid.laplacian(u), grid.laplacian(v)
            assert np.sum(lu * v) == pytest.approx(np.sum(u * lv), abs=1e-9)
            assert np.sum(lu * u) <= 1e-12


def test_operators_are_linear(rng):
    u = rng.normal(size=(7, 4))
    v = rng.normal(size=(7, 4))
    a, b = 2.25, -0.5
    gu, gv = grid.gradient(u), grid.gradient(v)
    gc = grid.gradient(a * u + b * v)
    assert np.allclose(gc.x, a * gu.x + b * gv.x, atol=1e-13)
    assert np.allclose(gc.y, a * gu.y + b * gv.y, atol=1e-13)
    wu, wv = vec(np.random.default_rng(5), (7, 4)), vec(np.random.default_rng(6), (7, 4))
    mixed = VectorField(a * wu.x + b * wv.x, a * wu.y + b * wv.y)
    assert np.allclose(grid.divergence(mixed),
                       a * grid.divergence(wu) + b * grid.divergence(wv),
                       atol=1e-13)
    assert np.allclose(grid.laplacian(a * u + b * v),
                       a * grid.laplacian(u) + b * grid.laplacian(v),
                       atol=1e-12)


def test_outputs_are_fresh_arrays(rng):
    u = rng.normal(size=(4, 4))
    before = u.copy()
    g = grid.gradient(u)
    g.x[...] += 1.0
    g.y[...] += 1.0
    grid.divergence(g)
    assert np.array_equal(u, before)


def test_as_field_rejects_wrong_rank():
    with pytest.raises(ValueError):
        grid.as_field(np.zeros(5))

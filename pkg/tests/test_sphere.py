import numpy as np

from fuzzylimit.polynomial import Polynomial
from fuzzylimit.sphere import (harmonic_decompose, normal_form_basis, recompose,
                               sphere_normal_form, tensor_trace)

x1, x2, x3 = Polynomial.variables(3)


def test_relation_reduces_to_one():
    assert sphere_normal_form(x1 * x1 + x2 * x2 + x3 * x3) == Polynomial.constant(1.0, 3)


def test_normal_form_examples():
    assert sphere_normal_form(x1) == x1
    assert sphere_normal_form(x3 ** 3) == x3 - x1 * x1 * x3 - x2 * x2 * x3


def test_normal_form_is_idempotent(rng):
    p = Polynomial.random(3, 5, rng)
    n = sphere_normal_form(p)
    assert sphere_normal_form(n) == n
    assert all(e[2] <= 1 for e in n.terms)


def test_normal_form_dimension():
    for n in range(9):
        assert len(normal_form_basis(n)) == (n + 1) ** 2


def test_decompose_x1_squared():
    f = harmonic_decompose(x1 * x1)
    np.testing.assert_allclose(f[0], 1 / 3)
    np.testing.assert_allclose(f[1], 0)
    np.testing.assert_allclose(f[2], np.diag([2 / 3, -1 / 3, -1 / 3]), atol=1e-15)


def test_decompose_linear_and_constant():
    f = harmonic_decompose(x1)
    np.testing.assert_allclose(f[0], 0)
    np.testing.assert_allclose(f[1], [1, 0, 0])
    f = harmonic_decompose(Polynomial.constant(1.0, 3))
    assert len(f) == 1
    np.testing.assert_allclose(f[0], 1)


def test_tensors_are_symmetric_and_trace_free(rng):
    for t in harmonic_decompose(Polynomial.random(3, 6, rng)):
        if t.ndim >= 2:
            np.testing.assert_allclose(tensor_trace(t), 0, atol=1e-12)
            np.testing.assert_allclose(t, np.swapaxes(t, 0, 1), atol=1e-15)
            np.testing.assert_allclose(t, np.swapaxes(t, 0, -1), atol=1e-15)


def test_roundtrip_through_normal_form(rng):
    for _ in range(5):
        p = Polynomial.random(3, 5, rng)
        back = sphere_normal_form(recompose(harmonic_decompose(p)))
        assert back.isclose(sphere_normal_form(p), 1e-10)


def test_other_radius():
    p = x1 * x1 + x2 * x2 + x3 * x3
    f = harmonic_decompose(p, radius_sq=-1.0)
    np.testing.assert_allclose(f[0], -1)
    np.testing.assert_allclose(f[2], 0, atol=1e-15)

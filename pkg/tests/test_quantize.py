import numpy as np
import pytest

from fuzzylimit.polynomial import Polynomial, TorusFunction
from fuzzylimit.poisson import torus_bracket
from fuzzylimit.quantize import (QuantizationMap, SymProducts, defect, direct_sum_qmap,
                                 lie_qmap, quantize_lie, quantize_sphere, quantize_torus,
                                 rescale_qmap, sphere_qmap, symmetrize, torus_qmap,
                                 truncation_degree)
from fuzzylimit.reps import RepSet, clock_shift, hbar_for_k, su2_irrep

x1, x2, x3 = Polynomial.variables(3)
PAULI = [np.array([[0, 1], [1, 0]]), np.array([[0, -1j], [1j, 0]]), np.diag([1, -1])]


def test_sphere_examples():
    np.testing.assert_allclose(quantize_sphere(x3, 2), hbar_for_k(2) / 2 * PAULI[2])
    np.testing.assert_allclose(quantize_sphere(Polynomial.constant(1.0, 3), 5), np.eye(5))
    np.testing.assert_allclose(quantize_sphere(x1 * x1, 2), np.eye(2) / 3, atol=1e-15)


def test_sphere_respects_relation():
    for k in (2, 3, 6):
        r2 = x1 * x1 + x2 * x2 + x3 * x3
        np.testing.assert_allclose(quantize_sphere(r2, k), np.eye(k), atol=1e-13)


def test_sphere_k_too_small():
    with pytest.raises(ValueError):
        quantize_sphere(x1, 1)


def test_torus_examples():
    U, V, _ = clock_shift(4)
    np.testing.assert_allclose(quantize_torus(TorusFunction.mode(1, 0), 4), U)
    np.testing.assert_allclose(quantize_torus(TorusFunction.mode(0, 0), 4), np.eye(4))
    U, V, _ = clock_shift(3)
    f = TorusFunction({(1, 0): 1.0, (0, 1): 2j})
    np.testing.assert_allclose(quantize_torus(f, 3), U + 2j * V)


def test_symmetrize():
    rng = np.random.default_rng(0)
    A, B = rng.normal(size=(2, 3, 3))
    np.testing.assert_allclose(symmetrize([A]), A)
    np.testing.assert_allclose(symmetrize([A, B]), (A @ B + B @ A) / 2)
    np.testing.assert_allclose(symmetrize([], dim=3), np.eye(3))
    J = su2_irrep(3)
    S = symmetrize(list(J))
    np.testing.assert_allclose(symmetrize([S]), S)
    # agrees with the count-vector recursion
    np.testing.assert_allclose(SymProducts(list(J))((1, 1, 1)), S, atol=1e-14)
    np.testing.assert_allclose(SymProducts(list(J))((2, 0, 1)),
                               symmetrize([J[0], J[0], J[2]]), atol=1e-14)


def test_symmetrize_errors():
    with pytest.raises(ValueError):
        symmetrize([])
    with pytest.raises(ValueError):
        symmetrize([np.eye(2), np.eye(3)])


def test_lie_examples():
    r = RepSet.su2(2)
    for i, x in enumerate((x1, x2, x3)):
        np.testing.assert_allclose(quantize_lie(x, r), r.generators[i])
    np.testing.assert_allclose(quantize_lie(x1 * x2, r), 0, atol=1e-15)
    r = RepSet.su2(3)
    q = lie_qmap(r)
    assert q.truncation_degree == 2
    f = x1 * x2 + x3 ** 3 + x1 ** 2 * x2 ** 2
    np.testing.assert_allclose(q(f), q(x1 * x2), atol=1e-15)


def test_lie_dimension_mismatch():
    with pytest.raises(ValueError):
        quantize_lie(Polynomial.variable(0, 2), RepSet.su2(2))


def test_truncation_degree_su2():
    for k in range(2, 7):
        assert truncation_degree(list(su2_irrep(k))) == k - 1


def test_lie_matches_sphere_on_harmonics():
    k = 4
    r = RepSet.su2(k)
    ql, qs = lie_qmap(r), sphere_qmap(k)
    for f in (x1 * x2, x1 * x2 * x3, x1 * x1 - x2 * x2):
        np.testing.assert_allclose(ql(f), qs(f), atol=1e-14)


def test_linearity(rng):
    q = sphere_qmap(5)
    f, g = Polynomial.random(3, 4, rng), Polynomial.random(3, 4, rng)
    a, b = 0.3 - 1j, 2.0
    np.testing.assert_allclose(q(a * f + b * g), a * q(f) + b * q(g), atol=1e-12)
    qt = torus_qmap(4)
    u = TorusFunction({(1, 2): 1.0, (3, 0): 1j})
    v = TorusFunction({(0, 1): -2.0})
    np.testing.assert_allclose(qt(u * a + v * b), a * qt(u) + b * qt(v), atol=1e-12)


def test_sphere_linear_defect_vanishes():
    for k in range(2, 21):
        q = sphere_qmap(k)
        assert np.abs(defect(x1, x2, q)).max() <= 1e-12
        assert np.abs(defect(x2, x3, q)).max() <= 1e-12


def test_self_defect_vanishes(rng):
    f = Polynomial.random(3, 3, rng)
    np.testing.assert_allclose(defect(f, f, sphere_qmap(4)), 0, atol=1e-12)


def test_quadratic_defect_nonzero():
    D = defect(x1 * x2, x2 * x3, sphere_qmap(6))
    assert np.linalg.norm(D) > 1e-3


def test_torus_defect_prefactor_scaling():
    y10, y01 = TorusFunction.mode(1, 0), TorusFunction.mode(0, 1)
    ks = np.arange(8, 65, 8)
    norms = [np.linalg.norm(defect(y10, y01, torus_qmap(k))) / np.sqrt(k) for k in ks]
    slope = np.polyfit(np.log(2.0 / ks), np.log(norms), 1)[0]
    assert abs(slope - 2) <= 0.2


def test_rescale():
    q = sphere_qmap(5)
    same = rescale_qmap(q, q.hbar)
    for a, b in zip(same.images, q.images):
        np.testing.assert_allclose(a, b)
    q2 = rescale_qmap(q, 2 * q.hbar)
    assert q2.hbar == 2 * q.hbar
    f, g = x1 * x2, x2 * x3
    np.testing.assert_allclose(np.linalg.norm(defect(f, g, q2)),
                               4 * np.linalg.norm(defect(f, g, q)), rtol=1e-12)
    # spans of images are unchanged
    A = np.array([m.ravel() for m in q.images])
    B = np.array([m.ravel() for m in q2.images])
    assert np.linalg.matrix_rank(np.vstack([A, B])) == np.linalg.matrix_rank(A)
    with pytest.raises(ValueError):
        rescale_qmap(q, 0)


def test_direct_sum():
    q = direct_sum_qmap(sphere_qmap(2))
    h = hbar_for_k(2)
    for img, s in zip(q.images, PAULI):
        np.testing.assert_allclose(img, np.kron(np.eye(2), h / 2 * s))
    np.testing.assert_allclose(defect(x1, x2, q), 0, atol=1e-15)
    base = sphere_qmap(6)
    f, g = x1 * x2, x2 * x3
    np.testing.assert_allclose(np.linalg.norm(defect(f, g, direct_sum_qmap(base))),
                               np.sqrt(2) * np.linalg.norm(defect(f, g, base)), rtol=1e-12)


def test_qmap_invariants_and_json():
    with pytest.raises(ValueError):
        QuantizationMap("sphere", sphere_qmap(2).source, 0.0, [np.eye(2)] * 3)
    with pytest.raises(ValueError):
        QuantizationMap("bogus", sphere_qmap(2).source, 1.0, [np.eye(2)] * 3)
    q = rescale_qmap(sphere_qmap(3), 0.25)
    back = QuantizationMap.from_json(q.to_json())
    f = x1 * x3 + 2 * x2
    np.testing.assert_allclose(back(f), q(f))
    assert back.hbar == q.hbar and back.truncation_degree == 2

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from fuzzylimit.polynomial import (ZERO_TOL, Polynomial, TorusFunction, monomials_of_degree,
                                   monomials_upto)


def test_pruning_drops_tiny_coefficients():
    p = Polynomial({(1, 0): 1.0, (0, 1): 1e-13}, 2)
    assert p.terms == {(1, 0): 1.0}
    assert all(abs(c) > ZERO_TOL for c in p.terms.values())


def test_exponent_length_is_checked():
    with pytest.raises(ValueError):
        Polynomial({(1, 0): 1.0}, 3)
    with pytest.raises(ValueError):
        Polynomial({(-1, 0): 1.0}, 2)


def test_nvars_mismatch_raises():
    with pytest.raises(ValueError):
        Polynomial.variable(0, 2) + Polynomial.variable(0, 3)


def test_arithmetic():
    x, y = Polynomial.variables(2)
    p = (x + y) ** 2
    assert p == x * x + 2 * x * y + y * y
    assert (p - p).degree == -1
    assert (3 * x / 3) == x
    assert (x + 1).coeff((0, 0)) == 1


def test_derivatives():
    x, y = Polynomial.variables(2)
    p = x ** 3 * y ** 2
    assert p.diff(0) == 3 * x ** 2 * y ** 2
    assert p.diff(0, 2) == 6 * x * y ** 2
    assert p.diff_multi((1, 2)) == 6 * x ** 2
    assert p.diff(1, 3) == Polynomial.zero(2)


def test_laplacian_of_r2_is_2n():
    xs = Polynomial.variables(3)
    r2 = sum((v * v for v in xs), Polynomial.zero(3))
    assert r2.laplacian() == Polynomial.constant(6.0, 3)


def test_monomial_counts():
    assert len(list(monomials_of_degree(3, 4))) == 15
    assert len(list(monomials_upto(2, 4))) == 15


def test_evaluate_and_substitute():
    x, y = Polynomial.variables(2)
    p = x * y + 2j * y
    assert p.evaluate([2.0, 3.0]) == pytest.approx(6 + 6j)
    q = p.substitute([y, x])
    assert q == x * y + 2j * x


def test_json_roundtrip(rng):
    p = Polynomial.random(3, 4, rng)
    assert Polynomial.from_json(p.to_json()) == p
    f = TorusFunction({(1, 0): 1.0, (2, 3): -0.5j})
    assert TorusFunction.from_json(f.to_json()) == f


def test_torus_function_rejects_negative_modes():
    with pytest.raises(ValueError):
        TorusFunction.mode(-1, 0)


def test_torus_product_adds_modes():
    f = TorusFunction.mode(1, 0) * TorusFunction.mode(2, 3, 2.0)
    assert f == TorusFunction.mode(3, 3, 2.0)


coeffs = st.complex_numbers(max_magnitude=10, allow_nan=False, allow_infinity=False)
polys = st.dictionaries(st.tuples(*[st.integers(0, 3)] * 2), coeffs, max_size=6).map(
    lambda d: Polynomial(d, 2))


@settings(max_examples=50, deadline=None)
@given(polys, polys, polys)
def test_ring_axioms(a, b, c):
    assert ((a * b) * c).isclose(a * (b * c), 1e-8)
    assert (a * (b + c)).isclose(a * b + a * c, 1e-8)
    assert (a * b).isclose(b * a, 1e-10)

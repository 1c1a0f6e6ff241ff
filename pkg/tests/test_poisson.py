import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from fuzzylimit.poisson import (PoissonStructure, StructureConstants, jacobi_defect,
                                levi_civita, poisson_bracket, torus_bracket)
from fuzzylimit.polynomial import Polynomial, TorusFunction

KK = PoissonStructure.kirillov_kostant(StructureConstants(levi_civita(3)))


def test_su2_bracket_of_generators():
    x1, x2, x3 = Polynomial.variables(3)
    assert poisson_bracket(x1, x2, KK) == x3
    assert poisson_bracket(x2, x3, KK) == x1
    assert poisson_bracket(x3, x1, KK) == x2


def test_canonical_bracket():
    x, y = Polynomial.variables(2)
    assert poisson_bracket(x * x, y, PoissonStructure.canonical()) == 2 * x


def test_bracket_nvars_mismatch():
    with pytest.raises(ValueError):
        poisson_bracket(Polynomial.variable(0, 2), Polynomial.variable(0, 2), KK)


def test_bracket_is_antisymmetric(rng):
    f, g = Polynomial.random(3, 3, rng), Polynomial.random(3, 3, rng)
    assert poisson_bracket(f, f, KK).norm() == 0
    assert (poisson_bracket(f, g, KK) + poisson_bracket(g, f, KK)).norm() < 1e-12


def test_leibniz(rng):
    for s in (KK, PoissonStructure.canonical()):
        n = s.nvars
        f, g, h = (Polynomial.random(n, 2, rng) for _ in range(3))
        lhs = poisson_bracket(f * g, h, s)
        rhs = f * poisson_bracket(g, h, s) + poisson_bracket(f, h, s) * g
        assert (lhs - rhs).norm() < 1e-10


def test_jacobi_on_generators_and_constants():
    xs = Polynomial.variables(3)
    assert not jacobi_defect(KK, *xs)
    one = Polynomial.constant(1.0, 3)
    assert not jacobi_defect(KK, one, one, one)


def test_jacobi_random_triples(rng):
    for s in (KK, PoissonStructure.canonical(),
              PoissonStructure.kirillov_kostant(StructureConstants.su2("i"))):
        for _ in range(5):
            f, g, h = (Polynomial.random(s.nvars, 3, rng) for _ in range(3))
            assert jacobi_defect(s, f, g, h).norm() <= 1e-12


def test_structure_constants_validation(rng):
    with pytest.raises(ValueError):
        StructureConstants(np.ones((3, 3, 3)))  # not antisymmetric
    a = rng.normal(size=(4, 4, 4))
    bad = a - a.transpose(1, 0, 2)
    assert StructureConstants(bad, validate=False).jacobi_deviation() > 0
    with pytest.raises(ValueError):
        StructureConstants(bad)


def test_structure_constants_roundtrip():
    s = StructureConstants.su2("i")
    assert StructureConstants.from_dict(s.to_dict()) == s
    ps = PoissonStructure.kirillov_kostant(s)
    assert PoissonStructure.from_dict(ps.to_dict()).structure == s


def test_torus_bracket_examples():
    y10, y01 = TorusFunction.mode(1, 0), TorusFunction.mode(0, 1)
    np.testing.assert_allclose(torus_bracket(y10, y01).terms[(1, 1)], -np.pi)
    assert not torus_bracket(y10, y10)
    f = torus_bracket(TorusFunction.mode(2, 1), TorusFunction.mode(1, 3))
    np.testing.assert_allclose(f.terms[(3, 4)], -5 * np.pi)


modes = st.tuples(st.integers(0, 4), st.integers(0, 4))


@settings(max_examples=50, deadline=None)
@given(modes, modes, modes)
def test_torus_bracket_jacobi(a, b, c):
    f, g, h = (TorusFunction.mode(*m) for m in (a, b, c))
    total = (torus_bracket(torus_bracket(f, g), h) + torus_bracket(torus_bracket(g, h), f)
             + torus_bracket(torus_bracket(h, f), g))
    assert total.norm() < 1e-9

import numpy as np
import pytest

from fuzzylimit.limits import (ConeDescriptor, check_cone, equivalence_check,
                               scaling_exponent, strong_limit_falsifier)
from fuzzylimit.moyal import MoyalQuantization, MoyalSpec, intertwiner, intertwiner_apply
from fuzzylimit.poisson import PoissonStructure
from fuzzylimit.polynomial import Polynomial, TorusFunction, monomials_upto
from fuzzylimit.quantize import defect, sphere_qmap, torus_qmap

x1, x2, x3 = Polynomial.variables(3)
MONOS = [Polynomial.monomial(e) for e in monomials_upto(2, 4)]


def star_p_cone(ps=(0.5, 1.0, 2.0)):
    legs = [MoyalQuantization(MoyalSpec.star_p(p)) for p in ps]
    morphisms = [(i, j, intertwiner(legs[i].spec, legs[j].spec))
                 for i in range(len(ps)) for j in range(len(ps)) if i != j]
    return ConeDescriptor(PoissonStructure.canonical(), legs, morphisms)


def test_moyal_cone_commutes():
    ok, dev = check_cone(star_p_cone(), MONOS)
    assert ok and dev <= 1e-10


def test_single_leg_cone():
    c = ConeDescriptor(PoissonStructure.sphere(), [sphere_qmap(3)])
    assert check_cone(c, [x1, x2]) == (True, 0.0)


def test_perturbed_morphism_fails():
    c = star_p_cone((1.0, 2.0))
    t = c.morphisms[0][2]
    noise = Polynomial.constant(1e-3, 2)
    c.morphisms[0] = (0, 1, lambda f: t(f) + noise)
    ok, dev = check_cone(c, MONOS)
    assert not ok
    np.testing.assert_allclose(dev, 1e-3)


def test_cone_rejects_bad_morphism():
    with pytest.raises(ValueError):
        ConeDescriptor(None, [sphere_qmap(2)], [(0, 3, lambda m: m)])


def test_sphere_fuzzy_family_is_a_discrete_cone():
    legs = [sphere_qmap(k) for k in range(2, 6)]
    assert check_cone(ConeDescriptor(PoissonStructure.sphere(), legs), [x1, x2, x3])[0]


def test_linear_pair_is_exact():
    r = scaling_exponent(x1, x2, sphere_qmap, range(4, 12))
    assert r.verdict == "exact" and r.slope is None
    assert all(row["defect_norm"] == 0 for row in r.rows)


def test_quadratic_pair_slope():
    r = scaling_exponent(x1 * x2, x2 * x3, sphere_qmap, range(4, 41))
    assert r.verdict == "pass"
    assert r.slope >= 1.5
    assert len(r.rows) == 37


def test_torus_pair_slope():
    y10, y01 = TorusFunction.mode(1, 0), TorusFunction.mode(0, 1)
    r = scaling_exponent(y10, y01, torus_qmap, range(8, 65), norm="normalized")
    assert abs(r.slope - 2) <= 0.2
    fro = scaling_exponent(y10, y01, torus_qmap, range(8, 65))
    np.testing.assert_allclose(fro.slope, r.slope - 0.5, atol=1e-10)


def test_slopes_above_threshold_for_low_degree_pairs():
    pairs = [(x1 * x2, x2 * x3), (x1 * x2, x1 * x1 - x2 * x2), (x1 * x2 * x3, x1),
             (x1 * x1 * x2, x3)]
    for f, g in pairs:
        r = scaling_exponent(f, g, sphere_qmap, range(6, 25))
        assert r.verdict in ("pass", "exact")


def test_too_few_points_fail():
    r = scaling_exponent(x1 * x2, x2 * x3, sphere_qmap, [5, 6])
    assert r.verdict == "fail"


def test_scan_report_json():
    r = scaling_exponent(x1 * x2, x2 * x3, sphere_qmap, range(4, 8))
    assert '"verdict": "pass"' in r.to_json()
    assert set(r.to_dict()) >= {"family", "pair", "rows", "slope", "residual", "verdict"}


def test_moyal_equivalence(rng):
    H = rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))
    spec = MoyalSpec(H, 0.5 + 0.5j)
    qH, qJ = MoyalQuantization(spec), MoyalQuantization(spec.antisymmetric())
    res = equivalence_check(qH, qJ, lambda f: intertwiner_apply(f, spec), 3)
    assert res.equivalent and res.bijective
    assert res.morphism_deviation <= 1e-10


def test_identity_equivalence():
    q = MoyalQuantization(MoyalSpec.star_p(1.0))
    res = equivalence_check(q, q, lambda f: f, 3, phi=lambda f: f)
    assert res.equivalent and res.comma_deviation == 0
    qs = sphere_qmap(3)
    assert equivalence_check(qs, qs, lambda m: m, 2, phi=lambda f: f).equivalent


def test_sphere_sizes_are_not_equivalent():
    def pad(a):
        out = np.zeros((3, 3), dtype=complex)
        out[:2, :2] = a
        return out

    res = equivalence_check(sphere_qmap(2), sphere_qmap(3), pad, 2)
    assert not res.equivalent
    assert res.dims == (4, 9)


def test_non_multiplicative_iso_detected(rng):
    spec = MoyalSpec(rng.normal(size=(2, 2)), 1.0)
    qH, qJ = MoyalQuantization(spec), MoyalQuantization(spec.antisymmetric())
    res = equivalence_check(qH, qJ, lambda f: f, 2)
    assert not res.equivalent and res.morphism_deviation > 1e-3


def test_strong_limit_falsifier():
    q = sphere_qmap(3)
    f = strong_limit_falsifier(q)
    np.testing.assert_allclose(f.hbar, q.hbar / 2)
    for a, b in zip(f.images, q.images):
        np.testing.assert_allclose(a, b / 2)
    assert abs(f.hbar) < abs(q.hbar)
    np.testing.assert_allclose(defect(x1, x2, f), 0, atol=1e-15)

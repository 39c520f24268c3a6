import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from rs_maxwell import constitutive as C
from rs_maxwell import lorentz
from rs_maxwell.lorentz import BoostParam

seeds = st.integers(0, 2 ** 31 - 1)


def _f(rng):
    return rng.normal(size=3) + 1j * rng.normal(size=3)


def test_vacuum_and_dielectric():
    rng = np.random.default_rng(0)
    f = _f(rng)
    assert np.allclose(C.h_from_f_rest(C.UniformMedium(1, 1), f), f)
    E = rng.normal(size=3)
    assert np.allclose(C.h_from_f_rest(C.UniformMedium(2, 1), E + 0j), 2 * E)


def test_real_decomposition_at_rest():
    rng = np.random.default_rng(1)
    m = C.UniformMedium(3.0, 2.0)
    E, cB = rng.normal(size=(2, 3))
    h = C.h_from_f_rest(m, E + 1j * cB)
    assert np.allclose(h.real, m.eps * E) and np.allclose(h.imag, cB / m.mu)


def test_medium_validation():
    with pytest.raises(ValueError):
        C.UniformMedium(0.0, 1.0)
    with pytest.raises(ValueError):
        C.LinearMediumMatrices(np.ones((2, 2)), 1.0, 0.0, 0.0)


@settings(max_examples=50, deadline=None)
@given(st.floats(0.1, 10), st.floats(0.1, 10), seeds)
def test_inverse_pair(eps, mu, seed):
    f = _f(np.random.default_rng(seed))
    m = C.UniformMedium(eps, mu)
    back = C.f_from_h_rest(m, C.h_from_f_rest(m, f))
    assert np.abs(back - f).max() <= 1e-13 * max(1.0, np.abs(f).max())


def test_identity_frame():
    rng = np.random.default_rng(2)
    m = C.UniformMedium(2.5, 1.5)
    f = _f(rng)
    assert np.allclose(C.h_from_f_boosted(m, np.eye(3), f), C.h_from_f_rest(m, f))
    mm = C.LinearMediumMatrices(*rng.normal(size=(4, 3, 3)))
    assert np.allclose(C.h_from_f_linear_media_boosted(mm, np.eye(3), f), C.h_from_f_linear_media(mm, f))


def test_non_orthogonal_rejected():
    with pytest.raises(ValueError):
        C.h_from_f_boosted(C.UniformMedium(2, 1), np.diag([1, 2, 1]), np.ones(3))


@settings(max_examples=50, deadline=None)
@given(seeds)
def test_boosted_matches_pullback(seed):
    rng = np.random.default_rng(seed)
    m = C.UniformMedium(rng.uniform(0.5, 5), rng.uniform(0.5, 5))
    mm = C.LinearMediumMatrices(*(0.5 * rng.normal(size=(4, 3, 3))))
    O = lorentz.boost(lorentz.random_boost(rng, 5.0))
    assert C.check_medium_triple(m, mm, O, _f(rng)).max() <= 1e-10


def test_vacuum_frame_invariant():
    O = lorentz.boost(BoostParam(2.0, [0.0, 0.6, 0.8]))
    f = _f(np.random.default_rng(3))
    assert np.allclose(C.h_from_f_boosted(C.UniformMedium(1, 1), O, f), f)


@pytest.mark.parametrize("b", [0.0, 0.4, 3.0])
def test_o_squared(b):
    p = BoostParam(b, [0.48, 0.6, 0.64])
    O = lorentz.boost(p)
    assert np.abs(C.o_squared_double_angle(p) - O @ O).max() <= 1e-10 * max(1, np.abs(O).max() ** 2)


def test_o_squared_axis_entries():
    b = 0.5
    O2 = C.o_squared_double_angle(BoostParam(b, [0, 0, 1.0]))
    assert np.isclose(O2[0, 0], np.cosh(2 * b)) and np.isclose(O2[0, 1], -1j * np.sinh(2 * b))


def test_real_form_cases():
    rng = np.random.default_rng(4)
    E, cB = rng.normal(size=(2, 3))
    m = C.UniformMedium(2.0, 3.0)
    D, H = C.real_DH_from_EB_boosted(m, np.eye(3), E, cB)
    assert np.allclose(D, 2 * E) and np.allclose(H, cB / 3)
    O = lorentz.boost(lorentz.random_boost(rng))
    assert C.check_real_form(m, O, E, cB) <= 1e-11


def test_euclidean_invariance():
    rng = np.random.default_rng(5)
    for _ in range(20):
        R = lorentz.rotation(lorentz.random_rotation(rng)).astype(complex)
        m = C.UniformMedium(rng.uniform(0.5, 4), rng.uniform(0.5, 4))
        f = _f(rng)
        assert np.abs(C.frame_factor(R) - np.eye(3)).max() <= 1e-12
        assert np.abs(C.h_from_f_boosted(m, R, f) - C.h_from_f_rest(m, f)).max() <= 1e-12 * np.abs(f).max() * 5


def test_isotropic_reduction():
    m = C.UniformMedium(2.2, 0.7)
    f = _f(np.random.default_rng(6))
    iso = C.LinearMediumMatrices.from_uniform(m)
    assert np.abs(C.h_from_f_linear_media(iso, f) - C.h_from_f_rest(m, f)).max() <= 1e-13
    iso2 = C.LinearMediumMatrices.from_permeability(2.2, 0.7)
    assert np.allclose(iso2.inv_mu, iso.inv_mu)


def test_linear_media_real_parts():
    rng = np.random.default_rng(8)
    mm = C.LinearMediumMatrices(*rng.normal(size=(4, 3, 3)))
    E, cB = rng.normal(size=(2, 3))
    h = C.h_from_f_linear_media(mm, E + 1j * cB)
    assert np.abs(h.real - (mm.eps @ E + mm.alpha_m @ cB)).max() <= 1e-12
    assert np.abs(h.imag - (mm.beta_m @ E + mm.inv_mu @ cB)).max() <= 1e-12


def test_isotropic_media_keep_coefficients_under_boost():
    # for a scalar medium the similarity transport of the coefficients is trivial
    rng = np.random.default_rng(9)
    m = C.UniformMedium(3.0, 2.0)
    O = lorentz.boost(lorentz.random_boost(rng, 2.0))
    f = _f(rng)
    iso = C.LinearMediumMatrices.from_uniform(m)
    assert np.allclose(C.h_from_f_linear_media_boosted(iso, O, f), C.h_from_f_boosted(m, O, f), atol=1e-10)

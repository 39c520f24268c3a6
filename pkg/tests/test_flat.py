import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from rs_maxwell import flat, lorentz
from rs_maxwell.fields import central_gradient, random_analytic_field
from rs_maxwell.flat import EPS0, EMFieldPoint, SourcePoint

seeds = st.integers(0, 2 ** 31 - 1)


def test_assemble_psi_and_round_trip():
    p = EMFieldPoint([1, 0, 0], [0, 1, 0])
    assert np.array_equal(flat.assemble_psi(p), [0, 1, 1j, 0])
    q = flat.extract_fields(flat.assemble_psi(p))
    assert np.array_equal(q.E, p.E) and np.array_equal(q.cB, p.cB)
    assert not np.any(flat.assemble_psi(EMFieldPoint(np.zeros(3), np.zeros(3))))


def test_assemble_current():
    assert np.allclose(flat.assemble_current(SourcePoint(EPS0, np.zeros(3))), [1, 0, 0, 0])
    assert np.allclose(flat.assemble_current(SourcePoint(0.0, [0, 0, EPS0])), [0, 0, 0, 1j])
    assert not np.any(flat.assemble_current(SourcePoint()))


def test_non_finite_rejected():
    with pytest.raises(ValueError):
        EMFieldPoint([np.nan, 0, 0], [0, 0, 0])
    with pytest.raises(ValueError):
        flat.DerivativeStencil(np.zeros((3, 4)))


def test_plane_wave_solves_vacuum():
    at = flat.plane_wave(k=2.0)
    for x in np.random.default_rng(0).uniform(-3, 3, size=(10, 4)):
        _, _, dE, dcB = at(x)
        r = flat.residual_vacuum(flat.stencil_from_fields(dE, dcB), SourcePoint())
        assert np.abs(r).max() <= 1e-12


def test_violating_fields():
    z = np.zeros((4, 3))
    dE = np.zeros((4, 3))
    dE[3, 2] = 1.0  # E = e3 z: div E = 1
    r = flat.residual_vacuum(flat.stencil_from_fields(dE, z), SourcePoint())
    assert r[0] == 1.0 and not np.any(r[1:])
    dE = np.zeros((4, 3))
    dE[3, 0] = 1.0  # E = e1 z is divergence free but has a curl
    r = flat.residual_vacuum(flat.stencil_from_fields(dE, z), SourcePoint())
    assert r[0] == 0.0 and np.array_equal(r.real, [0, 0, 1, 0])


@settings(max_examples=50, deadline=None)
@given(seeds)
def test_real_split_matches_classical(seed):
    rng = np.random.default_rng(seed)
    dE, dcB = rng.normal(size=(4, 3)), rng.normal(size=(4, 3))
    s = SourcePoint(rng.normal() * EPS0, rng.normal(size=3) * EPS0)
    split = flat.split_vacuum_residual(flat.residual_vacuum(flat.stencil_from_fields(dE, dcB), s))
    ref = flat.maxwell_real_residuals(dE, dcB, s)
    for k in ref:
        assert np.abs(np.asarray(split[k]) - ref[k]).max() <= 1e-14


def test_assemble_MN():
    p = EMFieldPoint([1, 2, 3], [4, 5, 6], D=[1, 2, 3], H=[4, 5, 6])
    M, N = flat.assemble_MN(p)
    assert np.allclose(M, flat.assemble_psi(p)) and not np.any(N)
    M, N = flat.assemble_MN(EMFieldPoint(np.zeros(3), np.zeros(3), D=[1, 0, 0], H=np.zeros(3)))
    assert np.allclose(M, [0, 0.5, 0, 0]) and np.allclose(N, [0, 0.5, 0, 0])
    with pytest.raises(ValueError):
        flat.assemble_MN(EMFieldPoint(np.zeros(3), np.zeros(3)))


def test_MN_inversion():
    rng = np.random.default_rng(1)
    E, cB, D, H = rng.normal(size=(4, 3))
    M, N = flat.assemble_MN(EMFieldPoint(E, cB, D, H))
    h, f = D + 1j * H, E + 1j * cB
    assert np.abs(M[1:] + np.conj(N[1:]) - h).max() <= 1e-15
    assert np.abs(M[1:] - np.conj(N[1:]) - f).max() <= 1e-15


@settings(max_examples=30, deadline=None)
@given(seeds)
def test_media_reduces_to_vacuum_and_splits(seed):
    rng = np.random.default_rng(seed)
    dE, dcB, dD, dH = rng.normal(size=(4, 4, 3))
    s = SourcePoint(rng.normal() * EPS0, rng.normal(size=3) * EPS0)
    dM, dN = flat.stencils_MN(dE, dcB, dE, dcB)
    assert np.allclose(flat.residual_media(dM, dN, s),
                       flat.residual_vacuum(flat.stencil_from_fields(dE, dcB), s), atol=1e-14)
    dM, dN = flat.stencils_MN(dE, dcB, dD, dH)
    r = flat.residual_media(dM, dN, s)
    ref = flat.media_real_residuals(dE, dcB, dD, dH, s)
    split = flat.split_vacuum_residual(r)
    for k in ref:
        assert np.abs(np.asarray(split[k]) - ref[k]).max() <= 1e-13


def test_perturbed_H_moves_curl_residual():
    # central differences of a perturbation delta at one node scale like delta/dx
    dx, delta = 1e-2, 1e-6
    H = lambda z: np.array([0.0, delta if abs(z - dx) < dx / 2 else 0.0, 0.0])  # noqa: E731
    dHz = (H(dx) - H(-dx)) / (2 * dx)
    dH = np.zeros((4, 3))
    dH[3] = dHz
    z = np.zeros((4, 3))
    dM, dN = flat.stencils_MN(z, z, z, dH)
    r = flat.residual_media(dM, dN, SourcePoint())
    assert np.isclose(np.abs(r).max(), delta / (2 * dx))


@settings(max_examples=40, deadline=None)
@given(seeds)
def test_field_covariance_boost(seed):
    rng = np.random.default_rng(seed)
    p = lorentz.random_boost(rng, 5.0)
    d = np.zeros((4, 4), complex)
    d[:, 1:] = rng.normal(size=(4, 3)) + 1j * rng.normal(size=(4, 3))
    rep = flat.check_field_covariance(p, flat.DerivativeStencil(d),
                                      SourcePoint(rng.normal() * EPS0, rng.normal(size=3) * EPS0))
    assert rep.max() <= 1e-10


def test_covariance_on_analytic_field():
    # the same check, with derivatives of a smooth field instead of random numbers
    rng = np.random.default_rng(7)
    fld = random_analytic_field(rng, 6, np.zeros(4))
    x = rng.normal(size=4)
    g = fld.gradient(x)
    st_ = flat.stencil_from_fields(g[:, :3], g[:, 3:])
    for _ in range(5):
        assert flat.check_field_covariance(lorentz.random_boost(rng), st_, SourcePoint()).max() <= 1e-10
        assert flat.check_field_covariance(lorentz.random_rotation(rng), st_, SourcePoint()).max() <= 1e-12


def test_analytic_gradient_vs_fd():
    rng = np.random.default_rng(2)
    fld = random_analytic_field(rng, 5, rng.normal(size=4))
    x = rng.normal(size=4)
    e1 = np.abs(central_gradient(fld.value, x, 1e-2) - fld.gradient(x)).max()
    e2 = np.abs(central_gradient(fld.value, x, 5e-3) - fld.gradient(x)).max()
    assert e1 / e2 > 3.5

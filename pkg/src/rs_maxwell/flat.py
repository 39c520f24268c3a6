"""Flat-space matrix Maxwell equation, pointwise residuals in vacuum and media.

Quantities are stored in the coefficient-free groupings E, cB, D/eps0,
H/(eps0 c), rho, j = J/c, with x0 = ct. With psi = E + i cB and
Psi = (0, psi) the vacuum equations read

    (-i d0 + alpha^j d_j) Psi = J,   J = (rho, i j) / eps0.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.constants import epsilon_0 as EPS0

from . import algebra, lorentz
from .report import ResidualReport, max_abs, scaled_residual


def _vec(v, name):
    v = np.asarray(v, dtype=float).reshape(3)
    if not np.all(np.isfinite(v)):
        raise ValueError(f"{name} must be finite")
    return v


@dataclass(frozen=True)
class EMFieldPoint:
    """Field values at a point. ``D`` is D/eps0 and ``H`` is H/(eps0 c)."""

    E: np.ndarray
    cB: np.ndarray
    D: np.ndarray | None = None
    H: np.ndarray | None = None

    def __post_init__(self):
        for name in ("E", "cB", "D", "H"):
            v = getattr(self, name)
            if v is not None:
                object.__setattr__(self, name, _vec(v, name))

    @property
    def has_media(self):
        return self.D is not None and self.H is not None


@dataclass(frozen=True)
class SourcePoint:
    """Charge density and j = J/c, both in SI units."""

    rho: float = 0.0
    jvec: np.ndarray = np.zeros(3)

    def __post_init__(self):
        object.__setattr__(self, "jvec", _vec(self.jvec, "jvec"))
        if not np.isfinite(self.rho):
            raise ValueError("rho must be finite")


@dataclass(frozen=True)
class DerivativeStencil:
    """``d[mu]`` is the derivative along x^mu of a 4-column (shape (4, 4))."""

    d: np.ndarray

    def __post_init__(self):
        d = np.asarray(self.d, dtype=complex)
        if d.shape != (4, 4) or not np.all(np.isfinite(d)):
            raise ValueError("stencil must be a finite (4, 4) array d[mu, slot]")
        object.__setattr__(self, "d", d)


def as_column(v3) -> np.ndarray:
    """(0, v) with complex v."""
    out = np.zeros(4, dtype=complex)
    out[1:] = v3
    return out


def assemble_psi(f: EMFieldPoint) -> np.ndarray:
    return as_column(f.E + 1j * f.cB)


def extract_fields(psi) -> EMFieldPoint:
    psi = np.asarray(psi)
    return EMFieldPoint(psi[1:].real, psi[1:].imag)


def assemble_current(s: SourcePoint) -> np.ndarray:
    out = np.zeros(4, dtype=complex)
    out[0] = s.rho
    out[1:] = 1j * s.jvec
    return out / EPS0


def stencil_from_fields(dE, dcB) -> DerivativeStencil:
    """Stencil of Psi from derivatives dE[mu, k], dcB[mu, k] of E and cB."""
    dE, dcB = np.asarray(dE), np.asarray(dcB)
    d = np.zeros((4, 4), dtype=complex)
    d[:, 1:] = dE + 1j * dcB
    return DerivativeStencil(d)


def matrix_operator(d: DerivativeStencil, alphas=None) -> np.ndarray:
    """(-i d0 + M^j d_j) applied to the stencil; M defaults to alpha."""
    if alphas is None:
        alphas = [algebra.alpha(j) for j in (1, 2, 3)]
    return -1j * d.d[0] + sum(alphas[j] @ d.d[j + 1] for j in range(3))


def residual_vacuum(d: DerivativeStencil, s: SourcePoint) -> np.ndarray:
    return matrix_operator(d) - assemble_current(s)


def maxwell_real_residuals(dE, dcB, s: SourcePoint) -> dict:
    """The four real equations written out classically (x0 = ct).

    div E - rho/eps0, div cB, d0 cB + rot E, rot cB - d0 E - j/eps0.
    """
    dE, dcB = np.asarray(dE, dtype=float), np.asarray(dcB, dtype=float)

    def div(g):
        return g[1, 0] + g[2, 1] + g[3, 2]

    def rot(g):
        return np.array([g[2, 2] - g[3, 1], g[3, 0] - g[1, 2], g[1, 1] - g[2, 0]])

    return {
        "gauss_E": div(dE) - s.rho / EPS0,
        "gauss_B": div(dcB),
        "faraday": dcB[0] + rot(dE),
        "ampere": rot(dcB) - dE[0] - s.jvec / EPS0,
    }


def split_vacuum_residual(r) -> dict:
    """Regroup a vacuum residual column into the four real equations."""
    r = np.asarray(r)
    return {
        "gauss_E": r[0].real,
        "gauss_B": r[0].imag,
        "faraday": r[1:].real,
        "ampere": r[1:].imag,
    }


def assemble_MN(f: EMFieldPoint):
    """M = (h + f)/2 and N = (h* - f*)/2 as columns, h = D/eps0 + i H/(eps0 c)."""
    if not f.has_media:
        raise ValueError("assemble_MN needs D and H")
    M = 0.5 * (f.D + f.E) + 0.5j * (f.cB + f.H)
    N = 0.5 * (f.D - f.E) + 0.5j * (f.cB - f.H)
    return as_column(M), as_column(N)


def stencils_MN(dE, dcB, dD, dH):
    """Stencils of M and N from derivatives of the four real fields."""
    dE, dcB, dD, dH = (np.asarray(a, dtype=float) for a in (dE, dcB, dD, dH))
    dM = np.zeros((4, 4), dtype=complex)
    dN = np.zeros((4, 4), dtype=complex)
    dM[:, 1:] = 0.5 * (dD + dE) + 0.5j * (dcB + dH)
    dN[:, 1:] = 0.5 * (dD - dE) + 0.5j * (dcB - dH)
    return DerivativeStencil(dM), DerivativeStencil(dN)


def residual_media(dM: DerivativeStencil, dN: DerivativeStencil, s: SourcePoint) -> np.ndarray:
    """(-i d0 + alpha^i d_i) M + (-i d0 + beta^i d_i) N - J."""
    betas = [algebra.beta(j) for j in (1, 2, 3)]
    return matrix_operator(dM) + matrix_operator(dN, betas) - assemble_current(s)


def media_real_residuals(dE, dcB, dD, dH, s: SourcePoint) -> dict:
    """div D - rho, div cB, d0 cB + rot E, rot H - d0 D - j (normalized units)."""
    base = maxwell_real_residuals(dD, dcB, s)
    hom = maxwell_real_residuals(dE, dcB, s)
    amp = maxwell_real_residuals(dD, dH, s)
    return {
        "gauss_E": base["gauss_E"],
        "gauss_B": base["gauss_B"],
        "faraday": hom["faraday"],
        "ampere": amp["ampere"],
    }


def transform_stencil(p, d: DerivativeStencil, S) -> DerivativeStencil:
    """Derivatives of Psi' = S Psi in boosted coordinates."""
    d0p, gp = lorentz.transform_derivatives(p, d.d[0], d.d[1:])
    dp = np.concatenate([d0p[None], gp])
    return DerivativeStencil(dp @ S.T)


def check_field_covariance(p, psi_stencil: DerivativeStencil, s: SourcePoint) -> ResidualReport:
    """Boost the stencil and the current, re-evaluate the residual and compare
    with Delta S times the original residual. Works for any field and current
    (not only Maxwell solutions) because the operator identity is exact.

    ``p`` is a BoostParam or RotationParam.
    """
    rep = ResidualReport("field covariance")
    r = residual_vacuum(psi_stencil, s)
    if isinstance(p, lorentz.RotationParam):
        O = lorentz.rotation(p)
        S = lorentz.embed_S(O)
        L = lorentz.rotation_derivative_mixing(O)
        dp = DerivativeStencil(L @ psi_stencil.d @ S.T)
        sp = SourcePoint(s.rho, np.real(O) @ s.jvec)
        lhs = residual_vacuum(dp, sp)
        rhs = S @ r
        rep.add("rotated residual = S residual", scaled_residual(lhs - rhs, dp.d, assemble_current(sp), rhs))
        return rep
    O = lorentz.boost(p)
    S = lorentz.embed_S(O)
    D = lorentz.delta("alpha", p)
    _, _, j0p, jp = lorentz.transform_coordinates_current(p, 0.0, np.zeros(3), s.rho, s.jvec)
    sp = SourcePoint(j0p, jp)
    dp = transform_stencil(p, psi_stencil, S)
    lhs = residual_vacuum(dp, sp)
    rhs = D @ S @ r
    scale = max_abs(D) * max_abs(S) * max(max_abs(psi_stencil.d), max_abs(assemble_current(s)))
    rep.add("boosted residual = Delta S residual", max_abs(lhs - rhs) / max(1.0, scale))
    Jp = assemble_current(sp)
    DSJ = D @ S @ assemble_current(s)
    rep.add("J' = Delta S J", max_abs(Jp - DSJ) / max(1.0, max_abs(D) * max_abs(S) * max_abs(assemble_current(s))))
    return rep


def plane_wave(k=1.0, amplitude=1.0):
    """E = e1 A cos(k(z - x0)), cB = e2 A cos(k(z - x0)), returned as a
    function x -> (E, cB, dE, dcB) with exact derivatives."""

    def at(x):
        ph = k * (x[3] - x[0])
        c, s = amplitude * np.cos(ph), amplitude * np.sin(ph)
        E = np.array([c, 0, 0])
        cB = np.array([0, c, 0])
        dE = np.zeros((4, 3))
        dcB = np.zeros((4, 3))
        dE[0, 0] = k * s
        dE[3, 0] = -k * s
        dcB[0, 1] = k * s
        dcB[3, 1] = -k * s
        return E, cB, dE, dcB

    return at

"""Constitutive relations in complex form, at rest and in moving frames.

f = E + i cB and h = D/eps0 + i H/(eps0 c). For a uniform medium at rest
(D = eps0 eps E, H = B / (mu0 mu))

    2h = (eps + 1/mu) f + (eps - 1/mu) f*.

Under an SO(3,C) transformation both f and h pick up the same matrix O,
while f* picks up conj(O); that is the only source of frame dependence.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import lorentz
from .report import ResidualReport, max_abs, scaled_residual

ORTHO_TOL = 1e-10


@dataclass(frozen=True)
class UniformMedium:
    """Relative permittivity and relative permeability, both positive."""

    eps: float
    mu: float

    def __post_init__(self):
        if not (np.isfinite(self.eps) and np.isfinite(self.mu) and self.eps > 0 and self.mu > 0):
            raise ValueError(f"need eps > 0 and mu > 0, got eps={self.eps}, mu={self.mu}")


@dataclass(frozen=True)
class LinearMediumMatrices:
    """General linear medium at one point:

    D/eps0 = eps E + alpha_m cB,   H/(eps0 c) = beta_m E + inv_mu cB

    All four blocks are real 3x3. ``inv_mu`` is the inverse relative
    permeability, so the isotropic case is eps I, (1/mu) I, 0, 0.
    """

    eps: np.ndarray
    inv_mu: np.ndarray
    alpha_m: np.ndarray
    beta_m: np.ndarray

    def __post_init__(self):
        for name in ("eps", "inv_mu", "alpha_m", "beta_m"):
            m = np.asarray(getattr(self, name), dtype=float)
            if m.ndim == 0:
                m = m * np.eye(3)
            if m.shape != (3, 3) or not np.all(np.isfinite(m)):
                raise ValueError(f"{name} must be a finite scalar or 3x3 matrix")
            object.__setattr__(self, name, m)

    @classmethod
    def from_uniform(cls, m: UniformMedium):
        return cls(m.eps * np.eye(3), np.eye(3) / m.mu, np.zeros((3, 3)), np.zeros((3, 3)))

    @classmethod
    def from_permeability(cls, eps, mu, alpha=0.0, beta=0.0):
        """Build from the relative permeability (scalar or matrix) instead of its inverse."""
        mu = np.asarray(mu, dtype=float)
        inv_mu = 1.0 / mu if mu.ndim == 0 else np.linalg.inv(mu)
        return cls(eps, inv_mu, alpha, beta)

    def coefficients(self):
        """(A, B) with h = (A f + B f*)/2."""
        A = (self.eps + self.inv_mu) + 1j * (self.beta_m - self.alpha_m)
        B = (self.eps - self.inv_mu) + 1j * (self.beta_m + self.alpha_m)
        return A, B


def _conj(f, f_conj):
    return np.conj(f) if f_conj is None else np.asarray(f_conj)


def h_from_f_rest(m: UniformMedium, f, f_conj=None):
    f = np.asarray(f, dtype=complex)
    return 0.5 * ((m.eps + 1 / m.mu) * f + (m.eps - 1 / m.mu) * _conj(f, f_conj))


def f_from_h_rest(m: UniformMedium, h, h_conj=None):
    h = np.asarray(h, dtype=complex)
    return 0.5 * ((1 / m.eps + m.mu) * h + (1 / m.eps - m.mu) * _conj(h, h_conj))


def _check_so3c(O):
    O = np.asarray(O, dtype=complex)
    if O.shape != (3, 3):
        raise ValueError("O must be 3x3")
    scale = max(1.0, max_abs(O)) ** 2
    if max_abs(O @ O.T - np.eye(3)) > ORTHO_TOL * scale:
        raise ValueError("O is not complex orthogonal (O O^T != I)")
    return O


def frame_factor(O):
    """O conj(O^-1): equals O^2 for a boost and I for a real rotation."""
    O = _check_so3c(O)
    return O @ np.conj(lorentz.inverse_so3c(O))


def h_from_f_boosted(m: UniformMedium, O, f_prime, f_prime_conj=None):
    """2h' = (eps + 1/mu) f' + (eps - 1/mu) O conj(O^-1) f'*.

    For a pure boost conj(O^-1) = O and the factor is O^2.
    """
    K = frame_factor(O)
    f_prime = np.asarray(f_prime, dtype=complex)
    return 0.5 * ((m.eps + 1 / m.mu) * f_prime + (m.eps - 1 / m.mu) * (K @ _conj(f_prime, f_prime_conj)))


def o_squared_double_angle(p: lorentz.BoostParam):
    """O^2 written with the doubled rapidity, G = 1 - ch 2b."""
    n1, n2, n3 = p.n
    c2, s2 = np.cosh(2 * p.b), np.sinh(2 * p.b)
    G = 1.0 - c2
    return np.array([
        [c2 + G * n1 * n1, -1j * s2 * n3 + G * n1 * n2, 1j * s2 * n2 + G * n1 * n3],
        [1j * s2 * n3 + G * n1 * n2, c2 + G * n2 * n2, -1j * s2 * n1 + G * n2 * n3],
        [-1j * s2 * n2 + G * n1 * n3, 1j * s2 * n1 + G * n2 * n3, c2 + G * n3 * n3],
    ])


def real_DH_from_EB_boosted(m: UniformMedium, O, E_prime, cB_prime):
    """Real-vector form of the moving-frame relation.

    Returns (D'/eps0, H'/(eps0 c)) using Re and Im of K = O conj(O^-1).
    """
    K = frame_factor(O)
    ReK, ImK = K.real, K.imag
    a, b = m.eps + 1 / m.mu, m.eps - 1 / m.mu
    E_prime = np.asarray(E_prime, dtype=float)
    cB_prime = np.asarray(cB_prime, dtype=float)
    D = 0.5 * ((a * np.eye(3) + b * ReK) @ E_prime + b * ImK @ cB_prime)
    H = 0.5 * ((a * np.eye(3) - b * ReK) @ cB_prime + b * ImK @ E_prime)
    return D, H


def h_from_f_linear_media(mm: LinearMediumMatrices, f, f_conj=None):
    A, B = mm.coefficients()
    f = np.asarray(f, dtype=complex)
    return 0.5 * (A @ f + B @ _conj(f, f_conj))


def h_from_f_linear_media_boosted(mm: LinearMediumMatrices, O, f_prime, f_prime_conj=None):
    """Moving-frame relation for a medium given by its rest-frame matrices.

    The coefficient matrices are carried along by similarity, A' = O A O^-1,
    B' = O B O^-1, and the f'* term gets the frame factor O conj(O^-1).
    For isotropic media A' = A, B' = B and the coefficients stay as they are.
    """
    K = frame_factor(O)
    Oi = lorentz.inverse_so3c(O)
    A, B = mm.coefficients()
    A2 = O @ A @ Oi
    B2 = O @ B @ Oi
    f_prime = np.asarray(f_prime, dtype=complex)
    return 0.5 * (A2 @ f_prime + B2 @ K @ _conj(f_prime, f_prime_conj))


def pullback_oracle(rest_relation, O, f_prime):
    """h' = O rest(O^-1 f'): undo the transformation, apply the rest-frame law, redo it."""
    Oi = lorentz.inverse_so3c(np.asarray(O, dtype=complex))
    f = Oi @ np.asarray(f_prime, dtype=complex)
    return O @ rest_relation(f, np.conj(f))


def check_medium_triple(m: UniformMedium, mm: LinearMediumMatrices, O, f_prime) -> ResidualReport:
    """Compare both moving-frame relations with the pull-back oracle."""
    rep = ResidualReport("constitutive frame consistency")
    lhs = h_from_f_boosted(m, O, f_prime)
    rhs = pullback_oracle(lambda f, fc: h_from_f_rest(m, f, fc), O, f_prime)
    scale = max_abs(O) ** 2 * max(1.0, m.eps, 1 / m.mu) * max_abs(f_prime)
    rep.add("uniform moving frame vs pull-back", max_abs(lhs - rhs) / max(1.0, scale))
    lhs = h_from_f_linear_media_boosted(mm, O, f_prime)
    rhs = pullback_oracle(lambda f, fc: h_from_f_linear_media(mm, f, fc), O, f_prime)
    A, B = mm.coefficients()
    scale = max_abs(O) ** 2 * max(max_abs(A), max_abs(B)) * max_abs(f_prime)
    rep.add("linear media moving frame vs pull-back", max_abs(lhs - rhs) / max(1.0, scale))
    return rep


def check_real_form(m: UniformMedium, O, E_prime, cB_prime) -> float:
    """Real-vector relation vs Re/Im of the complex relation."""
    h = h_from_f_boosted(m, O, np.asarray(E_prime) + 1j * np.asarray(cB_prime))
    D, H = real_DH_from_EB_boosted(m, O, E_prime, cB_prime)
    return scaled_residual(np.concatenate([D - h.real, H - h.imag]), D, H)

"""Electromagnetic 4-vectors relative to an observer u and the Gamma(u) matrix form.

Metric diag(1,-1,-1,-1), eps^{0123} = +1. Field tensor with upper indices:
F^{i0} = E_i, F^{ij} = -eps_ijk cB_k; dual Ft^{ab} = 1/2 eps^{abcd} F_cd.

    e^a = u_b F^{ab},   b^a = u_b Ft^{ab},   Phi = e + i b,
    Gamma^a(u) d_a Phi = j / eps0  with real j = (rho, J/c).
"""

from __future__ import annotations

import numpy as np

from . import algebra, flat
from .algebra import ETA, levi_civita3, levi_civita4
from .report import ResidualReport, max_abs, scaled_residual

EPS4 = levi_civita4()
EPS3 = levi_civita3()
UNIT_TOL = 1e-12
ORTHO_TOL = 1e-10

# rows of the Esposito residual are beta times the rows of the base residual
BETA_MAP = np.diag([1, -1j, -1j, -1j])


def lower(v):
    return ETA @ np.asarray(v)


def mdot(a, b):
    """Minkowski product a.b."""
    return np.asarray(a) @ ETA @ np.asarray(b)


def check_unit(u):
    u = np.asarray(u, dtype=float).reshape(4)
    # u0^2 and |u|^2 cancel down to 1, so rounding grows with u0^2
    if not np.all(np.isfinite(u)) or abs(mdot(u, u) - 1.0) > UNIT_TOL * max(1.0, u[0] ** 2):
        raise ValueError(f"reference 4-vector must satisfy u.u = 1, got {mdot(u, u) if np.all(np.isfinite(u)) else u}")
    return u


def unit_timelike(v3) -> np.ndarray:
    """Future-pointing unit 4-vector with spatial part v3."""
    v3 = np.asarray(v3, dtype=float)
    return np.concatenate([[np.sqrt(1.0 + v3 @ v3)], v3])


def faraday(E, cB) -> np.ndarray:
    """F^{ab} from E and cB."""
    F = np.zeros((4, 4))
    F[1:, 0] = E
    F[0, 1:] = -np.asarray(E)
    F[1:, 1:] = -np.einsum("ijk,k->ij", EPS3, cB)
    return F


def dual(F) -> np.ndarray:
    """Ft^{ab} = 1/2 eps^{abcd} F_cd."""
    Fl = ETA @ F @ ETA
    return 0.5 * np.einsum("abcd,cd->ab", EPS4, Fl)


def fields_from_faraday(F):
    """(E, cB) back from F^{ab}."""
    E = F[1:, 0].copy()
    cB = -0.5 * np.einsum("ijk,ij->k", EPS3, F[1:, 1:])
    return E, cB


def project_e_b(F, u):
    """e^a = u_b F^{ab}, b^a = u_b Ft^{ab}."""
    u = check_unit(u)
    ul = lower(u)
    return F @ ul, dual(F) @ ul


def project_e_b_3d(E, cB, u):
    """The same projections written with 3-vectors (direct formulas)."""
    u0, uv = u[0], np.asarray(u[1:])
    E, cB = np.asarray(E), np.asarray(cB)
    e = np.concatenate([[uv @ E], u0 * E + np.cross(uv, cB)])
    b = np.concatenate([[uv @ cB], u0 * cB - np.cross(uv, E)])
    return e, b


def reconstruct_F(e, b, u) -> np.ndarray:
    """F^{ab} = e^a u^b - e^b u^a - eps^{abcd} b_c u_d."""
    u = check_unit(u)
    e, b = np.asarray(e, dtype=float), np.asarray(b, dtype=float)
    scale = max(1.0, max_abs(e), max_abs(b)) * max(1.0, max_abs(u))
    if abs(mdot(e, u)) > ORTHO_TOL * scale or abs(mdot(b, u)) > ORTHO_TOL * scale:
        raise ValueError("e and b must be orthogonal to u")
    return np.outer(e, u) - np.outer(u, e) - np.einsum("abcd,c,d->ab", EPS4, lower(b), lower(u))


def U_matrix(u) -> np.ndarray:
    """6x6 real map (E, cB) -> spatial parts of (e, b)."""
    u = check_unit(u)
    u0, X = u[0], algebra.cross_matrix(u[1:])
    I = np.eye(3)
    return np.block([[u0 * I, X], [-X, u0 * I]])


def U_complex(u) -> np.ndarray:
    """4x4 complex map Psi = (0, psi) -> Phi = e + i b.

    Phi^0 = u.psi, Phi_vec = u0 psi - i u x psi.
    """
    u = check_unit(u)
    out = np.zeros((4, 4), dtype=complex)
    out[0, 1:] = u[1:]
    out[1:, 1:] = u[0] * np.eye(3) - 1j * algebra.cross_matrix(u[1:])
    return out


def phi_from_fields(E, cB, u):
    e, b = project_e_b(faraday(E, cB), u)
    return e + 1j * b


def gamma_u(a: int, u) -> np.ndarray:
    """(Gamma^a)^b_c = delta^a_c u^b - delta^b_c u^a + i eps^{abrs} g_rc u_s."""
    if a not in (0, 1, 2, 3):
        raise ValueError("Gamma index must be 0..3")
    u = np.asarray(u, dtype=float)
    ul = lower(u)
    d = np.eye(4)
    G = np.outer(u, d[a]) - d * u[a]
    G = G + 1j * np.einsum("brs,rc,s->bc", EPS4[a], ETA, ul)
    return G


def special_alpha(j: int) -> np.ndarray:
    """alpha^j with its first column dropped, and alpha^0 = diag(0,1,1,1).

    On columns with vanishing slot 0 these act exactly like the base
    matrices (with -i alpha^0 in place of -i I).
    """
    if j == 0:
        return np.diag([0, 1, 1, 1]).astype(complex)
    m = algebra.alpha(j)
    m[:, 0] = 0
    return m


def residual_esposito(dphi, u, j) -> np.ndarray:
    """Gamma^a(u) d_a Phi - j/eps0 with dphi[a] = d_a Phi and real upper j."""
    dphi = np.asarray(dphi)
    return sum(gamma_u(a, u) @ dphi[a] for a in range(4)) - np.asarray(j, dtype=complex) / flat.EPS0


def rest_frame_gammas():
    """Expected rest-frame matrices, entered entry by entry."""
    G0 = np.diag([0, -1, -1, -1]).astype(complex)
    G = [G0]
    for k in (1, 2, 3):
        m = np.zeros((4, 4), dtype=complex)
        m[0, k] = 1
        p, q = (k % 3) + 1, ((k + 1) % 3) + 1
        m[p, q] = 1j
        m[q, p] = -1j
        G.append(m)
    return G


def check_rest_frame() -> ResidualReport:
    rep = ResidualReport("rest frame Gamma")
    u = np.array([1.0, 0, 0, 0])
    for a, expect in enumerate(rest_frame_gammas()):
        rep.add(f"Gamma^{a}(rest) entries", max_abs(gamma_u(a, u) - expect))
    rep.add("beta (-i alpha^0) = Gamma^0", max_abs(BETA_MAP @ (-1j * special_alpha(0)) - gamma_u(0, u)))
    for k in (1, 2, 3):
        rep.add(f"beta alpha^{k} = Gamma^{k}", max_abs(BETA_MAP @ special_alpha(k) - gamma_u(k, u)))
    return rep


def check_equivalence_base(u, E, cB, dE, dcB, rho=0.0, jvec=(0, 0, 0)) -> ResidualReport:
    """Esposito residual vs beta times the base residual at one point.

    Phi and its derivatives are built from (E, cB) through the tensor
    projections; the base side recovers (E, cB) from Phi with U(u)^-1 and
    evaluates the ordinary matrix equation.
    """
    u = check_unit(u)
    rep = ResidualReport("esposito equivalence")
    dE, dcB = np.asarray(dE), np.asarray(dcB)
    dphi = np.array([phi_from_fields(dE[a], dcB[a], u) for a in range(4)])
    jvec = np.asarray(jvec, dtype=float)
    r_esp = residual_esposito(dphi, u, np.concatenate([[rho], jvec]))

    Ui = np.linalg.inv(U_matrix(u))
    back = np.array([Ui @ np.concatenate([dphi[a].real[1:], dphi[a].imag[1:]]) for a in range(4)])
    st = flat.stencil_from_fields(back[:, :3], back[:, 3:])
    r_base = flat.residual_vacuum(st, flat.SourcePoint(rho, jvec))
    rep.add("Esposito residual = beta base residual",
            scaled_residual(r_esp - BETA_MAP @ r_base, r_esp, dphi, u[0] ** 2))
    rep.add("(e, b) -> (E, cB) recovery", scaled_residual(back - np.hstack([dE, dcB]), dE, dcB))

    # operator form: Gamma^a(u) U_c(u) = beta C^a on columns with zero slot 0
    Uc = U_complex(u)
    C = [algebra.ALPHA0] + [algebra.alpha(k) for k in (1, 2, 3)]
    op = max(max_abs((gamma_u(a, u) @ Uc - BETA_MAP @ C[a])[:, 1:]) for a in range(4))
    rep.add("Gamma^a U = beta alpha^a", op / max(1.0, u[0] ** 2))
    return rep

"""Matrix Maxwell equations on curved backgrounds through a tetrad.

Conventions
-----------
* Metric signature (+,-,-,-), tetrad e_(a)^alpha with eta^{ab} e_(a)alpha e_(b)beta = g_alpha beta.
* Ricci rotation coefficients
      gamma_abc = e_(a)^beta e_(c)^alpha nabla_alpha e_(b)beta,
  antisymmetric in (a, b). With this ordering the radial leg of flat
  spherical coordinates has gamma_122 = gamma_133 = +1/r and
  nabla_beta e_(1)^beta = -gamma_1c^c = 2/r.
* v_a = (gamma_01a, gamma_02a, gamma_03a), p_a = (gamma_23a, gamma_31a, gamma_12a),
  connection A_(k)a = p_a[k] + i v_a[k], A_a = S^k A_(k)a.
* Tensor side: F_(0)(i) = E_(i), F_(i)(j) = eps_ijk cB_(k). The matrix side
  works with the ordinary fields E_k = E_(k), B_k = -B_(k), so
  psi = E_(k) - i cB_(k). The same rule maps (D, H) for media.

Curved matrix residual (tetrad derivatives d_(c) = e_(c)^rho d_rho):

    R = -i (d_(0) + A_0) Psi + alpha^k (d_(k) + A_k) Psi - J.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import Callable

import numpy as np
from scipy.linalg import expm

from . import algebra, flat
from .algebra import ETA, levi_civita3
from .fields import central_gradient
from .report import ResidualReport, max_abs

EPS3 = levi_civita3()
EPS0 = flat.EPS0

# Bianchi triples in the order of the component equations they pair with
BIANCHI_TRIPLES = ((1, 2, 3), (0, 2, 3), (0, 3, 1), (0, 1, 2))
METRICS = ("minkowski_cartesian", "minkowski_spherical", "schwarzschild")
DEFAULT_FD_STEP = 1e-5


class DomainError(ValueError):
    """Point outside the chart (horizon, origin, or polar axis)."""


# ----------------------------------------------------------------- metrics

def _mink_cart(params):
    def g(x):
        return ETA.copy()

    def dg(x):
        return np.zeros((4, 4, 4))

    return ("t", "x", "y", "z"), g, dg, lambda x: None


def _spherical_guard(x):
    if x[1] <= 0:
        raise DomainError(f"r must be positive, got {x[1]}")
    if abs(np.sin(x[2])) < 1e-8:
        raise DomainError(f"sin(theta) = 0 at theta = {x[2]} (polar axis)")


def _mink_sph(params):
    def g(x):
        r, th = x[1], x[2]
        return np.diag([1.0, -1.0, -r * r, -(r * np.sin(th)) ** 2])

    def dg(x):
        r, th = x[1], x[2]
        d = np.zeros((4, 4, 4))
        d[1, 2, 2] = -2 * r
        d[1, 3, 3] = -2 * r * np.sin(th) ** 2
        d[2, 3, 3] = -2 * r * r * np.sin(th) * np.cos(th)
        return d

    return ("t", "r", "theta", "phi"), g, dg, _spherical_guard


def _schwarzschild(params):
    M = float(params.get("M", params.get("mass", 1.0)))
    if not M > 0:
        raise ValueError(f"Schwarzschild mass must be positive, got {M}")

    def guard(x):
        _spherical_guard(x)
        if x[1] <= 2 * M:
            raise DomainError(f"r = {x[1]} is not outside the horizon r = {2 * M}")

    def g(x):
        r, th = x[1], x[2]
        f = 1 - 2 * M / r
        return np.diag([f, -1 / f, -r * r, -(r * np.sin(th)) ** 2])

    def dg(x):
        r, th = x[1], x[2]
        f = 1 - 2 * M / r
        fp = 2 * M / r ** 2
        d = np.zeros((4, 4, 4))
        d[1, 0, 0] = fp
        d[1, 1, 1] = fp / f ** 2
        d[1, 2, 2] = -2 * r
        d[1, 3, 3] = -2 * r * np.sin(th) ** 2
        d[2, 3, 3] = -2 * r * r * np.sin(th) * np.cos(th)
        return d

    return ("t", "r", "theta", "phi"), g, dg, guard


_CATALOG = {
    "minkowski_cartesian": _mink_cart,
    "minkowski_spherical": _mink_sph,
    "schwarzschild": _schwarzschild,
}


@dataclass
class MetricPatch:
    """Metric, inverse and first derivatives dg[mu, a, b] = d_mu g_ab at one point."""

    name: str
    coords: tuple
    x: np.ndarray
    g: np.ndarray
    ginv: np.ndarray
    dg: np.ndarray
    fn: Callable = field(repr=False, default=None)
    guard: Callable = field(repr=False, default=None)
    fd_step: float | None = None

    def christoffel(self) -> np.ndarray:
        """Gamma^l_{mn} as an array [l, m, n]."""
        dg = self.dg
        low = 0.5 * (np.einsum("msn->smn", dg) + np.einsum("nsm->smn", dg) - np.einsum("smn->smn", dg))
        return np.einsum("ls,smn->lmn", self.ginv, low)

    def at(self, x):
        """Same metric at another point (same derivative strategy)."""
        return _make_patch(self.name, self.coords, self.fn, self._dg_fn, self.guard, x, self.fd_step)


def _make_patch(name, coords, g_fn, dg_fn, guard, x, fd_step):
    x = np.asarray(x, dtype=float).reshape(4)
    guard(x)
    g = g_fn(x)
    if fd_step:
        dg = central_gradient(g_fn, x, fd_step)
    else:
        dg = dg_fn(x)
    p = MetricPatch(name, coords, x, g, np.linalg.inv(g), dg, g_fn, guard, fd_step)
    p._dg_fn = dg_fn
    return p


def metric_catalog(name: str, params=None, point=None, fd_step=None) -> MetricPatch:
    """Metric ``name`` at ``point``; derivatives analytic unless ``fd_step`` is given."""
    if name not in _CATALOG:
        raise ValueError(f"unknown metric {name!r}; choose from {', '.join(METRICS)}")
    coords, g_fn, dg_fn, guard = _CATALOG[name](params or {})
    if point is None:
        point = [0.0, 0.0, 0.0, 0.0] if name == "minkowski_cartesian" else [0.0, 4.0, np.pi / 2, 0.0]
    return _make_patch(name, coords, g_fn, dg_fn, guard, point, fd_step)


# ----------------------------------------------------------------- tetrads

@dataclass
class TetradPatch:
    """e_up[a, alpha] = e_(a)^alpha, e_dn[a, alpha] = e_(a)alpha, de_dn[mu, a, alpha]."""

    metric: MetricPatch
    e_up: np.ndarray
    e_dn: np.ndarray
    de_dn: np.ndarray
    e_dn_fn: Callable = field(repr=False, default=None)

    @property
    def x(self):
        return self.metric.x

    @property
    def e_inv(self):
        """e^(a)_mu = eta^{ab} e_(b)mu."""
        return ETA @ self.e_dn

    def completeness(self) -> float:
        return max_abs(self.e_dn.T @ ETA @ self.e_dn - self.metric.g)


def tetrad_from_function(m: MetricPatch, e_dn_fn, de_dn=None, fd_step=None) -> TetradPatch:
    """Tetrad from a callable x -> e_(a)alpha; derivatives given or by central differences."""
    e_dn = np.asarray(e_dn_fn(m.x), dtype=float)
    if de_dn is None:
        de_dn = central_gradient(e_dn_fn, m.x, fd_step or m.fd_step or DEFAULT_FD_STEP)
    return TetradPatch(m, e_dn @ m.ginv, e_dn, np.asarray(de_dn), e_dn_fn)


def diagonal_tetrad(m: MetricPatch) -> TetradPatch:
    """e_(a)^alpha = delta_a^alpha / sqrt|g_aa| for a diagonal metric."""
    off = m.g - np.diag(np.diag(m.g))
    if max_abs(off) > 1e-14 * max(1.0, max_abs(m.g)):
        raise NotImplementedError("diagonal_tetrad needs a diagonal metric")

    def e_dn_fn(x):
        gd = np.diag(m.fn(x))
        return np.diag(np.sign(gd) * np.sqrt(np.abs(gd)))

    gd = np.diag(m.g)
    if m.fd_step:
        de = central_gradient(e_dn_fn, m.x, m.fd_step)
    else:
        de = np.zeros((4, 4, 4))
        for a in range(4):
            de[:, a, a] = m.dg[:, a, a] / (2 * np.sqrt(abs(gd[a])))
    return tetrad_from_function(m, e_dn_fn, de)


# ----------------------------------------------------------- rotation coefficients

@dataclass
class RotationCoefficients:
    gamma: np.ndarray  # [a, b, c]

    @property
    def v(self):
        """v[a] = (gamma_01a, gamma_02a, gamma_03a); shape (4 a, 3 k)."""
        return self.gamma[0, 1:, :].T.copy()

    @property
    def p(self):
        """p[a] = (gamma_23a, gamma_31a, gamma_12a); shape (4 a, 3 k)."""
        g = self.gamma
        return np.stack([g[2, 3, :], g[3, 1, :], g[1, 2, :]], axis=1)

    def antisymmetry(self) -> float:
        return max_abs(self.gamma + self.gamma.transpose(1, 0, 2))


def ricci_rotation(t: TetradPatch, check=True, tol=None) -> RotationCoefficients:
    """gamma_abc from the tetrad, its derivatives and the Christoffel symbols.

    Antisymmetry in (a, b) is checked, not imposed. With finite-difference
    metric derivatives the allowed defect grows like the step squared.
    """
    if tol is None:
        h = t.metric.fd_step or 0.0
        tol = 1e-9 + 1e3 * h * h
    Gam = t.metric.christoffel()
    cov = t.de_dn - np.einsum("lab,cl->acb", Gam, t.e_dn)  # nabla_alpha e_(b)beta as [alpha, b, beta]
    gamma = np.einsum("aB,cA,AbB->abc", t.e_up, t.e_up, cov)
    rc = RotationCoefficients(gamma)
    if check:
        bad = rc.antisymmetry()
        scale = max(1.0, max_abs(gamma))
        if not np.isfinite(bad) or bad > tol * scale:
            raise FloatingPointError(
                f"rotation coefficients not antisymmetric (defect {bad:.3g}); "
                f"tetrad completeness defect {t.completeness():.3g}")
    return rc


def leg_divergence(g: RotationCoefficients) -> np.ndarray:
    """nabla_beta e_(b)^beta = -gamma_bc^c."""
    return -np.einsum("bcc,c->b", g.gamma, np.diag(ETA))


# ----------------------------------------------------------------- connection

@dataclass
class ConnectionComponents:
    """A[k, c] = A_(k+1)(c) with tetrad index c."""

    A: np.ndarray

    def matrices(self):
        """4x4 matrices A_c = S^k A_(k)c."""
        S = [algebra.generator("S", k) for k in (1, 2, 3)]
        return [sum(S[k] * self.A[k, c] for k in range(3)) for c in range(4)]

    def coordinate(self, t: TetradPatch) -> np.ndarray:
        """A_(k)rho = A_(k)(c) e^(c)_rho, shape (3, 4)."""
        return self.A @ t.e_inv

    def coordinate_blocks(self, t: TetradPatch):
        """3x3 blocks A_rho = tau_k A_(k)rho."""
        Ar = self.coordinate(t)
        tau = [algebra.tau(k) for k in (1, 2, 3)]
        return [sum(tau[k] * Ar[k, r] for k in range(3)) for r in range(4)]


def connection_components(g: RotationCoefficients) -> ConnectionComponents:
    return ConnectionComponents((g.p + 1j * g.v).T)


def cyclic_assembly(A_ab) -> np.ndarray:
    """A_(1) = A_23 + i A_01 and cyclic, for an antisymmetric 4x4 block."""
    A = np.asarray(A_ab)
    return np.array([A[2, 3] + 1j * A[0, 1], A[3, 1] + 1j * A[0, 2], A[1, 2] + 1j * A[0, 3]])


def sigma_trace_check(A_ab) -> ResidualReport:
    """Compare the sigma-matrix constructions with the cyclic assembly."""
    A = np.asarray(A_ab)
    rep = ResidualReport("sigma traces")
    if max_abs(A + A.T) > 1e-12 * max(1.0, max_abs(A)):
        raise ValueError("input must be antisymmetric")
    s = [algebra.pauli(a) for a in range(4)]
    sb = [algebra.pauli_bar(a) for a in range(4)]
    Ak = cyclic_assembly(A)
    Akb = np.conj(cyclic_assembly(np.conj(A)))  # A_23 - i A_01, cyclic
    X = 0.5j * sum(sb[a] @ s[b] * A[a, b] for a in range(4) for b in range(4))
    Y = 0.5j * sum(s[a] @ sb[b] * A[a, b] for a in range(4) for b in range(4))
    rep.add("(i/2) sigmabar^a sigma^b A_ab = sigma^k A_k", max_abs(X - sum(s[k + 1] * Ak[k] for k in range(3))))
    rep.add("(i/2) sigma^a sigmabar^b A_ab = sigma^k conj-assembly",
            max_abs(Y - sum(s[k + 1] * Akb[k] for k in range(3))))
    tr = np.array([0.5 * np.trace(s[k + 1] @ X) for k in range(3)])
    tr_full = np.array([0.25j * sum(np.trace(s[k + 1] @ sb[a] @ s[b]) * A[a, b] for a in range(4) for b in range(4))
                        for k in range(3)])
    rep.add("A_k = (i/4) Tr[sigma_k sigmabar^a sigma^b A_ab]", max_abs(tr_full - Ak))
    rep.add("trace of assembled matrix", max_abs(tr - Ak))
    return rep


# ----------------------------------------------------------- local Lorentz fields

def psi_from_frame_tensor(F) -> np.ndarray:
    """psi_k = F_0k - (i/2) eps_kij F_ij for a frame tensor with lower indices."""
    F = np.asarray(F)
    return F[0, 1:] - 0.5j * np.einsum("kij,ij->k", EPS3, F[1:, 1:])


def frame_tensor(E, cB) -> np.ndarray:
    """F_(a)(b) with F_0i = E_i, F_ij = eps_ijk cB_k."""
    F = np.zeros((4, 4), dtype=np.result_type(E, cB, float))
    F[0, 1:] = E
    F[1:, 0] = -np.asarray(E)
    F[1:, 1:] = np.einsum("ijk,k->ij", EPS3, cB)
    return F


def so3c_image(L) -> np.ndarray:
    """SO(3,C) matrix O with psi' = O psi when frames change as e' = L e.

    Frame components of a 2-form transform as F' = L F L^T.
    """
    O = np.zeros((3, 3), dtype=complex)
    for m in range(3):
        E = np.zeros(3)
        E[m] = 1.0
        F = frame_tensor(E, np.zeros(3))
        O[:, m] = psi_from_frame_tensor(L @ F @ L.T)
    return O


@dataclass
class LocalLorentz:
    """L(x) = expm(b(x) K) with b(x) = b0 + b1.x, K in so(1,3) acting on frame indices."""

    K: np.ndarray
    b0: float
    b1: np.ndarray

    def __post_init__(self):
        self.K = np.asarray(self.K, dtype=float)
        self.b1 = np.asarray(self.b1, dtype=float).reshape(4)
        if max_abs(self.K @ ETA + ETA @ self.K.T) > 1e-14:
            raise ValueError("K must satisfy K eta + eta K^T = 0")

    def b(self, x):
        return self.b0 + self.b1 @ np.asarray(x)

    def L(self, x):
        return expm(self.b(x) * self.K)

    def dL(self, x):
        """d_mu L, shape (4, 4, 4)."""
        Lx = self.L(x)
        return np.array([self.b1[m] * self.K @ Lx for m in range(4)])

    def apply(self, t: TetradPatch) -> TetradPatch:
        x = t.x
        Lx = self.L(x)
        e_dn = Lx @ t.e_dn
        de = np.einsum("mab,bc->mac", self.dL(x), t.e_dn) + np.einsum("ab,mbc->mac", Lx, t.de_dn)
        fn = t.e_dn_fn

        def e_dn_fn(y):
            return self.L(y) @ fn(y)

        return TetradPatch(t.metric, e_dn @ t.metric.ginv, e_dn, de, e_dn_fn)

    @classmethod
    def boost(cls, axis, b0, b1):
        K = np.zeros((4, 4))
        K[0, axis] = K[axis, 0] = 1.0
        return cls(K, b0, b1)

    @classmethod
    def rotation(cls, axis, b0, b1):
        i, j = [(2, 3), (3, 1), (1, 2)][axis - 1]
        K = np.zeros((4, 4))
        K[i, j], K[j, i] = -1.0, 1.0
        return cls(K, b0, b1)


def check_connection_transform(t: TetradPatch, L_field: LocalLorentz, h=1e-5) -> ResidualReport:
    """O A_rho O^-1 + O d_rho O^-1 = A'_rho, with A' computed from e' = L e.

    Also checks the auxiliary identity
    tau^l O_lk (i/4) Tr[sigma_k sigmabar^a sigma^b C_ab,rho] + O d_rho O^-1 = 0,
    C_ab,rho = (L^-1)_a^m eta_mn d_rho (L^-1)_b^n.
    """
    rep = ResidualReport("connection transform")
    x = t.x
    A = connection_components(ricci_rotation(t)).coordinate_blocks(t)
    t2 = L_field.apply(t)
    A2 = connection_components(ricci_rotation(t2)).coordinate_blocks(t2)
    O = so3c_image(L_field.L(x))
    Oi = O.T
    dOi = central_gradient(lambda y: so3c_image(L_field.L(y)).T, x, h)
    res = max(max_abs(O @ A[r] @ Oi + O @ dOi[r] - A2[r]) for r in range(4))
    scale = max(1.0, max_abs(O) ** 2 * max(max_abs(np.array(A)), max_abs(dOi)))
    rep.add("O A O^-1 + O dO^-1 = A'", res / scale)
    rep.add("SO(3,C) image orthogonal", max_abs(O @ O.T - np.eye(3)) / max(1.0, max_abs(O) ** 2))

    Li = np.linalg.inv(L_field.L(x))
    dLi = central_gradient(lambda y: np.linalg.inv(L_field.L(y)), x, h)
    s = [algebra.pauli(a) for a in range(4)]
    sb = [algebra.pauli_bar(a) for a in range(4)]
    tau = [algebra.tau(k) for k in (1, 2, 3)]
    worst = 0.0
    for r in range(4):
        C = Li @ ETA @ dLi[r].T
        ck = np.array([0.25j * sum(np.trace(s[k + 1] @ sb[a] @ s[b]) * C[a, b]
                                   for a in range(4) for b in range(4)) for k in range(3)])
        lhs = sum(tau[l] * (O[l] @ ck) for l in range(3)) + O @ dOi[r]
        worst = max(worst, max_abs(lhs))
    rep.add("tau^l O_lk Tr[...C] + O dO^-1 = 0", worst / scale)
    return rep


# ----------------------------------------------------------------- field samples

@dataclass
class TetradFieldSample:
    """Tetrad (tensor-side) components at a point and their tetrad derivatives.

    dE[a, k] = d_(a) E_(k). ``rho`` and ``j`` are the frame components j^(0)
    and j^(k) of the source (SI, j = J/c). Media samples also carry
    D/eps0 and H/(eps0 c) in the same tensor-side convention.
    """

    E: np.ndarray
    cB: np.ndarray
    dE: np.ndarray
    dcB: np.ndarray
    rho: float = 0.0
    j: np.ndarray = field(default_factory=lambda: np.zeros(3))
    D: np.ndarray | None = None
    H: np.ndarray | None = None
    dD: np.ndarray | None = None
    dH: np.ndarray | None = None

    @property
    def has_media(self):
        return self.D is not None

    def vacuum_part(self):
        return replace(self, D=None, H=None, dD=None, dH=None)

    def with_vacuum_media(self):
        """D = E, H = cB: the medium that reduces to vacuum."""
        return replace(self, D=self.E, H=self.cB, dD=self.dE, dH=self.dcB)


def sample_from_field(t: TetradPatch, fld, x=None, rho=0.0, j=(0, 0, 0), h=None) -> TetradFieldSample:
    """Evaluate a field object with ``value``/``gradient`` (6 or 12 components:
    E, cB[, D, H] in frame components) and project derivatives on the tetrad.
    With ``h`` the gradient is taken by central differences of ``value``."""
    x = t.x if x is None else x
    val = np.asarray(fld.value(x))
    grad = central_gradient(fld.value, x, h) if h else np.asarray(fld.gradient(x))
    dt = t.e_up @ grad  # d_(a) = e_(a)^rho d_rho
    kw = dict(E=val[0:3], cB=val[3:6], dE=dt[:, 0:3], dcB=dt[:, 3:6], rho=float(rho), j=np.asarray(j, float))
    if val.shape[0] >= 12:
        kw.update(D=val[6:9], H=val[9:12], dD=dt[:, 6:9], dH=dt[:, 9:12])
    return TetradFieldSample(**kw)


# ----------------------------------------------------------------- residuals

def _column_and_stencil(X, Y, dX, dY):
    # matrix-side psi = X - i Y for tensor-side components (X, Y)
    col = flat.as_column(X - 1j * Y)
    d = np.zeros((4, 4), dtype=complex)
    d[:, 1:] = dX - 1j * dY
    return col, d


def _current(f: TetradFieldSample):
    return flat.assemble_current(flat.SourcePoint(f.rho, f.j))


def _covariant_op(col, d, Acs, Ms):
    return sum(Ms[c] @ (d[c] + Acs[c] @ col) for c in range(4))


def residual_matrix_curved(t: TetradPatch, g: RotationCoefficients, f: TetradFieldSample) -> np.ndarray:
    """Sum_c M^c (d_(c) + A_c) Psi - J with M^0 = -i I, M^k = alpha^k."""
    Acs = connection_components(g).matrices()
    Ms = [algebra.ALPHA0] + [algebra.alpha(k) for k in (1, 2, 3)]
    col, d = _column_and_stencil(f.E, f.cB, f.dE, f.dcB)
    return _covariant_op(col, d, Acs, Ms) - _current(f)


def residual_media_curved(t: TetradPatch, g: RotationCoefficients, f: TetradFieldSample):
    """Curved media residual with M and N; N couples to the conjugate connection.

    Returns (R, R_N) where R is the full residual
        sum_c alpha^c (d_c + A_c) M + sum_c beta^c (d_c + A*_c) N - J
    and R_N the N-part alone (so R - R_N is the M-part minus J).
    """
    if not f.has_media:
        raise ValueError("media residual needs D and H")
    Acs = connection_components(g).matrices()
    Bcs = [np.conj(A) for A in Acs]
    Ma = [algebra.ALPHA0] + [algebra.alpha(k) for k in (1, 2, 3)]
    Mb = [algebra.ALPHA0] + [algebra.beta(k) for k in (1, 2, 3)]
    # physical fields: E = E_(k), cB = -cB_(k), D = D_(k), H = -H_(k)
    pE, pB, pD, pH = f.E, -f.cB, f.D, -f.H
    dE, dB, dD, dH = f.dE, -f.dcB, f.dD, -f.dH
    M = flat.as_column(0.5 * (pD + pE) + 0.5j * (pB + pH))
    N = flat.as_column(0.5 * (pD - pE) + 0.5j * (pB - pH))
    dM = np.zeros((4, 4), dtype=complex)
    dN = np.zeros((4, 4), dtype=complex)
    dM[:, 1:] = 0.5 * (dD + dE) + 0.5j * (dB + dH)
    dN[:, 1:] = 0.5 * (dD - dE) + 0.5j * (dB - dH)
    RN = _covariant_op(N, dN, Bcs, Mb)
    return _covariant_op(M, dM, Acs, Ma) + RN - _current(f), RN


def _component_block(v, p, dX, dY, X, Y, dP, dQ, P, Q, rho, j):
    """Eight explicit real equations, c = 1 and eps0 = 1 units for the sources.

    (X, Y) enter the magnetic-type rows (div B, Faraday) and (P, Q) the
    electric-type rows (div D, Ampere). Indices: v[a][k-1] = v_ka, same for p;
    d[a][k-1] = d_(a) of component k. Vacuum uses P, Q = X, Y.
    """
    # notation as in the expanded equations: v_ka = v[a][k-1]
    def V(k, a):
        return v[a][k - 1]

    def Pp(k, a):
        return p[a][k - 1]

    E1, E2, E3 = X
    B1, B2, B3 = Y
    D1, D2, D3 = P
    H1, H2, H3 = Q
    dE = lambda a, k: dX[a][k - 1]  # noqa: E731
    dB = lambda a, k: dY[a][k - 1]  # noqa: E731
    dD = lambda a, k: dP[a][k - 1]  # noqa: E731
    dH = lambda a, k: dQ[a][k - 1]  # noqa: E731
    j1, j2, j3 = j

    re0 = (dD(1, 1) + dD(2, 2) + dD(3, 3)
           + D1 * (Pp(3, 2) - Pp(2, 3)) + D2 * (Pp(1, 3) - Pp(3, 1)) + D3 * (Pp(2, 1) - Pp(1, 2))
           + H1 * (V(2, 3) - V(3, 2)) + H2 * (V(3, 1) - V(1, 3)) + H3 * (V(1, 2) - V(2, 1)) - rho)
    im0 = (dB(1, 1) + dB(2, 2) + dB(3, 3)
           + B1 * (Pp(3, 2) - Pp(2, 3)) + B2 * (Pp(1, 3) - Pp(3, 1)) + B3 * (Pp(2, 1) - Pp(1, 2))
           + E1 * (V(3, 2) - V(2, 3)) + E2 * (V(1, 3) - V(3, 1)) + E3 * (V(2, 1) - V(1, 2)))

    re1 = (dE(2, 3) - dE(3, 2) + dB(0, 1)
           + E1 * (-Pp(2, 2) - Pp(3, 3)) + E2 * (Pp(1, 2) - V(3, 0)) + E3 * (Pp(1, 3) + V(2, 0))
           + B1 * (V(2, 2) + V(3, 3)) + B2 * (-Pp(3, 0) - V(1, 2)) + B3 * (Pp(2, 0) - V(1, 3)))
    im1 = (dH(2, 3) - dH(3, 2) - dD(0, 1)
           + H1 * (-Pp(2, 2) - Pp(3, 3)) + H2 * (Pp(1, 2) - V(3, 0)) + H3 * (Pp(1, 3) + V(2, 0))
           + D1 * (-V(2, 2) - V(3, 3)) + D2 * (Pp(3, 0) + V(1, 2)) + D3 * (-Pp(2, 0) + V(1, 3)) - j1)

    re2 = (dE(3, 1) - dE(1, 3) + dB(0, 2)
           + E1 * (Pp(2, 1) + V(3, 0)) + E2 * (-Pp(1, 1) - Pp(3, 3)) + E3 * (Pp(2, 3) - V(1, 0))
           + B1 * (Pp(3, 0) - V(2, 1)) + B2 * (V(1, 1) + V(3, 3)) + B3 * (-Pp(1, 0) - V(2, 3)))
    im2 = (dH(3, 1) - dH(1, 3) - dD(0, 2)
           + H1 * (Pp(2, 1) + V(3, 0)) + H2 * (-Pp(1, 1) - Pp(3, 3)) + H3 * (Pp(2, 3) - V(1, 0))
           + D1 * (-Pp(3, 0) + V(2, 1)) + D2 * (-V(1, 1) - V(3, 3)) + D3 * (Pp(1, 0) + V(2, 3)) - j2)

    re3 = (dE(1, 2) - dE(2, 1) + dB(0, 3)
           + E1 * (Pp(3, 1) - V(2, 0)) + E2 * (Pp(3, 2) + V(1, 0)) + E3 * (-Pp(1, 1) - Pp(2, 2))
           + B1 * (-Pp(2, 0) - V(3, 1)) + B2 * (Pp(1, 0) - V(3, 2)) + B3 * (V(1, 1) + V(2, 2)))
    im3 = (dH(1, 2) - dH(2, 1) - dD(0, 3)
           + H1 * (Pp(3, 1) - V(2, 0)) + H2 * (Pp(3, 2) + V(1, 0)) + H3 * (-Pp(1, 1) - Pp(2, 2))
           + D1 * (Pp(2, 0) + V(3, 1)) + D2 * (-Pp(1, 0) + V(3, 2)) + D3 * (-V(1, 1) - V(2, 2)) - j3)

    return np.array([re0, im0, re1, im1, re2, im2, re3, im3])


COMPONENT_NAMES = ("div E", "div B", "curl1 E", "curl1 B", "curl2 E", "curl2 B", "curl3 E", "curl3 B")


def residual_component_equations(g: RotationCoefficients, f: TetradFieldSample) -> np.ndarray:
    """The eight real equations written out term by term, ordered as
    (Re R0, Im R0, Re R1, Im R1, Re R2, Im R2, Re R3, Im R3).

    Works on the ordinary fields E = E_(k), B = -B_(k). For media samples the
    div-D and Ampere rows use (D, H); otherwise they use (E, B).
    """
    v, p = g.v, g.p
    X, Y, dX, dY = f.E, -f.cB, f.dE, -f.dcB
    if f.has_media:
        P, Q, dP, dQ = f.D, -f.H, f.dD, -f.dH
    else:
        P, Q, dP, dQ = X, Y, dX, dY
    return _component_block(v, p, dX, dY, X, Y, dP, dQ, P, Q, f.rho / EPS0, f.j / EPS0)


def split_residual(R) -> np.ndarray:
    R = np.asarray(R)
    return np.array([R[0].real, R[0].imag, R[1].real, R[1].imag, R[2].real, R[2].imag, R[3].real, R[3].imag])


def _frame_tensors(f: TetradFieldSample):
    F = frame_tensor(f.E, f.cB)
    dF = np.array([frame_tensor(f.dE[a], f.dcB[a]) for a in range(4)])
    if f.has_media:
        Hm = frame_tensor(f.D, f.H)
        dHm = np.array([frame_tensor(f.dD[a], f.dH[a]) for a in range(4)])
    else:
        Hm, dHm = F, dF
    return F, dF, Hm, dHm


def residual_tensor(t: TetradPatch, g: RotationCoefficients, f: TetradFieldSample):
    """Tensor Maxwell residuals in frame components.

    Bianchi, for each triple (n, m, l):
        d_n F_ml + gamma_mbn F^b_l - gamma_lbn F^b_m + (cyclic in n, m, l)
    Source, lower index c:
        d_b F^b_c + (nabla.e_(b)) F^b_c + gamma_cab F^ba - j_c / eps0
    For media the source uses the (D, H) tensor. Returns (bianchi[4], source[4]).
    """
    gam = g.gamma
    F, dF, Hm, dHm = _frame_tensors(f)
    eta = np.diag(ETA)

    def Fup_first(T):  # F^b_l = eta^bb F_bl
        return eta[:, None] * T

    Fu = Fup_first(F)
    bianchi = []
    for n, m, l in BIANCHI_TRIPLES:
        tot = 0.0
        for (a, b_, c) in ((n, m, l), (m, l, n), (l, n, m)):
            tot += dF[a][b_, c] + gam[b_, :, a] @ Fu[:, c] - gam[c, :, a] @ Fu[:, b_]
        bianchi.append(tot)

    div = leg_divergence(g)
    Hu = Fup_first(Hm)
    dHu = np.array([Fup_first(dHm[a]) for a in range(4)])
    Huu = Hu * eta[None, :]  # H^(b)(a)
    jl = ETA @ np.concatenate([[f.rho], f.j]) / EPS0
    source = np.array([
        sum(dHu[b][b, c] for b in range(4)) + div @ Hu[:, c] + np.einsum("ab,ba->", gam[c], Huu) - jl[c]
        for c in range(4)
    ])
    return np.array(bianchi), source


def pair_residuals(R, bianchi, source) -> np.ndarray:
    """matrix-side minus tensor-side for the eight paired equations.

    Re R0 <-> source^0, Im R0 <-> -Bianchi(123),
    Re Rk <-> -Bianchi(0,k+1,k+2), Im Rk <-> source^k (upper index).
    """
    up = ETA @ source
    rs = split_residual(R)
    tensor = np.array([up[0], -bianchi[0], -bianchi[1], up[1], -bianchi[2], up[2], -bianchi[3], up[3]])
    return rs - tensor


def check_equivalence(t: TetradPatch, f: TetradFieldSample, g: RotationCoefficients | None = None,
                      tensor=None) -> ResidualReport:
    """Matrix vs tensor residuals on an arbitrary field sample.

    ``tensor`` may carry an independently computed (bianchi, source) pair
    (e.g. the coordinate-basis finite-difference oracle); otherwise the
    frame-component formulas are used.
    """
    g = ricci_rotation(t) if g is None else g
    rep = ResidualReport("matrix-tensor equivalence")
    if f.has_media:
        R, _ = residual_media_curved(t, g, f)
    else:
        R = residual_matrix_curved(t, g, f)
    b, s = residual_tensor(t, g, f) if tensor is None else tensor
    rep.add("paired residual", max_abs(pair_residuals(R, b, s)))
    return rep


# ----------------------------------------------------- coordinate-basis oracle

def coordinate_tensor_residual_fd(t: TetradPatch, fld, h, rho=0.0, j=(0, 0, 0)):
    """(bianchi, source) from coordinate components and central differences.

    No rotation coefficients or Christoffel symbols are used: the Bianchi
    sum of partial derivatives is projected on the tetrad, and the source
    uses (1/sqrt|g|) d_mu (sqrt|g| F^{mu nu}).
    """
    x = t.x
    gfn = t.metric.fn
    efn = t.e_dn_fn

    def coord_tensor(y, which):
        val = np.asarray(fld.value(y))
        if which == "F":
            T = frame_tensor(val[0:3], val[3:6])
        else:
            T = frame_tensor(val[6:9], val[9:12]) if val.shape[0] >= 12 else frame_tensor(val[0:3], val[3:6])
        ei = ETA @ efn(y)  # e^(a)_mu
        return ei.T @ T @ ei

    def dens_up(y):
        g = gfn(y)
        gi = np.linalg.inv(g)
        return np.sqrt(abs(np.linalg.det(g))) * gi @ coord_tensor(y, "H") @ gi

    dF = central_gradient(lambda y: coord_tensor(y, "F"), x, h)
    C = dF + np.einsum("mnl->lmn", dF) + np.einsum("nlm->lmn", dF)  # C_lmn cyclic sum
    eu = t.e_up
    bianchi = np.array([np.einsum("l,m,n,lmn->", eu[n], eu[m], eu[l], C) for n, m, l in BIANCHI_TRIPLES])

    dd = central_gradient(dens_up, x, h)
    g = t.metric.g
    divF = np.einsum("mmn->n", dd) / np.sqrt(abs(np.linalg.det(g)))
    jup = eu.T @ np.concatenate([[rho], np.asarray(j, float)])
    G_low = g @ (divF - jup / EPS0)
    source = eu @ G_low
    return bianchi, source


# ------------------------------------------------------------ helper samples

def spherical_plane_wave(k=1.0):
    """Cartesian plane wave E = e1 cos k(z - t), cB = e2 cos k(z - t)
    expressed in the orthonormal spherical frame (tensor-side components)."""

    class _PW:
        def value(self, x):
            t_, r, th, ph = x
            st, ct, sp, cp = np.sin(th), np.cos(th), np.sin(ph), np.cos(ph)
            z = r * ct
            c = np.cos(k * (z - t_))
            rh = np.array([st * cp, st * sp, ct])
            thh = np.array([ct * cp, ct * sp, -st])
            phh = np.array([-sp, cp, 0.0])
            fr = np.array([rh, thh, phh])
            E = fr @ np.array([c, 0, 0])
            cB = fr @ np.array([0, c, 0])
            return np.concatenate([E, -cB])

    return _PW()


def cartesian_plane_wave(k=1.0):
    class _PW:
        def value(self, x):
            c = np.cos(k * (x[3] - x[0]))
            return np.array([c, 0, 0, 0, -c, 0])

        def gradient(self, x):
            s = k * np.sin(k * (x[3] - x[0]))
            g = np.zeros((4, 6))
            g[0, 0], g[3, 0] = s, -s
            g[0, 4], g[3, 4] = -s, s
            return g

    return _PW()


def dielectric_plane_wave(eps, mu, k=1.0, amplitude=1.0):
    """Plane wave along z in a uniform medium at rest, phase speed 1/sqrt(eps mu).

    Physical fields E = A e1 cos(kz - wt), cB = n A e2 cos(kz - wt),
    D/eps0 = eps E, H/(eps0 c) = cB/mu, returned as 12 tensor-side components.
    """
    n = np.sqrt(eps * mu)
    w = k / n
    amp = amplitude * np.array([1, 0, 0, 0, -n, 0, eps, 0, 0, 0, -n / mu, 0])

    class _PW:
        def value(self, x):
            return amp * np.cos(k * x[3] - w * x[0])

        def gradient(self, x):
            s = np.sin(k * x[3] - w * x[0])
            g = np.zeros((4, 12))
            g[0] = amp * w * s
            g[3] = -amp * k * s
            return g

    return _PW()

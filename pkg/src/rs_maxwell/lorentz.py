"""SO(3,C) rotations and boosts, block matrices S and Delta, covariance checks.

Real rotation parameters give Euclidean rotations; replacing
c0 -> ch(b/2), c -> i sh(b/2) n turns the same formula into a Lorentz boost
with rapidity b along the unit vector n.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import algebra
from .algebra import I3, I4, cross_matrix, embed3
from .report import ResidualReport, max_abs, scaled_residual

UNIT_TOL = 1e-12


def _unit(n, what):
    n = np.asarray(n, dtype=float).reshape(3)
    if not np.all(np.isfinite(n)) or abs(np.linalg.norm(n) - 1.0) > UNIT_TOL:
        raise ValueError(f"{what}: axis must be a finite unit 3-vector, got {n}")
    return n


@dataclass(frozen=True)
class FedorovParam:
    """(c0, c) with c0^2 + c.c = 1; complex entries allowed."""

    c0: complex
    c: np.ndarray

    def __post_init__(self):
        c = np.asarray(self.c, dtype=complex).reshape(3)
        object.__setattr__(self, "c", c)
        norm = self.c0 ** 2 + c @ c
        if not np.isfinite(norm) or abs(norm - 1.0) > UNIT_TOL:
            raise ValueError(f"Fedorov parameters violate c0^2 + c.c = 1 (got {norm})")


@dataclass(frozen=True)
class BoostParam:
    """Rapidity b and real unit direction n."""

    b: float
    n: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "n", _unit(self.n, "BoostParam"))
        if not np.isfinite(self.b):
            raise ValueError("rapidity must be finite")


@dataclass(frozen=True)
class RotationParam:
    """Angle a (radians) about real unit axis n."""

    a: float
    n: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "n", _unit(self.n, "RotationParam"))
        if not np.isfinite(self.a):
            raise ValueError("angle must be finite")


def fedorov_from_boost(p: BoostParam) -> FedorovParam:
    return FedorovParam(np.cosh(p.b / 2), 1j * np.sinh(p.b / 2) * p.n)


def fedorov_from_rotation(p: RotationParam) -> FedorovParam:
    return FedorovParam(np.cos(p.a / 2), np.sin(p.a / 2) * p.n)


def rotation_from_fedorov(p: FedorovParam) -> np.ndarray:
    """O(c) = I + 2 [c0 c^x + (c^x)^2]."""
    X = cross_matrix(p.c)
    return I3 + 2 * (p.c0 * X + X @ X)


def rotation(p: RotationParam) -> np.ndarray:
    return rotation_from_fedorov(fedorov_from_rotation(p))


def boost(p: BoostParam) -> np.ndarray:
    """Closed form of the boost matrix, F = 1 - ch b.

    Diagonal ch b + F n_i^2, off-diagonal F n_i n_j -+ i sh b n_k.
    """
    n = p.n
    ch, sh = np.cosh(p.b), np.sinh(p.b)
    F = 1.0 - ch
    return ch * I3 + F * np.outer(n, n) + 1j * sh * cross_matrix(n)


def inverse_so3c(O) -> np.ndarray:
    """Inverse of a complex orthogonal matrix, O^-1 = O^T.

    Preferred over a numerical inverse: at large rapidity cond(O) ~ e^{2|b|}.
    """
    return np.swapaxes(np.asarray(O), -1, -2)


def embed_S(O) -> np.ndarray:
    """S = diag(1, O)."""
    return embed3(O)


def delta(kind: str, p: BoostParam) -> np.ndarray:
    """Delta = ch b - i sh b n_j M^j with M = alpha or beta."""
    if kind == "alpha":
        M = [algebra.alpha(j) for j in (1, 2, 3)]
    elif kind == "beta":
        M = [algebra.beta(j) for j in (1, 2, 3)]
    else:
        raise ValueError(f"delta kind must be 'alpha' or 'beta', got {kind!r}")
    nM = sum(p.n[j] * M[j] for j in range(3))
    return np.cosh(p.b) * I4 - 1j * np.sinh(p.b) * nM


def transform_coordinates_current(p: BoostParam, t, x, j0, jvec):
    """Apply the boost rules to (t, x) and to the current (j0, j).

    t' = ch t + sh n.x,   x' = n sh t + x + (ch - 1) n (n.x)
    j'0 = ch j0 + sh n.j, j' = n sh j0 + j + (ch - 1) n (n.j)
    """
    n = p.n
    ch, sh = np.cosh(p.b), np.sinh(p.b)
    x = np.asarray(x)
    jvec = np.asarray(jvec)
    t2 = ch * t + sh * (n @ x)
    x2 = n * sh * t + x + (ch - 1) * n * (n @ x)
    j02 = ch * j0 + sh * (n @ jvec)
    j2 = n * sh * j0 + jvec + (ch - 1) * n * (n @ jvec)
    return t2, x2, j02, j2


def transform_derivatives(p: BoostParam, d0, grad):
    """d0' = ch d0 - sh n.grad,  grad' = -sh n d0 + grad + (ch - 1) n (n.grad).

    ``d0`` and ``grad`` may carry trailing axes (derivatives of several
    components at once); the first axis of ``grad`` is the spatial index.
    """
    n = p.n
    ch, sh = np.cosh(p.b), np.sinh(p.b)
    d0 = np.asarray(d0)
    grad = np.asarray(grad)
    ndg = np.tensordot(n, grad, axes=(0, 0))
    d0p = ch * d0 - sh * ndg
    gp = -sh * np.multiply.outer(n, d0) + grad + (ch - 1) * np.multiply.outer(n, ndg)
    return d0p, gp


def derivative_mixing(p: BoostParam) -> np.ndarray:
    """4x4 real matrix L with d'_mu = L_mu,nu d_nu, assembled column by column
    from ``transform_derivatives`` (not entered by hand)."""
    L = np.zeros((4, 4))
    for nu in range(4):
        e = np.zeros(4)
        e[nu] = 1.0
        d0p, gp = transform_derivatives(p, e[0], e[1:])
        L[0, nu] = d0p
        L[1:, nu] = gp
    return L


def rotation_derivative_mixing(O) -> np.ndarray:
    """Derivative map for x' = O x with real orthogonal O: d'_m = O_mj d_j."""
    L = np.eye(4)
    L[1:, 1:] = np.real(O)
    return L


def check_rotation_covariance(O) -> ResidualReport:
    """S alpha^j S^-1 = alpha^m O_mj and S beta^j S^-1 = beta^m O_mj."""
    rep = ResidualReport("rotation covariance")
    S = embed_S(O)
    Si = embed_S(inverse_so3c(O))
    a = [algebra.alpha(j) for j in (1, 2, 3)]
    b = [algebra.beta(j) for j in (1, 2, 3)]
    for j in range(3):
        lhs = S @ a[j] @ Si
        rhs = sum(a[m] * O[m, j] for m in range(3))
        rep.add("S alpha^j S^-1 = alpha^m O_mj", scaled_residual(lhs - rhs, lhs, rhs))
        lhs = S @ b[j] @ Si
        rhs = sum(b[m] * O[m, j] for m in range(3))
        rep.add("S beta^j S^-1 = beta^m O_mj", scaled_residual(lhs - rhs, lhs, rhs))
    return rep


def boost_operator_mismatch(p: BoostParam):
    """Coefficient-wise difference of Delta S (-i d0 + alpha^j d_j) S^-1 and
    (-i d0' + alpha^m d'_m) with d' = L d.

    Returns the (4, 4, 4) difference, one 4x4 matrix per derivative d_nu,
    and the magnitude of the largest product entering the comparison.
    """
    O = boost(p)
    S = embed_S(O)
    Si = embed_S(inverse_so3c(O))
    D = delta("alpha", p)
    L = derivative_mixing(p)
    lhs = [-1j * D @ S @ Si] + [D @ S @ algebra.alpha(j) @ Si for j in (1, 2, 3)]
    coef = [algebra.ALPHA0] + [algebra.alpha(j) for j in (1, 2, 3)]
    rhs = [sum(coef[mu] * L[mu, nu] for mu in range(4)) for nu in range(4)]
    diff = np.array(lhs) - np.array(rhs)
    scale = max(max_abs(D) * max_abs(S) * max_abs(Si), max_abs(L))
    return diff, scale


def check_boost_covariance(p: BoostParam) -> ResidualReport:
    """Operator covariance under a boost plus the two beta-side identities."""
    rep = ResidualReport("boost covariance")
    diff, scale = boost_operator_mismatch(p)
    rep.add("Delta S (-i d0 + alpha.d) S^-1 = -i d0' + alpha.d'", max_abs(diff) / max(1.0, scale))

    O = boost(p)
    S = embed_S(O)
    Si = embed_S(inverse_so3c(O))
    Da, Db = delta("alpha", p), delta("beta", p)
    lhs = Da @ S
    rhs = Db @ Si
    # both products cancel from ch(b)^2 down to ch(b)
    scale = max_abs(Da) * max_abs(S)
    rep.add("Delta_alpha S = Delta_beta S^-1", max_abs(lhs - rhs) / max(1.0, scale))

    Oi = inverse_so3c(O)
    for j in (1, 2, 3):
        lhs = Si @ algebra.beta(j) @ S
        rhs = sum(algebra.beta(m) * Oi[m - 1, j - 1] for m in (1, 2, 3))
        rep.add("S^-1 beta^j S = beta^m Oinv_mj",
                max_abs(lhs - rhs) / max(1.0, max_abs(S) * max_abs(Si)))
    return rep


def check_axis_boost_products(b: float) -> ResidualReport:
    """Explicit products for a boost along e3:

    (ch b - i sh b alpha3)(ch b alpha1 + i sh b alpha2) = alpha1
    (ch b - i sh b alpha3)(ch b alpha2 - i sh b alpha1) = alpha2
    and the displayed form of (ch b - i sh b alpha3) S.
    """
    rep = ResidualReport("axis boost")
    ch, sh = np.cosh(b), np.sinh(b)
    a1, a2, a3 = (algebra.alpha(j) for j in (1, 2, 3))
    D = ch * I4 - 1j * sh * a3
    for name, X, target in (
        ("Delta (ch alpha1 + i sh alpha2) = alpha1", ch * a1 + 1j * sh * a2, a1),
        ("Delta (ch alpha2 - i sh alpha1) = alpha2", ch * a2 - 1j * sh * a1, a2),
    ):
        lhs = D @ X
        rep.add(name, scaled_residual(lhs - target, D, X))
    S = embed_S(boost(BoostParam(b, [0.0, 0.0, 1.0])))
    shown = np.array([[ch, 0, 0, -1j * sh], [0, 1, 0, 0], [0, 0, 1, 0], [1j * sh, 0, 0, ch]])
    rep.add("Delta S along e3 (closed form)", scaled_residual(D @ S - shown, D, S))
    return rep


def random_rotation(rng) -> RotationParam:
    n = rng.normal(size=3)
    return RotationParam(rng.uniform(-np.pi, np.pi), n / np.linalg.norm(n))


def random_boost(rng, bmax=5.0) -> BoostParam:
    n = rng.normal(size=3)
    return BoostParam(rng.uniform(-bmax, bmax), n / np.linalg.norm(n))

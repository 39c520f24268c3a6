"""Constant matrices of the matrix Maxwell formalism and the relations among them.

Every matrix is a literal array. Nothing is generated from generators or
products, so a transcription slip shows up in ``verify_product_table``
instead of being silently propagated.

Shapes used across the package (plain numpy arrays, complex128):
    ComplexVec3  (3,)     e.g. psi = E + i cB
    Matrix3C     (3, 3)   SO(3,C) rotations, tau_k
    Matrix4C     (4, 4)   alpha, beta, gamma, S, Delta
    Column4C     (4,)     slot 0 is the scalar slot, slots 1..3 the vector
"""

from __future__ import annotations

import contextlib
import itertools

import numpy as np

from .report import ResidualReport, max_abs

_i = 1j

_TABLE = {
    "alpha1": [[0, 1, 0, 0], [-1, 0, 0, 0], [0, 0, 0, -1], [0, 0, 1, 0]],
    "alpha2": [[0, 0, 1, 0], [0, 0, 0, 1], [-1, 0, 0, 0], [0, -1, 0, 0]],
    "alpha3": [[0, 0, 0, 1], [0, 0, -1, 0], [0, 1, 0, 0], [-1, 0, 0, 0]],
    "beta1": [[0, 1, 0, 0], [-1, 0, 0, 0], [0, 0, 0, 1], [0, 0, -1, 0]],
    "beta2": [[0, 0, 1, 0], [0, 0, 0, -1], [-1, 0, 0, 0], [0, 1, 0, 0]],
    "beta3": [[0, 0, 0, 1], [0, 0, 1, 0], [0, -1, 0, 0], [-1, 0, 0, 0]],
    # Dirac matrices, spinor (chiral) basis
    "gamma0": [[0, 0, 1, 0], [0, 0, 0, 1], [1, 0, 0, 0], [0, 1, 0, 0]],
    "gamma1": [[0, 0, 0, -1], [0, 0, -1, 0], [0, 1, 0, 0], [1, 0, 0, 0]],
    "gamma2": [[0, 0, 0, _i], [0, 0, -_i, 0], [0, -_i, 0, 0], [_i, 0, 0, 0]],
    "gamma3": [[0, 0, -1, 0], [0, 0, 0, 1], [1, 0, 0, 0], [0, -1, 0, 0]],
    "gamma5": [[-1, 0, 0, 0], [0, -1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]],
    # S^k = diag(0, tau_k), (tau_k)_ij = -eps_kij, so tau_k v = e_k x v
    "S1": [[0, 0, 0, 0], [0, 0, 0, 0], [0, 0, 0, -1], [0, 0, 1, 0]],
    "S2": [[0, 0, 0, 0], [0, 0, 0, 1], [0, 0, 0, 0], [0, -1, 0, 0]],
    "S3": [[0, 0, 0, 0], [0, 0, -1, 0], [0, 1, 0, 0], [0, 0, 0, 0]],
}

_PAULI = [
    [[1, 0], [0, 1]],
    [[0, 1], [1, 0]],
    [[0, -_i], [_i, 0]],
    [[1, 0], [0, -1]],
]

ETA = np.diag([1.0, -1.0, -1.0, -1.0])
I4 = np.eye(4, dtype=complex)
I3 = np.eye(3, dtype=complex)
# coefficient of the time derivative in the vacuum equation
ALPHA0 = -1j * I4

CORRUPTIBLE = tuple(sorted(_TABLE))


def _get(name):
    return np.array(_TABLE[name], dtype=complex)


def _index(j, allowed, what):
    if isinstance(j, bool) or not isinstance(j, (int, np.integer)) or j not in allowed:
        raise ValueError(f"{what} index must be one of {sorted(allowed)}, got {j!r}")
    return int(j)


def alpha(j: int) -> np.ndarray:
    return _get(f"alpha{_index(j, {1, 2, 3}, 'alpha')}")


def beta(j: int) -> np.ndarray:
    return _get(f"beta{_index(j, {1, 2, 3}, 'beta')}")


def dirac_gamma(mu: int) -> np.ndarray:
    return _get(f"gamma{_index(mu, {0, 1, 2, 3, 5}, 'gamma')}")


def generator(kind: str, k: int) -> np.ndarray:
    """S^k (rotation) or N^k = i S^k (boost) generator, embedded in 4x4."""
    k = _index(k, {1, 2, 3}, "generator")
    if kind == "S":
        return _get(f"S{k}")
    if kind == "N":
        return 1j * _get(f"S{k}")
    raise ValueError(f"generator kind must be 'S' or 'N', got {kind!r}")


def tau(k: int) -> np.ndarray:
    """3x3 block of S^k."""
    return generator("S", k)[1:, 1:]


def pauli(a: int) -> np.ndarray:
    """sigma^a for a = 0..3 (sigma^0 = identity)."""
    a = _index(a, {0, 1, 2, 3}, "pauli")
    return np.array(_PAULI[a], dtype=complex)


def pauli_bar(a: int) -> np.ndarray:
    """bar sigma^a = (I, -sigma_k)."""
    return pauli(a) if a == 0 else -pauli(a)


def levi_civita3() -> np.ndarray:
    eps = np.zeros((3, 3, 3))
    for p in itertools.permutations(range(3)):
        eps[p] = np.linalg.det(np.eye(3)[list(p)])
    return eps


def levi_civita4() -> np.ndarray:
    """eps^{0123} = +1 (upper indices)."""
    eps = np.zeros((4, 4, 4, 4))
    for p in itertools.permutations(range(4)):
        eps[p] = round(np.linalg.det(np.eye(4)[list(p)]))
    return eps


def cross_matrix(v) -> np.ndarray:
    """Matrix of v x (.)."""
    v = np.asarray(v)
    return np.array([[0, -v[2], v[1]], [v[2], 0, -v[0]], [-v[1], v[0], 0]], dtype=np.result_type(v, float))


def embed3(m) -> np.ndarray:
    """diag(1, m) as a 4x4 complex matrix."""
    out = np.zeros((4, 4), dtype=complex)
    out[0, 0] = 1.0
    out[1:, 1:] = m
    return out


def adjoint(a):
    return np.conj(np.swapaxes(np.asarray(a), -1, -2))


def commutator(a, b):
    return a @ b - b @ a


def anticommutator(a, b):
    return a @ b + b @ a


@contextlib.contextmanager
def corrupted(name: str):
    """Temporarily negate the first nonzero entry of one stored constant.

    Used for fault injection: every routine reading the constant inside the
    ``with`` block sees the damaged matrix.
    """
    if name not in _TABLE:
        raise ValueError(f"unknown constant {name!r}; choose from {', '.join(CORRUPTIBLE)}")
    original = _TABLE[name]
    damaged = [list(row) for row in original]
    r, c = next((r, c) for r in range(4) for c in range(4) if damaged[r][c] != 0)
    damaged[r][c] = -damaged[r][c]
    _TABLE[name] = damaged
    try:
        yield
    finally:
        _TABLE[name] = original


def verify_product_table() -> ResidualReport:
    """Max-norm residual of every product, square and commutation relation.

    All constants have entries in {0, +-1, +-i}, so each residual is exactly 0
    in floating point when the table is intact.
    """
    rep = ResidualReport("product table")
    a = {j: alpha(j) for j in (1, 2, 3)}
    b = {j: beta(j) for j in (1, 2, 3)}
    g = {m: dirac_gamma(m) for m in (0, 1, 2, 3, 5)}
    S = {k: generator("S", k) for k in (1, 2, 3)}
    N = {k: generator("N", k) for k in (1, 2, 3)}

    for j in (1, 2, 3):
        rep.add(f"alpha{j}^2 = -I", max_abs(a[j] @ a[j] + I4))
        rep.add(f"beta{j}^2 = -I", max_abs(b[j] @ b[j] + I4))
    for i, j, k in ((1, 2, 3), (2, 3, 1), (3, 1, 2)):
        rep.add(f"alpha{i} alpha{j} = alpha{k}", max_abs(a[i] @ a[j] - a[k]))
        rep.add(f"beta{i} beta{j} = -beta{k}", max_abs(b[i] @ b[j] + b[k]))
        rep.add(f"{{alpha{i}, alpha{j}}} = 0", max_abs(anticommutator(a[i], a[j])))
        rep.add(f"{{beta{i}, beta{j}}} = 0", max_abs(anticommutator(b[i], b[j])))
    for i in (1, 2, 3):
        for j in (1, 2, 3):
            rep.add(f"[alpha{i}, beta{j}] = 0", max_abs(commutator(a[i], b[j])))

    for m in range(4):
        for n in range(4):
            rep.add(f"{{gamma{m}, gamma{n}}} = 2 eta{m}{n}",
                    max_abs(anticommutator(g[m], g[n]) - 2 * ETA[m, n] * I4))
    rep.add("gamma5 = -i gamma0 gamma1 gamma2 gamma3",
            max_abs(-1j * g[0] @ g[1] @ g[2] @ g[3] - g[5]))
    rep.add("alpha1 = i gamma0 gamma2", max_abs(a[1] - 1j * g[0] @ g[2]))
    rep.add("alpha2 = gamma0 gamma5", max_abs(a[2] - g[0] @ g[5]))
    rep.add("alpha3 = i gamma5 gamma2", max_abs(a[3] - 1j * g[5] @ g[2]))
    rep.add("beta1 = -gamma3 gamma1", max_abs(b[1] + g[3] @ g[1]))
    rep.add("beta2 = -gamma3", max_abs(b[2] + g[3]))
    rep.add("beta3 = -gamma1", max_abs(b[3] + g[1]))

    for i, j, k in ((1, 2, 3), (2, 3, 1), (3, 1, 2)):
        rep.add(f"[S{i}, S{j}] = S{k}", max_abs(commutator(S[i], S[j]) - S[k]))
        rep.add(f"[N{i}, N{j}] = -S{k}", max_abs(commutator(N[i], N[j]) + S[k]))
        rep.add(f"[S{i}, N{j}] = N{k}", max_abs(commutator(S[i], N[j]) - N[k]))
    return rep

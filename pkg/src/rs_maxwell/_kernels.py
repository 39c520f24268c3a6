"""RK4 / 4th-order central-difference steppers for the 1-D periodic grid.

Two twins per kernel: ``nb_*`` compiled with numba and ``np_*`` in plain
numpy. Set RS_MAXWELL_NUMBA=0 to force the numpy versions (handy for
debugging or on platforms without numba).
"""

import os

import numpy as np

try:
    from numba import njit
    HAVE_NUMBA = True
except ImportError:  # pragma: no cover
    HAVE_NUMBA = False

USE_NUMBA = HAVE_NUMBA and os.environ.get("RS_MAXWELL_NUMBA", "1") != "0"


# ---------------------------------------------------------------- numpy twins

def np_ddz(u, dx):
    """4th-order periodic central difference along axis 0."""
    return (8 * (np.roll(u, -1, 0) - np.roll(u, 1, 0)) - (np.roll(u, -2, 0) - np.roll(u, 2, 0))) / (12 * dx)


def np_rhs_psi(psi, dx):
    # d0 psi = -i rot psi, only d/dz survives
    d = np_ddz(psi, dx)
    out = np.zeros_like(psi)
    out[:, 0] = 1j * d[:, 1]
    out[:, 1] = -1j * d[:, 0]
    return out


def np_rhs_curl(E, cB, dx):
    # d0 E = rot cB, d0 cB = -rot E
    dE = np_ddz(E, dx)
    dB = np_ddz(cB, dx)
    rE = np.zeros_like(E)
    rB = np.zeros_like(cB)
    rE[:, 0] = -dB[:, 1]
    rE[:, 1] = dB[:, 0]
    rB[:, 0] = dE[:, 1]
    rB[:, 1] = -dE[:, 0]
    return rE, rB


def np_step_psi(psi, dx, dt):
    k1 = np_rhs_psi(psi, dx)
    k2 = np_rhs_psi(psi + 0.5 * dt * k1, dx)
    k3 = np_rhs_psi(psi + 0.5 * dt * k2, dx)
    k4 = np_rhs_psi(psi + dt * k3, dx)
    return psi + dt / 6 * (k1 + 2 * k2 + 2 * k3 + k4)


def np_step_curl(E, cB, dx, dt):
    a1, b1 = np_rhs_curl(E, cB, dx)
    a2, b2 = np_rhs_curl(E + 0.5 * dt * a1, cB + 0.5 * dt * b1, dx)
    a3, b3 = np_rhs_curl(E + 0.5 * dt * a2, cB + 0.5 * dt * b2, dx)
    a4, b4 = np_rhs_curl(E + dt * a3, cB + dt * b3, dx)
    return (E + dt / 6 * (a1 + 2 * a2 + 2 * a3 + a4),
            cB + dt / 6 * (b1 + 2 * b2 + 2 * b3 + b4))


def np_run(psi, E, cB, dx, dt, nsteps):
    for _ in range(nsteps):
        psi = np_step_psi(psi, dx, dt)
        E, cB = np_step_curl(E, cB, dx, dt)
    return psi, E, cB


# ---------------------------------------------------------------- numba twins

if HAVE_NUMBA:

    @njit(cache=True)
    def nb_ddz(u, k, dx, out):
        n = u.shape[0]
        c = 1.0 / (12 * dx)
        for i in range(n):
            out[i] = (8 * (u[(i + 1) % n, k] - u[(i - 1) % n, k])
                      - (u[(i + 2) % n, k] - u[(i - 2) % n, k])) * c

    @njit(cache=True)
    def nb_rhs(psi, E, cB, dx, kp, kE, kB, tp, tr):
        # matrix form and curl form share one pass over the grid
        n = psi.shape[0]
        nb_ddz(psi, 1, dx, tp)
        for i in range(n):
            kp[i, 0] = 1j * tp[i]
        nb_ddz(psi, 0, dx, tp)
        for i in range(n):
            kp[i, 1] = -1j * tp[i]
            kp[i, 2] = 0
        nb_ddz(cB, 1, dx, tr)
        for i in range(n):
            kE[i, 0] = -tr[i]
        nb_ddz(cB, 0, dx, tr)
        for i in range(n):
            kE[i, 1] = tr[i]
            kE[i, 2] = 0
        nb_ddz(E, 1, dx, tr)
        for i in range(n):
            kB[i, 0] = tr[i]
        nb_ddz(E, 0, dx, tr)
        for i in range(n):
            kB[i, 1] = -tr[i]
            kB[i, 2] = 0

    @njit(cache=True)
    def nb_run(psi, E, cB, dx, dt, nsteps):
        n = psi.shape[0]
        psi = psi.copy()
        E = E.copy()
        cB = cB.copy()
        tp = np.empty(n, dtype=np.complex128)
        tr = np.empty(n)
        kp = np.empty((4, n, 3), dtype=np.complex128)
        kE = np.empty((4, n, 3))
        kB = np.empty((4, n, 3))
        sp = np.empty_like(psi)
        sE = np.empty_like(E)
        sB = np.empty_like(cB)
        frac = (0.5, 0.5, 1.0)
        for _ in range(nsteps):
            nb_rhs(psi, E, cB, dx, kp[0], kE[0], kB[0], tp, tr)
            for s in range(3):
                h = frac[s] * dt
                for i in range(n):
                    for c in range(3):
                        sp[i, c] = psi[i, c] + h * kp[s, i, c]
                        sE[i, c] = E[i, c] + h * kE[s, i, c]
                        sB[i, c] = cB[i, c] + h * kB[s, i, c]
                nb_rhs(sp, sE, sB, dx, kp[s + 1], kE[s + 1], kB[s + 1], tp, tr)
            w = dt / 6
            for i in range(n):
                for c in range(3):
                    psi[i, c] += w * (kp[0, i, c] + 2 * kp[1, i, c] + 2 * kp[2, i, c] + kp[3, i, c])
                    E[i, c] += w * (kE[0, i, c] + 2 * kE[1, i, c] + 2 * kE[2, i, c] + kE[3, i, c])
                    cB[i, c] += w * (kB[0, i, c] + 2 * kB[1, i, c] + 2 * kB[2, i, c] + kB[3, i, c])
        return psi, E, cB


def step_all(psi, E, cB, dx, dt, nsteps=1, use_numba=None):
    """Advance the matrix-form state and the curl-form reference together."""
    if use_numba is None:
        use_numba = USE_NUMBA
    if use_numba:
        if not HAVE_NUMBA:
            raise RuntimeError("numba is not available")
        return nb_run(np.ascontiguousarray(psi), np.ascontiguousarray(E), np.ascontiguousarray(cB),
                      float(dx), float(dt), int(nsteps))
    return np_run(psi, E, cB, dx, dt, nsteps)

"""Seeded analytic test fields: cubic polynomials times bounded trig factors.

Each component is f(x) = P(x - x0) cos(k.(x - x0) + phi) over the four
coordinates, so values and exact first derivatives are both available and
the same function can be fed to finite differences.
"""

from __future__ import annotations

import itertools

import numpy as np

# exponent tuples of all monomials of degree <= 3 in 4 variables
_MONOMIALS = np.array([m for m in itertools.product(range(4), repeat=4) if sum(m) <= 3])


class AnalyticField:
    """``ncomp`` scalar functions on R^4 with analytic gradients."""

    def __init__(self, coef, k, phi, x0, scale=1.0):
        self.coef = np.asarray(coef, dtype=float)  # (ncomp, nmono)
        self.k = np.asarray(k, dtype=float)  # (ncomp, 4)
        self.phi = np.asarray(phi, dtype=float)  # (ncomp,)
        self.x0 = np.asarray(x0, dtype=float)
        self.scale = np.broadcast_to(np.asarray(scale, dtype=float), (4,)).copy()

    @property
    def ncomp(self):
        return self.coef.shape[0]

    def _poly(self, y):
        # y: scaled offsets (4,). Returns P (ncomp,) and dP/dy (4, ncomp)
        pw = y[None, :] ** _MONOMIALS  # (nmono, 4)
        mono = np.prod(pw, axis=1)
        P = self.coef @ mono
        dP = np.empty((4, self.ncomp))
        for a in range(4):
            e = _MONOMIALS[:, a]
            red = _MONOMIALS.copy()
            red[:, a] = np.maximum(e - 1, 0)
            dm = e * np.prod(y[None, :] ** red, axis=1)
            dP[a] = self.coef @ dm
        return P, dP

    def value(self, x):
        y = (np.asarray(x, dtype=float) - self.x0) / self.scale
        P, _ = self._poly(y)
        return P * np.cos(self.k @ y + self.phi)

    def gradient(self, x):
        """d f_i / d x^a as an array (4, ncomp)."""
        y = (np.asarray(x, dtype=float) - self.x0) / self.scale
        P, dP = self._poly(y)
        arg = self.k @ y + self.phi
        g = dP * np.cos(arg) - P * np.sin(arg) * self.k.T
        return g / self.scale[:, None]


def random_analytic_field(rng, ncomp, x0, scale=1.0, kmax=1.0) -> AnalyticField:
    """Random coefficients of order one; wavenumbers in [-kmax, kmax]."""
    coef = rng.normal(size=(ncomp, len(_MONOMIALS))) / (1.0 + _MONOMIALS.sum(axis=1))
    k = rng.uniform(-kmax, kmax, size=(ncomp, 4))
    phi = rng.uniform(0, 2 * np.pi, size=ncomp)
    return AnalyticField(coef, k, phi, x0, scale)


def central_gradient(fn, x, h):
    """Second-order central differences of a vector function, (4, ...) output."""
    x = np.asarray(x, dtype=float)
    h = np.broadcast_to(np.asarray(h, dtype=float), (len(x),))
    out = []
    for a in range(len(x)):
        dx = np.zeros_like(x)
        dx[a] = h[a]
        out.append((np.asarray(fn(x + dx)) - np.asarray(fn(x - dx))) / (2 * h[a]))
    return np.array(out)

"""Matrix (Riemann-Silberstein) form of Maxwell electrodynamics, with numerical checks.

Submodules:
    algebra        constant 4x4 matrices (alpha, beta, Dirac gamma, S^k, N^k)
    lorentz        SO(3,C) rotations and boosts, Delta operators, covariance checks
    flat           flat-space matrix equation, media form, 1-D evolution
    constitutive   constitutive relations in rest and moving frames
    esposito       4-vectors e, b relative to u and the Gamma(u) matrix form
    tetrad         tetrads, Ricci rotation coefficients, curved-space residuals
    cli            the ``rs-maxwell`` command
"""

__version__ = "0.1.0"

from .report import ResidualReport  # noqa: F401

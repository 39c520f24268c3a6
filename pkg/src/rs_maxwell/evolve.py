"""Source-free time evolution of psi = E + i cB on a 1-D periodic grid.

The matrix form d0 psi = -i rot psi and the classical pair d0 E = rot cB,
d0 cB = -rot E are stepped side by side with identical schemes, so their
difference measures only the equivalence of the two formulations.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

import numpy as np

from . import _kernels


@dataclass
class Grid1D3V:
    """Periodic grid along z carrying all three components of E and cB."""

    n: int
    length: float
    cfl: float
    E: np.ndarray
    cB: np.ndarray

    def __post_init__(self):
        if int(self.n) != self.n or self.n < 8:
            raise ValueError(f"grid needs at least 8 points, got {self.n}")
        if not (0 < self.cfl <= 1):
            raise ValueError(f"CFL number must lie in (0, 1], got {self.cfl}")
        if not self.length > 0:
            raise ValueError("grid length must be positive")
        self.E = np.array(self.E, dtype=float).reshape(self.n, 3)
        self.cB = np.array(self.cB, dtype=float).reshape(self.n, 3)

    @property
    def dx(self):
        return self.length / self.n

    @property
    def dt(self):
        return self.cfl * self.dx

    @property
    def z(self):
        return np.arange(self.n) * self.dx


def plane_wave_grid(n=128, k=1, cfl=0.5, length=2 * np.pi, amplitude=1.0) -> Grid1D3V:
    """E = A e1 cos(kz), cB = A e2 cos(kz): a wave travelling along +z."""
    z = np.arange(n) * length / n
    E = np.zeros((n, 3))
    cB = np.zeros((n, 3))
    E[:, 0] = amplitude * np.cos(k * z)
    cB[:, 1] = amplitude * np.cos(k * z)
    return Grid1D3V(n, length, cfl, E, cB)


@dataclass
class EvolutionResult:
    records: list = field(default_factory=list)
    psi: np.ndarray | None = None
    E_ref: np.ndarray | None = None
    cB_ref: np.ndarray | None = None
    dt: float = 0.0

    def to_jsonl(self) -> str:
        return "".join(json.dumps(r, sort_keys=True) + "\n" for r in self.records)

    @property
    def energy_drift(self):
        e0 = self.records[0]["energy"]
        return max(abs(r["energy"] - e0) for r in self.records) / e0 if e0 else 0.0

    @property
    def cross_check_max(self):
        return max(r["cross_check_max"] for r in self.records)

    @property
    def div_max(self):
        return max(max(r["divE_max"], r["divB_max"]) for r in self.records)


def _diagnostics(step, time, psi, E, cB, dx):
    ddz = _kernels.np_ddz
    return {
        "step": int(step),
        "time": float(time),
        "energy": float(np.sum(np.abs(psi) ** 2) * dx),
        "divE_max": float(np.max(np.abs(ddz(psi.real[:, 2], dx)))),
        "divB_max": float(np.max(np.abs(ddz(psi.imag[:, 2], dx)))),
        "cross_check_max": float(np.max(np.abs(psi - (E + 1j * cB)))),
    }


def evolve(grid: Grid1D3V, steps: int, dt=None, record_every=1, use_numba=None) -> EvolutionResult:
    """Advance ``steps`` RK4 steps; dt defaults to cfl*dx and may not exceed it."""
    if dt is None:
        dt = grid.dt
    if dt <= 0 or dt > grid.dt * (1 + 1e-12):
        raise ValueError(f"time step {dt} violates CFL limit {grid.dt}")
    if steps < 0 or record_every < 1:
        raise ValueError("steps must be >= 0 and record_every >= 1")
    dx = grid.dx
    psi = (grid.E + 1j * grid.cB).astype(complex)
    E = grid.E.copy()
    cB = grid.cB.copy()
    res = EvolutionResult(dt=dt)
    res.records.append(_diagnostics(0, 0.0, psi, E, cB, dx))
    done = 0
    while done < steps:
        chunk = min(record_every, steps - done)
        psi, E, cB = _kernels.step_all(psi, E, cB, dx, dt, chunk, use_numba)
        done += chunk
        res.records.append(_diagnostics(done, done * dt, psi, E, cB, dx))
    res.psi, res.E_ref, res.cB_ref = psi, E, cB
    return res


def evolve_periods(grid: Grid1D3V, periods=1.0, k=1, **kw) -> EvolutionResult:
    """Run for whole wave periods of mode k, shrinking dt to land exactly on the end time."""
    T = periods * grid.length / k
    steps = int(np.ceil(T / grid.dt - 1e-9))
    return evolve(grid, steps, dt=T / steps, **kw)

"""The six reference systems: parameters, right-hand sides, and defaults.

Three low-dimensional chaotic flows (Lorenz, Rossler, frictionless double
pendulum), one cyclic lattice (Lorenz-96), and two 1-D periodic PDEs
(Kuramoto-Sivashinsky and viscous Burgers) evaluated pseudo-spectrally.

Conventions
-----------
States are flat float64 vectors.  PDE states hold grid values of u on a
uniform periodic grid x_j = j*L/n; their right-hand sides are evaluated with
the unnormalized forward FFT (inverse carries 1/n) and the quadratic term is
dealiased with the 2/3 rule.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np


class SystemId(str, Enum):
    LORENZ = "lorenz"
    ROSSLER = "rossler"
    DOUBLE_PENDULUM = "double_pendulum"
    LORENZ96 = "lorenz96"
    KURAMOTO_SIVASHINSKY = "kuramoto_sivashinsky"
    BURGERS = "burgers"


ODE_SYSTEMS = frozenset(
    {SystemId.LORENZ, SystemId.ROSSLER, SystemId.DOUBLE_PENDULUM, SystemId.LORENZ96}
)
PDE_SYSTEMS = frozenset({SystemId.KURAMOTO_SIVASHINSKY, SystemId.BURGERS})


class DimensionMismatch(ValueError):
    """State vector length does not match the system."""


@dataclass(frozen=True)
class LorenzParams:
    sigma: float = 10.0
    rho: float = 28.0
    beta: float = 8.0 / 3.0


@dataclass(frozen=True)
class RosslerParams:
    a: float = 0.2
    b: float = 0.2
    c: float = 5.7


@dataclass(frozen=True)
class DoublePendulumParams:
    m1: float = 1.0
    m2: float = 1.0
    l1: float = 1.0
    l2: float = 1.0
    g: float = 9.81


@dataclass(frozen=True)
class Lorenz96Params:
    forcing: float = 8.0
    n: int = 40


@dataclass(frozen=True)
class KuramotoSivashinskyParams:
    mu: float = 1.0          # hyperviscosity coefficient on u_xxxx
    length: float = 32.0 * math.pi


@dataclass(frozen=True)
class BurgersParams:
    nu: float = 0.1          # viscosity
    length: float = 8.0 * math.pi


SystemParams = (
    LorenzParams
    | RosslerParams
    | DoublePendulumParams
    | Lorenz96Params
    | KuramotoSivashinskyParams
    | BurgersParams
)


@dataclass(frozen=True)
class GridSpec:
    """Uniform periodic grid for the PDE systems; n_points must be a power of two."""

    n_points: int = 128
    length: float = 2.0 * math.pi

    def __post_init__(self):
        if self.n_points < 8 or self.n_points & (self.n_points - 1):
            raise ValueError(f"n_points must be a power of two >= 8, got {self.n_points}")
        if not self.length > 0:
            raise ValueError("grid length must be positive")


def default_params(system: SystemId) -> SystemParams:
    """Canonical chaotic-regime parameters for each system."""
    return {
        SystemId.LORENZ: LorenzParams(),
        SystemId.ROSSLER: RosslerParams(),
        SystemId.DOUBLE_PENDULUM: DoublePendulumParams(),
        SystemId.LORENZ96: Lorenz96Params(),
        SystemId.KURAMOTO_SIVASHINSKY: KuramotoSivashinskyParams(),
        SystemId.BURGERS: BurgersParams(),
    }[system]


def default_grid(system: SystemId) -> GridSpec | None:
    """Default discretization for PDE systems; None for ODEs."""
    if system not in PDE_SYSTEMS:
        return None
    params = default_params(system)
    return GridSpec(n_points=128, length=params.length)


# Fixed-step sizes used for shipped data: (integrator dt, substeps per sample).
# The sampled interval dt*substeps is what challengers implicitly see.
DEFAULT_TIME_STEP: dict[SystemId, tuple[float, int]] = {
    SystemId.LORENZ: (0.01, 1),
    SystemId.ROSSLER: (0.025, 2),
    SystemId.DOUBLE_PENDULUM: (0.005, 2),
    SystemId.LORENZ96: (0.05, 1),
    SystemId.KURAMOTO_SIVASHINSKY: (0.25, 1),
    SystemId.BURGERS: (0.05, 2),
}


def state_dimension(system: SystemId, params: SystemParams, grid: GridSpec | None = None) -> int:
    if system is SystemId.LORENZ or system is SystemId.ROSSLER:
        return 3
    if system is SystemId.DOUBLE_PENDULUM:
        return 4
    if system is SystemId.LORENZ96:
        return params.n
    if grid is None:
        raise ValueError(f"{system.value} needs a GridSpec")
    return grid.n_points


def _lorenz_rhs(p: LorenzParams, s: np.ndarray) -> np.ndarray:
    x, y, z = s
    return np.array([p.sigma * (y - x), x * (p.rho - z) - y, x * y - p.beta * z])


def _rossler_rhs(p: RosslerParams, s: np.ndarray) -> np.ndarray:
    x, y, z = s
    return np.array([-y - z, x + p.a * y, p.b + z * (x - p.c)])


def _double_pendulum_rhs(p: DoublePendulumParams, s: np.ndarray) -> np.ndarray:
    # Frictionless two-link pendulum, angles measured from the downward
    # vertical, state (theta1, theta2, omega1, omega2).
    th1, th2, w1, w2 = s
    delta = th1 - th2
    sd, cd = math.sin(delta), math.cos(delta)
    den = 2.0 * p.m1 + p.m2 - p.m2 * math.cos(2.0 * delta)
    a1 = (
        -p.g * (2.0 * p.m1 + p.m2) * math.sin(th1)
        - p.m2 * p.g * math.sin(th1 - 2.0 * th2)
        - 2.0 * sd * p.m2 * (w2 * w2 * p.l2 + w1 * w1 * p.l1 * cd)
    ) / (p.l1 * den)
    a2 = (
        2.0
        * sd
        * (
            w1 * w1 * p.l1 * (p.m1 + p.m2)
            + p.g * (p.m1 + p.m2) * math.cos(th1)
            + w2 * w2 * p.l2 * p.m2 * cd
        )
    ) / (p.l2 * den)
    return np.array([w1, w2, a1, a2])


def _lorenz96_rhs(p: Lorenz96Params, s: np.ndarray) -> np.ndarray:
    # dx_i/dt = (x_{i+1} - x_{i-2}) x_{i-1} - x_i + F, indices cyclic.
    return (np.roll(s, -1) - np.roll(s, 2)) * np.roll(s, 1) - s + p.forcing


def _spectral_terms(state: np.ndarray, length: float):
    """rfft of u and of the dealiased u^2, plus the wavenumber array."""
    n = state.size
    q = 2.0 * np.pi * np.arange(n // 2 + 1) / length
    u_hat = np.fft.rfft(state)
    w_hat = np.fft.rfft(state * state)
    w_hat[np.arange(n // 2 + 1) > n // 3] = 0.0   # 2/3-rule dealiasing
    return u_hat, w_hat, q


def _ks_rhs(p: KuramotoSivashinskyParams, s: np.ndarray) -> np.ndarray:
    # u_t = -u u_x - u_xx - mu u_xxxx, with u u_x = (u^2)_x / 2.
    u_hat, w_hat, q = _spectral_terms(s, p.length)
    du_hat = -0.5j * q * w_hat + (q**2 - p.mu * q**4) * u_hat
    return np.fft.irfft(du_hat, s.size)


def _burgers_rhs(p: BurgersParams, s: np.ndarray) -> np.ndarray:
    # u_t = -u u_x + nu u_xx
    u_hat, w_hat, q = _spectral_terms(s, p.length)
    du_hat = -0.5j * q * w_hat - p.nu * q**2 * u_hat
    return np.fft.irfft(du_hat, s.size)


_RHS = {
    SystemId.LORENZ: _lorenz_rhs,
    SystemId.ROSSLER: _rossler_rhs,
    SystemId.DOUBLE_PENDULUM: _double_pendulum_rhs,
    SystemId.LORENZ96: _lorenz96_rhs,
    SystemId.KURAMOTO_SIVASHINSKY: _ks_rhs,
    SystemId.BURGERS: _burgers_rhs,
}

_FIXED_DIM = {SystemId.LORENZ: 3, SystemId.ROSSLER: 3, SystemId.DOUBLE_PENDULUM: 4}


def rhs(system: SystemId, params: SystemParams, state: np.ndarray) -> np.ndarray:
    """Time derivative of *state* under the given system.

    PDE states are grid values; their derivative is evaluated pseudo-spectrally
    on the periodic domain of params.length.
    """
    state = np.asarray(state, dtype=np.float64)
    if state.ndim != 1:
        raise DimensionMismatch(f"state must be a flat vector, got shape {state.shape}")
    if system in _FIXED_DIM:
        want = _FIXED_DIM[system]
        if state.size != want:
            raise DimensionMismatch(f"{system.value} state has dimension {want}, got {state.size}")
    elif system is SystemId.LORENZ96:
        if state.size != params.n:
            raise DimensionMismatch(f"lorenz96 state has dimension {params.n}, got {state.size}")
    else:
        if state.size < 8 or state.size % 2:
            raise DimensionMismatch(f"PDE state length must be even and >= 8, got {state.size}")
    return _RHS[system](params, state)


def rhs_function(system: SystemId, params: SystemParams):
    """Bound derivative function without per-call validation, for integrator loops."""
    if system is SystemId.LORENZ96:
        # Precomputed cyclic gathers beat np.roll in the hot loop.
        n, forcing = params.n, params.forcing
        idx = np.arange(n)
        ip1, im1, im2 = (idx + 1) % n, (idx - 1) % n, (idx - 2) % n
        return lambda s: (s[ip1] - s[im2]) * s[im1] - s + forcing
    f = _RHS[system]
    return lambda state: f(params, state)


def mechanical_energy(p: DoublePendulumParams, state: np.ndarray) -> float:
    """Total energy of the double pendulum; conserved by the frictionless flow."""
    th1, th2, w1, w2 = state
    v1sq = p.l1**2 * w1**2
    v2sq = v1sq + p.l2**2 * w2**2 + 2.0 * p.l1 * p.l2 * w1 * w2 * math.cos(th1 - th2)
    kinetic = 0.5 * p.m1 * v1sq + 0.5 * p.m2 * v2sq
    potential = -(p.m1 + p.m2) * p.g * p.l1 * math.cos(th1) - p.m2 * p.g * p.l2 * math.cos(th2)
    return kinetic + potential

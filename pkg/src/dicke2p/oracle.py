"""Independent numerical checks of the closed forms.

Two routes, neither of which touches the closed-form order parameter or
squeezing coefficients:

* brute-force minimisation of the ground-state energy E_g(beta) on a grid,
  refined by golden-section search;
* evolution of the cavity's Gaussian covariance matrix under the linear
  moment equations dX/dt = (omega - 2 g_beta) P, dP/dt = -(omega + 2 g_beta) X,
  by RK4 or by the matrix exponential of the generator.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.linalg import expm

from . import kernels
from .dynamics import QuadratureCoefficients
from .errors import DomainError, ParameterError, StepTooLarge
from .model import MeanFieldSolution, ModelParams, validate_params

VACUUM = (0.5, 0.5, 0.0)
MAX_DT_FRACTION = 1e-3
DEFAULT_DT_FRACTION = 1e-4
DEFAULT_GRID = 10_001
ENDPOINT_GUARD = 1e-9
REFINE_TOL = 1e-9


@dataclass(frozen=True)
class EnergyScan:
    beta_grid: np.ndarray
    energies: np.ndarray
    argmin: float
    min_energy: float

    def derivative_sign_changes(self):
        """Grid indices where the finite-difference slope of E_g changes sign."""
        slope = np.sign(np.diff(self.energies))
        slope = slope[slope != 0]
        return np.flatnonzero(slope[1:] != slope[:-1])


@dataclass(frozen=True)
class CovarianceState:
    """Symmetrised second moments of X and P; fields may be arrays over t."""

    t: float | np.ndarray
    sxx: float | np.ndarray
    spp: float | np.ndarray
    sxp: float | np.ndarray

    def determinant(self):
        return self.sxx * self.spp - self.sxp**2

    def min_eigenvalue(self):
        half_diff = 0.5 * (self.sxx - self.spp)
        return 0.5 * (self.sxx + self.spp) - np.hypot(half_diff, self.sxp)


def minimize_energy_bruteforce(
    p: ModelParams, n_grid: int = DEFAULT_GRID, rel_tol: float = REFINE_TOL
) -> EnergyScan:
    """Grid scan of E_g over [0, sqrt(N)) followed by golden-section refinement.

    Returns the non-negative minimiser; the negative one follows by symmetry.
    """
    validate_params(p)
    if n_grid < 3:
        raise ParameterError("energy scan needs at least 3 grid points")
    n = float(p.n_qubits)
    args = (p.omega, p.epsilon, n, p.g)
    grid = np.linspace(0.0, math.sqrt(n) * (1.0 - ENDPOINT_GUARD), n_grid)
    shifted = kernels.energy_scan(grid, *args)
    i = int(np.argmin(shifted))
    lo, hi = grid[max(i - 1, 0)], grid[min(i + 1, n_grid - 1)]
    beta = kernels.golden_section_min(lo, hi, rel_tol * math.sqrt(n), *args)
    e_beta = kernels.energy_shifted(beta, *args)
    if shifted[0] <= e_beta:
        beta, e_beta = 0.0, shifted[0]
    offset = p.epsilon * n / 2.0
    return EnergyScan(grid, shifted - offset, beta, e_beta - offset)


def _generator(s: MeanFieldSolution):
    omega, g_beta = s.params.omega, s.g_beta
    u, v = omega - 2.0 * g_beta, omega + 2.0 * g_beta
    if u * v <= 0:
        raise DomainError("moment equations are not oscillatory for this g_beta")
    return u, v, math.sqrt(u * v)


def _resolve_dt(freq, dt):
    dt_max = MAX_DT_FRACTION * math.pi / freq
    if dt is None:
        return DEFAULT_DT_FRACTION * math.pi / freq
    if dt <= 0:
        raise ParameterError(f"dt must be > 0, got {dt!r}")
    if dt > dt_max * (1.0 + 1e-12):
        raise StepTooLarge(f"dt = {dt:g} exceeds {dt_max:g} (1e-3 of a squeezing period)")
    return dt


def _expm_state(u, v, t):
    m = np.array([[0.0, u], [-v, 0.0]])
    s = expm(m * t)
    cov = s @ (0.5 * np.eye(2)) @ s.T
    return cov[0, 0], cov[1, 1], 0.5 * (cov[0, 1] + cov[1, 0])


def evolve_covariance(
    s: MeanFieldSolution, t: float, dt: float | None = None, method: str = "rk4"
) -> CovarianceState:
    """Covariance of the cavity quadratures at time t, starting from the vacuum."""
    if t < 0:
        raise ParameterError("time must be non-negative")
    u, v, freq = _generator(s)
    dt = _resolve_dt(freq, dt)
    if t == 0:
        return CovarianceState(0.0, *VACUUM)
    if method == "expm":
        return CovarianceState(float(t), *_expm_state(u, v, t))
    if method != "rk4":
        raise ParameterError(f"unknown method {method!r}")
    n_steps = max(1, math.ceil(t / dt))
    final = kernels.rk4_covariance(*VACUUM, s.params.omega, s.g_beta, t / n_steps, n_steps, n_steps)[-1]
    return CovarianceState(float(t), *map(float, final))


def covariance_trajectory(
    s: MeanFieldSolution,
    t_max: float,
    n_samples: int,
    dt: float | None = None,
    method: str = "rk4",
) -> CovarianceState:
    """Covariance on the uniform grid linspace(0, t_max, n_samples) from one integration."""
    if not (t_max > 0) or n_samples < 2:
        raise ParameterError("need t_max > 0 and at least 2 samples")
    u, v, freq = _generator(s)
    dt = _resolve_dt(freq, dt)
    times = np.linspace(0.0, t_max, n_samples)
    if method == "expm":
        cov = np.array([_expm_state(u, v, t) for t in times])
    elif method == "rk4":
        spacing = t_max / (n_samples - 1)
        sub = max(1, math.ceil(spacing / dt))
        cov = kernels.rk4_covariance(
            *VACUUM, s.params.omega, s.g_beta, spacing / sub, sub * (n_samples - 1), sub
        )
    else:
        raise ParameterError(f"unknown method {method!r}")
    return CovarianceState(times, cov[:, 0], cov[:, 1], cov[:, 2])


def moments_from_covariance(c: CovarianceState) -> QuadratureCoefficients:
    """Map quadrature moments onto (A_q, B_q, C_q).

    From a = (X + iP)/sqrt(2): a^2 + a^+^2 = X^2 - P^2,
    i(a^+^2 - a^2) = XP + PX and 2 a^+ a + 1 = X^2 + P^2, so the vacuum
    (1/2, 1/2, 0) maps onto (0, 0, 1).
    """
    return QuadratureCoefficients(c.t, c.sxx - c.spp, 2.0 * c.sxp, c.sxx + c.spp)

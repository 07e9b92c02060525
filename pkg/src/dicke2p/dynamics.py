"""Quadrature squeezing of the cavity field after a quench from the vacuum.

Conventions: X = (a + a^+)/sqrt(2), P = i(a^+ - a)/sqrt(2) and
Q_phi = X cos(phi) + P sin(phi). The squeezing parameter is normalised to
the vacuum, zeta^2 = 2 Var(Q_phi) = A cos(2 phi) + B sin(2 phi) + C, so
zeta = 1 is the standard quantum limit and zeta < 1 means squeezing.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DegenerateAngle, DomainError, ParameterError
from .model import MeanFieldSolution

DEFAULT_RESOLUTION = 200
MIN_RESOLUTION = 50


@dataclass(frozen=True)
class QuadratureCoefficients:
    """A_q, B_q, C_q at time(s) t; fields are floats or equal-shape arrays."""

    t: float | np.ndarray
    a_q: float | np.ndarray
    b_q: float | np.ndarray
    c_q: float | np.ndarray

    def purity_residual(self):
        return self.c_q**2 - self.a_q**2 - self.b_q**2 - 1.0


@dataclass(frozen=True)
class SqueezingSample:
    t: float
    zeta_x: float
    zeta_p: float
    zeta_min: float
    zeta_max: float
    phi_min: float
    degenerate: bool = False


@dataclass(frozen=True)
class SqueezingSeries:
    solution: MeanFieldSolution
    dt: float
    t: np.ndarray
    a_q: np.ndarray
    b_q: np.ndarray
    c_q: np.ndarray
    zeta_x: np.ndarray
    zeta_p: np.ndarray
    zeta_min: np.ndarray
    zeta_max: np.ndarray
    phi_min: np.ndarray
    degenerate: np.ndarray

    def __len__(self):
        return len(self.t)

    @property
    def samples(self):
        return [
            SqueezingSample(
                float(self.t[i]),
                float(self.zeta_x[i]),
                float(self.zeta_p[i]),
                float(self.zeta_min[i]),
                float(self.zeta_max[i]),
                float(self.phi_min[i]),
                bool(self.degenerate[i]),
            )
            for i in range(len(self.t))
        ]

    @property
    def coefficients(self):
        return QuadratureCoefficients(self.t, self.a_q, self.b_q, self.c_q)


def coefficients(s: MeanFieldSolution, t) -> QuadratureCoefficients:
    """Closed-form A_q(t), B_q(t), C_q(t) for the vacuum evolved under the mean-field Hamiltonian."""
    t_arr = np.asarray(t, dtype=float)
    if np.any(t_arr < 0):
        raise ParameterError("time must be non-negative")
    omega, g_beta, omega_a = s.params.omega, s.g_beta, s.omega_a
    if omega_a <= 0:
        raise DomainError("excitation frequency is zero; coefficients are undefined")
    # cos(2 w t) - 1 = -2 sin^2(w t) keeps t = 0 exactly at the vacuum (0, 0, 1)
    sin_sq = np.sin(omega_a * t_arr) ** 2
    a_q = -4.0 * omega * g_beta * sin_sq / omega_a**2
    b_q = -2.0 * g_beta * np.sin(2.0 * omega_a * t_arr) / omega_a
    c_q = 1.0 + 8.0 * g_beta**2 * sin_sq / omega_a**2
    if t_arr.ndim == 0:
        return QuadratureCoefficients(float(t_arr), float(a_q), float(b_q), float(c_q))
    return QuadratureCoefficients(t_arr, a_q, b_q, c_q)


def squeezing_at_angle(c: QuadratureCoefficients, phi):
    return np.sqrt(c.a_q * np.cos(2.0 * phi) + c.b_q * np.sin(2.0 * phi) + c.c_q)


def optimal_angle(c: QuadratureCoefficients, strict: bool = False):
    """Angle in [0, pi) that minimises the quadrature variance.

    Uses the two-argument arctangent so that A cos(2 phi) + B sin(2 phi)
    equals -sqrt(A^2 + B^2) on every branch. Where A = B = 0 the angle is
    undefined and 0 is returned, or ``DegenerateAngle`` is raised when
    ``strict`` is set.
    """
    a = np.asarray(c.a_q, dtype=float)
    b = np.asarray(c.b_q, dtype=float)
    degenerate = (a == 0.0) & (b == 0.0)
    if strict and np.any(degenerate):
        raise DegenerateAngle("A_q = B_q = 0: every quadrature has the same variance")
    phi = np.mod(np.arctan2(-b, -a), 2.0 * math.pi) / 2.0
    phi = np.where(phi >= math.pi, phi - math.pi, phi)
    phi = np.where(degenerate, 0.0, phi)
    return float(phi) if phi.ndim == 0 else phi


def is_degenerate(c: QuadratureCoefficients):
    return (np.asarray(c.a_q) == 0.0) & (np.asarray(c.b_q) == 0.0)


def min_squeezing(c: QuadratureCoefficients):
    """zeta_min = sqrt(C - sqrt(A^2 + B^2))."""
    return np.sqrt(c.c_q - np.hypot(c.a_q, c.b_q))


def max_squeezing(c: QuadratureCoefficients):
    """Anti-squeezed quadrature, sqrt(C + sqrt(A^2 + B^2))."""
    return np.sqrt(c.c_q + np.hypot(c.a_q, c.b_q))


def sample_times(omega_a: float, t_max: float, resolution: int = DEFAULT_RESOLUTION):
    dt = (math.pi / omega_a) / resolution
    n = int(math.floor(t_max / dt + 1e-9)) + 1
    return dt, dt * np.arange(n)


def quadrature_series(
    s: MeanFieldSolution, t_max: float, resolution: int = DEFAULT_RESOLUTION
) -> SqueezingSeries:
    """Sample the squeezing parameters on a uniform grid of (pi/omega_a)/resolution."""
    if not (t_max > 0):
        raise ParameterError(f"t_max must be > 0, got {t_max!r}")
    if resolution < MIN_RESOLUTION:
        raise ParameterError(f"resolution must be >= {MIN_RESOLUTION}, got {resolution!r}")
    dt, t = sample_times(s.omega_a, t_max, resolution)
    c = coefficients(s, t)
    return SqueezingSeries(
        solution=s,
        dt=dt,
        t=t,
        a_q=c.a_q,
        b_q=c.b_q,
        c_q=c.c_q,
        zeta_x=squeezing_at_angle(c, 0.0),
        zeta_p=squeezing_at_angle(c, math.pi / 2.0),
        zeta_min=min_squeezing(c),
        zeta_max=max_squeezing(c),
        phi_min=optimal_angle(c),
        degenerate=is_degenerate(c),
    )

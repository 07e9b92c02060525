"""Phase diagram, parameter sweeps and critical scaling near g = omega/2."""
from __future__ import annotations

import enum
import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .dynamics import SqueezingSeries, coefficients, min_squeezing
from .errors import (
    DomainError,
    InsufficientPoints,
    NotSuperradiant,
    ParameterError,
    TooFewPeriods,
)
from .model import (
    DELTA_MIN,
    MeanFieldSolution,
    ModelParams,
    critical_coupling,
    solve_mean_field,
)

UNBOUNDED = "unbounded"
DEFAULT_DELTA_NEAR = 1e-3
DEFAULT_R_OFFSET = 1e-3
MIN_FIT_POINTS = 5
MIN_POINTS_PER_PERIOD = 200


class GRule(str, enum.Enum):
    """How the coupling follows N*eps in the sweeps.

    NEAR_HALF_OMEGA: g = omega/2 - delta_near.
    NEAR_GT: g = g_t (1 + r).
    """

    NEAR_HALF_OMEGA = "near-half-omega"
    NEAR_GT = "near-gt"


def thread_count():
    try:
        return max(1, int(os.environ.get("DICKE2P_THREADS", "1")))
    except ValueError:
        return 1


def _pmap(fn, items):
    items = list(items)
    workers = min(thread_count(), len(items))
    if workers <= 1:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, items))


@dataclass(frozen=True)
class PhaseDiagram:
    g: np.ndarray
    n_epsilon: np.ndarray
    tags: np.ndarray  # shape (len(n_epsilon), len(g))
    boundary: np.ndarray  # g_t at each n_epsilon


@dataclass(frozen=True)
class SweepResult:
    axis: str
    values: np.ndarray
    zeta: np.ndarray
    fixed: dict = field(default_factory=dict)

    @property
    def zeta_sq(self):
        return self.zeta**2


@dataclass(frozen=True)
class SweepSurface:
    n_epsilon: np.ndarray
    t: np.ndarray
    zeta: np.ndarray  # shape (len(n_epsilon), len(t))
    fixed: dict = field(default_factory=dict)


@dataclass(frozen=True)
class ScalingFit:
    deltas: np.ndarray
    zeta_min_sq: np.ndarray
    slope_m: float
    max_rel_residual: float
    r_squared: float


def _strictly_increasing(values, name):
    values = np.asarray(values, dtype=float)
    if values.ndim != 1 or len(values) == 0:
        raise ParameterError(f"{name} must be a non-empty 1-d sequence")
    if np.any(np.diff(values) <= 0):
        raise ParameterError(f"{name} must be strictly increasing")
    return values


def relative_spread(values):
    """(max - min) / min of a positive sequence; 0 for a constant one."""
    values = np.asarray(values, dtype=float)
    return float((values.max() - values.min()) / values.min())


def phase_diagram(g_values, n_eps_values, omega=1.0, n_qubits=1000) -> PhaseDiagram:
    g = np.asarray(g_values, dtype=float)
    ne = np.asarray(n_eps_values, dtype=float)
    if np.any(ne <= 0):
        raise ParameterError("N*eps values must be > 0")
    if np.any(g < 0):
        raise ParameterError("g values must be >= 0")
    boundary = np.sqrt(omega * ne / 4.0)
    tags = np.empty((len(ne), len(g)), dtype=object)
    for i, g_t in enumerate(boundary):
        for j, gj in enumerate(g):
            if omega / 2.0 - gj < DELTA_MIN * omega:
                tags[i, j] = UNBOUNDED
            elif gj <= g_t:
                tags[i, j] = "normal"
            else:
                tags[i, j] = "superradiant"
    return PhaseDiagram(g, ne, tags, boundary)


def global_min_squeezing(s: MeanFieldSolution) -> float:
    """Smallest zeta_min over all t, reached where cos(2 omega_a t) = -1.

    ``C - sqrt(C^2 - 1)`` is evaluated as ``1 / (C + sqrt(C^2 - 1))``.
    """
    omega, g_beta, omega_a = s.params.omega, s.g_beta, s.omega_a
    c_max = (omega**2 + 4.0 * g_beta**2) / omega_a**2
    return 1.0 / math.sqrt(c_max + math.sqrt((c_max - 1.0) * (c_max + 1.0)))


def sampled_min_squeezing(s: MeanFieldSolution, n_samples: int = 10_000) -> float:
    """Minimum of zeta_min over one period on a uniform grid that contains the dip."""
    period = math.pi / s.omega_a
    t = np.linspace(0.0, period, n_samples + 1)
    return float(np.min(min_squeezing(coefficients(s, t))))


def _delta_solution(template: ModelParams, delta: float) -> MeanFieldSolution:
    p = template.with_g(template.omega / 2.0 - delta)
    s = solve_mean_field(p)
    if not s.superradiant:
        raise NotSuperradiant(
            f"delta = {delta:g} gives g = {p.g:g} <= g_t = {s.phase.g_t:g}"
        )
    return s


def delta_sweep(template: ModelParams, deltas) -> SweepResult:
    """Global minimum of zeta at g = omega/2 - delta for each delta."""
    deltas = _strictly_increasing(deltas, "deltas")
    if np.any(deltas <= 0):
        raise ParameterError("deltas must be > 0")
    zeta = _pmap(lambda d: global_min_squeezing(_delta_solution(template, d)), deltas)
    fixed = {"omega": template.omega, "epsilon": template.epsilon, "n_qubits": template.n_qubits}
    return SweepResult("delta", deltas, np.asarray(zeta), fixed)


def fit_through_origin(sweep: SweepResult) -> ScalingFit:
    """Least-squares line zeta_min^2 = m delta with zero intercept."""
    x = np.asarray(sweep.values, dtype=float)
    y = np.asarray(sweep.zeta_sq, dtype=float)
    if len(x) < MIN_FIT_POINTS:
        raise InsufficientPoints(f"need at least {MIN_FIT_POINTS} points, got {len(x)}")
    if np.any(x <= 0):
        raise ParameterError("fit abscissae must be > 0")
    m = float(np.dot(x, y) / np.dot(x, x))
    residual = y - m * x
    r_squared = 1.0 - float(np.dot(residual, residual) / np.dot(y, y))
    max_rel = float(np.max(np.abs(residual) / np.abs(y)))
    return ScalingFit(x, y, m, max_rel, r_squared)


def period_measurement(series: SqueezingSeries) -> float:
    """Oscillation period of zeta_min(t) from the spacing of successive minima.

    Each sampled minimum is refined by a parabola through its neighbours and
    the period is the slope of a straight-line fit of minimum time against
    minimum index.
    """
    z = np.asarray(series.zeta_min, dtype=float)
    t = np.asarray(series.t, dtype=float)
    if len(z) < 3 or np.ptp(z) <= 1e-12 * np.max(np.abs(z)):
        raise TooFewPeriods("series has no oscillation")
    inner = np.flatnonzero((z[1:-1] < z[:-2]) & (z[1:-1] <= z[2:])) + 1
    if len(inner) < 3:
        raise TooFewPeriods(f"found {len(inner)} minima, need at least 3")
    left, mid, right = z[inner - 1], z[inner], z[inner + 1]
    curv = left - 2.0 * mid + right
    shift = np.where(curv > 0, 0.5 * (left - right) / np.where(curv > 0, curv, 1.0), 0.0)
    t_min = t[inner] + shift * series.dt
    period = float(np.polyfit(np.arange(len(t_min)), t_min, 1)[0])
    if period / series.dt < 0.99 * MIN_POINTS_PER_PERIOD:
        raise ParameterError(
            f"only {period / series.dt:.0f} samples per period, need {MIN_POINTS_PER_PERIOD}"
        )
    return period


def omega_a_leading(template: ModelParams, delta: float) -> float:
    """Leading small-delta term 2 sqrt(delta) sqrt(omega^3 / (omega^2 - (N eps)^2))."""
    omega, ne = template.omega, template.n_epsilon
    gap = omega**2 - ne**2
    if gap <= 0:
        raise DomainError(f"expansion needs N*eps < omega, got N*eps = {ne:g}")
    return 2.0 * math.sqrt(delta) * math.sqrt(omega**3 / gap)


def omega_a_expansion(template: ModelParams, delta: float):
    """(exact, leading-order) excitation frequency at g = omega/2 - delta."""
    leading = omega_a_leading(template, delta)
    exact = _delta_solution(template, delta).omega_a
    return exact, leading


def coupling_for_rule(rule, template: ModelParams, delta_near=DEFAULT_DELTA_NEAR, r_offset=DEFAULT_R_OFFSET):
    rule = GRule(rule)
    if rule is GRule.NEAR_HALF_OMEGA:
        return template.omega / 2.0 - delta_near
    return critical_coupling(template) * (1.0 + r_offset)


def _zeta_min_at(rule, n_eps, times, omega, n_qubits, delta_near, r_offset):
    template = ModelParams.from_n_epsilon(n_eps, 0.0, omega=omega, n_qubits=n_qubits)
    g = coupling_for_rule(rule, template, delta_near, r_offset)
    s = solve_mean_field(template.with_g(g))
    return min_squeezing(coefficients(s, times))


def _rule_meta(rule, omega, n_qubits, delta_near, r_offset):
    return {
        "g_rule": GRule(rule).value,
        "omega": omega,
        "n_qubits": n_qubits,
        "delta_near": delta_near,
        "r_offset": r_offset,
    }


def epsilon_sweep(
    rule,
    n_eps_values,
    t_fixed: float = 100.0,
    omega: float = 1.0,
    n_qubits: int = 1000,
    delta_near: float = DEFAULT_DELTA_NEAR,
    r_offset: float = DEFAULT_R_OFFSET,
) -> SweepResult:
    """zeta_min at a fixed time as N*eps varies with g set by ``rule``.

    Points where the rule lands in the normal phase give zeta = 1; points
    at or beyond g = omega/2 raise ``UnboundedRegion``.
    """
    ne = _strictly_increasing(n_eps_values, "N*eps values")
    if t_fixed < 0:
        raise ParameterError("t_fixed must be >= 0")
    zeta = _pmap(
        lambda x: float(_zeta_min_at(rule, x, t_fixed, omega, n_qubits, delta_near, r_offset)),
        ne,
    )
    fixed = _rule_meta(rule, omega, n_qubits, delta_near, r_offset) | {"t": t_fixed}
    return SweepResult("n_epsilon", ne, np.asarray(zeta), fixed)


def time_epsilon_surface(
    rule,
    n_eps_values,
    t_values,
    omega: float = 1.0,
    n_qubits: int = 1000,
    delta_near: float = DEFAULT_DELTA_NEAR,
    r_offset: float = DEFAULT_R_OFFSET,
) -> SweepSurface:
    ne = _strictly_increasing(n_eps_values, "N*eps values")
    t = _strictly_increasing(t_values, "t values")
    if t[0] < 0:
        raise ParameterError("times must be >= 0")
    rows = _pmap(lambda x: _zeta_min_at(rule, x, t, omega, n_qubits, delta_near, r_offset), ne)
    return SweepSurface(ne, t, np.vstack(rows), _rule_meta(rule, omega, n_qubits, delta_near, r_offset))


def rule_gap(n_eps, t_fixed=100.0, omega=1.0, n_qubits=1000, delta_near=DEFAULT_DELTA_NEAR, r_offset=DEFAULT_R_OFFSET):
    """|zeta(near omega/2) - zeta(near g_t)| at one N*eps and time."""
    a, b = (
        float(_zeta_min_at(rule, n_eps, t_fixed, omega, n_qubits, delta_near, r_offset))
        for rule in GRule
    )
    return abs(a - b)


__all__ = [
    "GRule",
    "PhaseDiagram",
    "ScalingFit",
    "SweepResult",
    "SweepSurface",
    "UNBOUNDED",
    "coupling_for_rule",
    "delta_sweep",
    "epsilon_sweep",
    "fit_through_origin",
    "global_min_squeezing",
    "omega_a_expansion",
    "omega_a_leading",
    "period_measurement",
    "phase_diagram",
    "relative_spread",
    "rule_gap",
    "sampled_min_squeezing",
    "time_epsilon_surface",
]

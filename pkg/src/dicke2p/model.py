"""Mean-field ground state of the two-photon Dicke model.

After the Holstein-Primakoff mapping and dropping spin fluctuations the
cavity sees a single-mode quadratic Hamiltonian

    H = omega a^+ a + g_beta (a^+^2 + a^2) + eps (beta^2 - N/2)

whose effective two-photon drive ``g_beta`` depends on the atomic order
parameter ``beta``. Everything here is a scalar closed form; the independent
numerical checks live in :mod:`dicke2p.oracle`.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field

from .errors import (
    DomainError,
    NegativeCoupling,
    NonPositiveFrequency,
    UnboundedRegion,
    ZeroQubits,
)

#: Closest allowed approach to the unbounded boundary, in units of omega.
DELTA_MIN = 1e-10


class PhaseTag(str, enum.Enum):
    NORMAL = "normal"
    SUPERRADIANT = "superradiant"


@dataclass(frozen=True)
class ModelParams:
    """Physical inputs. Defaults are the N = 1000, omega = 1, eps = 0.0008 set."""

    omega: float = 1.0
    epsilon: float = 0.0008
    n_qubits: int = 1000
    g: float = 0.49

    def __post_init__(self):
        if not (self.omega > 0):
            raise NonPositiveFrequency(f"omega must be > 0, got {self.omega!r}")
        if not (self.epsilon > 0):
            raise NonPositiveFrequency(f"epsilon must be > 0, got {self.epsilon!r}")
        if not (self.n_qubits >= 1):
            raise ZeroQubits(f"n_qubits must be >= 1, got {self.n_qubits!r}")
        if not (self.g >= 0):
            raise NegativeCoupling(f"g must be >= 0, got {self.g!r}")

    @classmethod
    def from_n_epsilon(cls, n_epsilon, g, omega=1.0, n_qubits=1000):
        """Build from the collective splitting N*eps, the natural phase-diagram axis."""
        return cls(omega=omega, epsilon=n_epsilon / n_qubits, n_qubits=n_qubits, g=g)

    @property
    def lam(self):
        """lambda = omega / (2 eps N)."""
        return self.omega / (2.0 * self.epsilon * self.n_qubits)

    @property
    def mu(self):
        """mu = 4 g^2 / omega^2."""
        return 4.0 * self.g**2 / self.omega**2

    @property
    def n_epsilon(self):
        return self.n_qubits * self.epsilon

    @property
    def delta(self):
        """Distance omega/2 - g from the unbounded boundary."""
        return self.omega / 2.0 - self.g

    def with_g(self, g):
        return ModelParams(self.omega, self.epsilon, self.n_qubits, g)


@dataclass(frozen=True)
class Phase:
    tag: PhaseTag
    g_t: float


@dataclass(frozen=True)
class MeanFieldSolution:
    params: ModelParams
    phase: Phase
    beta0: float
    g_beta: float
    theta_a: float
    omega_a: float
    e_g: float
    branch: int = field(default=1)

    @property
    def superradiant(self):
        return self.phase.tag is PhaseTag.SUPERRADIANT


def validate_params(p: ModelParams, delta_min: float = DELTA_MIN) -> ModelParams:
    """Reject parameter points the mean-field model cannot describe.

    Positivity is already enforced by the constructor; this adds the
    unbounded-region guard ``g < omega/2 - delta_min*omega``.
    """
    if p.omega / 2.0 - p.g < delta_min * p.omega:
        raise UnboundedRegion(
            f"g = {p.g!r} is not below omega/2 = {p.omega / 2.0!r} "
            f"(minimum distance {delta_min * p.omega:g})"
        )
    return p


def critical_coupling(p: ModelParams) -> float:
    """g_t = sqrt(omega eps N / 4)."""
    return math.sqrt(p.omega * p.epsilon * p.n_qubits / 4.0)


def classify_phase(p: ModelParams) -> Phase:
    validate_params(p)
    g_t = critical_coupling(p)
    tag = PhaseTag.NORMAL if p.g <= g_t else PhaseTag.SUPERRADIANT
    return Phase(tag, g_t)


def _sign(branch) -> int:
    if branch in (1, "+", "plus"):
        return 1
    if branch in (-1, "-", "minus"):
        return -1
    raise ValueError(f"branch must be +1/-1 or '+'/'-', got {branch!r}")


def order_parameter(p: ModelParams, branch=1) -> float:
    """Energy-minimising beta0: zero in the normal phase, the +/- pair above g_t.

    Evaluated as ``beta0^2 = (N/2) (1 - y)`` with
    ``y = sqrt((1 - mu) / (4 mu^2 lambda^2 - mu))``, where ``1 - y`` is
    rewritten as ``(1 - y^2) / (1 + y)`` so the result stays accurate as
    ``g -> g_t+``.
    """
    sign = _sign(branch)
    phase = classify_phase(p)
    if phase.tag is PhaseTag.NORMAL:
        return 0.0
    mu, lam, g_t = p.mu, p.lam, phase.g_t
    denom = 4.0 * mu**2 * lam**2 - mu
    if denom <= 0:
        raise DomainError(f"4 mu^2 lambda^2 - mu = {denom!r} <= 0 above g_t")
    # 2 mu lambda = g^2 / g_t^2
    two_mu_lam = (p.g / g_t) ** 2
    excess = (p.g - g_t) * (p.g + g_t) / g_t**2 * (two_mu_lam + 1.0)
    y = math.sqrt((1.0 - mu) / denom)
    one_minus_y = excess / denom / (1.0 + y)
    return sign * math.sqrt(0.5 * p.n_qubits * one_minus_y)


def effective_coupling(p: ModelParams, beta: float) -> float:
    """g_beta = g sqrt(N - beta^2) (2 beta) / N for real beta."""
    n = p.n_qubits
    if beta * beta >= n:
        raise DomainError(f"beta^2 = {beta * beta!r} must be below N = {n}")
    return p.g * math.sqrt(n - beta * beta) * 2.0 * beta / n


def _check_drive(p: ModelParams, g_beta: float):
    if 2.0 * abs(g_beta) >= p.omega:
        raise DomainError(
            f"2|g_beta| = {2.0 * abs(g_beta)!r} >= omega = {p.omega!r}; "
            "the quadratic Hamiltonian has no ground state"
        )


def bogoliubov_angle(p: ModelParams, g_beta: float) -> float:
    _check_drive(p, g_beta)
    return 0.5 * math.atanh(2.0 * g_beta / p.omega)


def excitation_frequency(p: ModelParams, g_beta: float) -> float:
    """Positive root sqrt(omega^2 - 4 g_beta^2)."""
    _check_drive(p, g_beta)
    return math.sqrt((p.omega - 2.0 * g_beta) * (p.omega + 2.0 * g_beta))


def ground_state_energy(p: ModelParams, beta: float) -> float:
    omega_a = excitation_frequency(p, effective_coupling(p, beta))
    return omega_a / 2.0 + p.epsilon * (beta * beta - p.n_qubits / 2.0) - p.omega / 2.0


def solve_mean_field(p: ModelParams, branch=1) -> MeanFieldSolution:
    sign = _sign(branch)
    phase = classify_phase(p)
    beta0 = order_parameter(p, sign)
    g_beta = effective_coupling(p, beta0)
    return MeanFieldSolution(
        params=p,
        phase=phase,
        beta0=beta0,
        g_beta=g_beta,
        theta_a=bogoliubov_angle(p, g_beta),
        omega_a=excitation_frequency(p, g_beta),
        e_g=ground_state_energy(p, beta0),
        branch=sign,
    )

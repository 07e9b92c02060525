import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from dicke2p import (
    DomainError,
    ModelParams,
    NonPositiveFrequency,
    PhaseTag,
    UnboundedRegion,
    ZeroQubits,
    bogoliubov_angle,
    classify_phase,
    critical_coupling,
    effective_coupling,
    excitation_frequency,
    ground_state_energy,
    order_parameter,
    solve_mean_field,
    validate_params,
)
from dicke2p.oracle import minimize_energy_bruteforce

# Frozen from minimize_energy_bruteforce (grid + golden section on E_g only).
ORACLE_BETA0 = {0.45: 5.489858682822589, 0.47: 14.347446477867667, 0.49: 18.88135345038387}


def sr_params(n_eps, g, n=1000):
    return ModelParams.from_n_epsilon(n_eps, g, n_qubits=n)


class TestValidation:
    def test_derived_quantities(self, fig2):
        p = validate_params(fig2)
        assert p.lam == pytest.approx(0.625, rel=1e-15)
        assert p.mu == pytest.approx(0.9604, rel=1e-15)

    def test_unbounded_boundary(self):
        with pytest.raises(UnboundedRegion):
            validate_params(ModelParams(1.0, 0.0008, 1000, 0.50))

    def test_guard_just_below_boundary(self):
        with pytest.raises(UnboundedRegion):
            validate_params(ModelParams(1.0, 0.0008, 1000, 0.5 - 1e-12))
        validate_params(ModelParams(1.0, 0.0008, 1000, 0.5 - 1e-9))

    @pytest.mark.parametrize("kw", [{"omega": 0.0}, {"omega": -1.0}, {"epsilon": 0.0}])
    def test_non_positive_frequency(self, kw):
        with pytest.raises(NonPositiveFrequency):
            ModelParams(**kw)

    def test_zero_qubits(self):
        with pytest.raises(ZeroQubits):
            ModelParams(n_qubits=0)


class TestCriticalCoupling:
    @pytest.mark.parametrize(
        "eps, expected", [(0.0008, 0.447214), (0.001, 0.5), (0.0002, 0.223607)]
    )
    def test_values(self, eps, expected):
        assert critical_coupling(ModelParams(1.0, eps, 1000, 0.1)) == pytest.approx(expected, abs=1e-6)

    def test_matches_energy_scan_onset(self):
        # the oracle's minimiser leaves zero exactly where the closed form says
        g_t = critical_coupling(ModelParams(epsilon=0.0002, g=0.1))
        below = minimize_energy_bruteforce(ModelParams(epsilon=0.0002, g=g_t * 0.999))
        above = minimize_energy_bruteforce(ModelParams(epsilon=0.0002, g=g_t * 1.01))
        assert below.argmin == 0.0
        assert above.argmin > 1.0


class TestClassifyPhase:
    def test_normal(self):
        assert classify_phase(sr_params(0.8, 0.40)).tag is PhaseTag.NORMAL

    def test_tie_is_normal(self):
        g_t = critical_coupling(sr_params(0.8, 0.4))
        assert classify_phase(sr_params(0.8, g_t)).tag is PhaseTag.NORMAL

    def test_superradiant(self):
        assert classify_phase(sr_params(0.8, 0.49)).tag is PhaseTag.SUPERRADIANT

    def test_unbounded_propagates(self):
        with pytest.raises(UnboundedRegion):
            classify_phase(sr_params(0.8, 0.5))


class TestOrderParameter:
    def test_normal_phase_zero(self):
        assert order_parameter(sr_params(0.8, 0.40)) == 0.0

    @pytest.mark.parametrize("g", sorted(ORACLE_BETA0))
    def test_matches_oracle(self, g):
        assert order_parameter(sr_params(0.8, g)) == pytest.approx(ORACLE_BETA0[g], rel=1e-6)

    def test_branches_symmetric(self, fig2):
        assert order_parameter(fig2, "-") == -order_parameter(fig2, "+")
        assert order_parameter(fig2, +1) == pytest.approx(18.8814, abs=1e-4)

    def test_continuity_at_boundary(self):
        # references: the closed form evaluated at 50 digits with mpmath
        g_t = critical_coupling(sr_params(0.8, 0.4))
        assert order_parameter(sr_params(0.8, g_t + 1e-8)) == pytest.approx(0.0105737119842, rel=1e-6)
        assert order_parameter(sr_params(0.8, g_t + 1e-10)) == pytest.approx(0.00105737126279, rel=1e-4)
        assert 0 < order_parameter(sr_params(0.8, g_t + 1e-10)) < 1e-2

    def test_hp_root_real(self, fig2):
        assert order_parameter(fig2) ** 2 < fig2.n_qubits

    def test_is_local_minimum(self):
        for g in np.linspace(0.448, 0.4999, 12):
            p = sr_params(0.8, g)
            beta0 = order_parameter(p)
            h = 1e-4 * math.sqrt(p.n_qubits)
            e0 = ground_state_energy(p, beta0)
            assert e0 <= ground_state_energy(p, beta0 + h)
            assert e0 <= ground_state_energy(p, beta0 - h)


class TestBogoliubov:
    def test_effective_coupling(self, fig2):
        assert effective_coupling(fig2, 0.0) == 0.0
        assert effective_coupling(fig2, 18.8814) == pytest.approx(0.46939, abs=1e-5)
        assert effective_coupling(fig2, -18.8814) == -effective_coupling(fig2, 18.8814)

    def test_effective_coupling_domain(self, fig2):
        with pytest.raises(DomainError):
            effective_coupling(fig2, math.sqrt(1000))

    def test_angle(self, fig2):
        assert bogoliubov_angle(fig2, 0.0) == 0.0
        assert bogoliubov_angle(fig2, 0.46939) == pytest.approx(0.86384, abs=1e-5)
        with pytest.raises(DomainError):
            bogoliubov_angle(fig2, 0.5)

    def test_frequency(self, fig2):
        assert excitation_frequency(fig2, 0.0) == 1.0
        assert excitation_frequency(fig2, 0.46939) == pytest.approx(0.34452, abs=2e-5)
        assert excitation_frequency(fig2, 0.153881) == pytest.approx(0.951464, abs=1e-6)
        with pytest.raises(DomainError):
            excitation_frequency(fig2, -0.5)


class TestGroundStateEnergy:
    def test_zero_beta(self, fig2):
        assert ground_state_energy(fig2, 0.0) == pytest.approx(-fig2.epsilon * fig2.n_qubits / 2, abs=1e-15)

    def test_superradiant_lower(self, fig2):
        assert ground_state_energy(fig2, 18.8814) < ground_state_energy(fig2, 0.0)

    def test_even(self, fig2):
        assert ground_state_energy(fig2, 7.3) == ground_state_energy(fig2, -7.3)


class TestSolveMeanField:
    def test_normal(self):
        s = solve_mean_field(sr_params(0.8, 0.40))
        assert s.phase.tag is PhaseTag.NORMAL
        assert (s.beta0, s.g_beta, s.theta_a, s.omega_a) == (0.0, 0.0, 0.0, 1.0)

    def test_fig2_point(self, sr49):
        assert sr49.phase.tag is PhaseTag.SUPERRADIANT
        assert sr49.beta0 == pytest.approx(18.8814, abs=1e-4)
        assert sr49.g_beta == pytest.approx(0.46939, abs=1e-5)
        assert sr49.omega_a == pytest.approx(0.34453, abs=1e-5)

    def test_g045(self):
        s = solve_mean_field(sr_params(0.8, 0.45))
        assert s.beta0 == pytest.approx(ORACLE_BETA0[0.45], rel=1e-6)
        assert s.g_beta == pytest.approx(0.15387, abs=1e-5)
        assert s.omega_a == pytest.approx(0.95147, abs=1e-5)

    def test_branch_symmetry(self, sr49, sr49_minus):
        assert sr49_minus.beta0 == -sr49.beta0
        assert sr49_minus.g_beta == -sr49.g_beta
        assert sr49_minus.omega_a == sr49.omega_a
        assert sr49_minus.e_g == sr49.e_g


@st.composite
def superradiant_points(draw):
    n_eps = draw(st.floats(0.05, 0.99))
    g_t = math.sqrt(n_eps / 4)
    frac = draw(st.floats(1e-6, 1.0 - 1e-6))
    return sr_params(n_eps, g_t + frac * (0.5 - 1e-7 - g_t))


@settings(max_examples=200, deadline=None)
@given(superradiant_points(), st.sampled_from([1, -1]))
def test_solution_invariants(p, branch):
    s = solve_mean_field(p, branch)
    w, gb = p.omega, s.g_beta
    assert s.beta0**2 < p.n_qubits
    assert 2 * abs(gb) < w
    assert s.omega_a**2 + 4 * gb**2 == pytest.approx(w**2, rel=1e-12)
    bogoliubov = w * math.cosh(2 * s.theta_a) - 2 * gb * math.sinh(2 * s.theta_a)
    assert bogoliubov == pytest.approx(s.omega_a, rel=1e-10 / s.omega_a**2)
    assert s.e_g < ground_state_energy(p, 0.0)


def test_lambda_mu_identities():
    for omega, eps, n, g in [(1.0, 8e-4, 1000, 0.49), (2.5, 0.01, 37, 0.3), (0.7, 1e-5, 10**6, 0.1)]:
        p = ModelParams(omega, eps, n, g)
        assert p.lam == omega / (2 * eps * n)
        assert p.mu == 4 * g**2 / omega**2


@pytest.mark.parametrize("n_eps, exists", [(0.5, True), (0.99, True), (1.0, False), (1.5, False)])
def test_superradiance_needs_small_n_eps(n_eps, exists):
    g_t = critical_coupling(sr_params(n_eps, 0.1))
    assert (g_t < 0.5) is exists

# Standard library
from dataclasses import replace

# Third party
import numpy as np
import pytest

# Local
from qubitradiometer.dtos import GaussianAnsatzState, OracleConfig, PulseTiming
from qubitradiometer.errors import ValidationError
from qubitradiometer.radiometry.analytic import eta_a, mean_dephasing_transmitted
from qubitradiometer.radiometry.oracle import (
    ansatz_rhs,
    covariance_rhs,
    dephasing_ratio,
    eta_a_oracle,
    integrate_ansatz,
    mean_dephasing_rate,
)


def _random_covariance(seed: int) -> np.ndarray:
    rng = np.random.default_rng(seed)
    sigma = rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))
    return sigma + 3 * np.eye(2)


@pytest.mark.parametrize("pump_on", [True, False])
@pytest.mark.parametrize("seed", [0, 1, 2])
def test_covariance_form_matches_coefficient_form(params, pump_on, seed):
    sigma = _random_covariance(seed)
    log_norm = 0.3 - 0.2j
    state = GaussianAnsatzState.from_covariance(sigma, log_norm)

    m_dot = ansatz_rhs(state, params, 1.59, pump_on, params.chi / 3)
    m_dot_matrix = np.array([[m_dot[0], m_dot[3]], [m_dot[2], m_dot[1]]])
    expected_sigma_dot = -sigma @ m_dot_matrix @ sigma
    expected_log_dot = m_dot[4] / state.e - np.trace(m_dot_matrix @ sigma)

    y = np.array([sigma[0, 0], sigma[0, 1], sigma[1, 0], sigma[1, 1], log_norm])
    actual = covariance_rhs(y, params, 1.59, pump_on, params.chi / 3)

    np.testing.assert_allclose(
        actual[:4],
        [
            expected_sigma_dot[0, 0],
            expected_sigma_dot[0, 1],
            expected_sigma_dot[1, 0],
            expected_sigma_dot[1, 1],
        ],
        rtol=1e-9,
        atol=1e-6,
    )
    assert actual[4] == pytest.approx(expected_log_dot, rel=1e-9, abs=1e-6)


def test_state_round_trips_through_the_matrix():
    sigma = _random_covariance(4)
    state = GaussianAnsatzState.from_covariance(sigma, 0.0)
    np.testing.assert_allclose(state.matrix @ sigma, np.eye(2), atol=1e-12)
    assert state.norm == pytest.approx(1.0)


def test_no_blackbody_or_no_shift_keeps_coherence(params, timing):
    assert dephasing_ratio(params, 0.0, timing) == 1.0
    assert dephasing_ratio(replace(params, chi=0.0), 1.0, timing) == 1.0


def test_integrate_returns_states_at_pump_edges(params, timing):
    states = integrate_ansatz(params, 0.5, timing, delta_a=params.chi / 2)
    assert [s.t for s in states] == [0.0, timing.tau_p, timing.tau]
    assert all(s.is_finite and s.a.real > 0 for s in states)


def test_ratio_is_a_contrast(params, timing):
    ratio = dephasing_ratio(params, 0.5, timing, delta_a=params.chi / 2)
    assert 0.0 < ratio < 1.0


def test_oracle_config_validation():
    with pytest.raises(ValidationError):
        OracleConfig(epsilon=0.0)
    with pytest.raises(ValidationError):
        OracleConfig(epsilon=0.1)
    with pytest.raises(ValidationError):
        OracleConfig(rtol=-1.0)


def test_ratio_is_converged_in_epsilon(params, timing):
    config = OracleConfig(check_convergence=True)
    # Raises ConvergenceError if the ε/10 rerun moves the ratio by 1e-6
    dephasing_ratio(params, 1.0, timing, config, delta_a=params.chi / 2)


@pytest.mark.slow
@pytest.mark.parametrize("factor", [-3.0, -1.0, -0.5, 0.0, 0.5, 1.0, 3.0])
def test_small_probe_agrees_with_correlators(params, timing, factor):
    delta_a = factor * params.chi
    analytic = eta_a(params, timing, delta_a)
    exact = eta_a_oracle(params, timing, delta_a, n_probe=1e-3)
    assert abs(analytic - exact) < 0.02


@pytest.mark.slow
def test_large_probe_saturates_below_linear_dephasing(params, timing):
    detunings = np.linspace(0.25, 0.75, 5) * params.chi
    below = [
        mean_dephasing_rate(dephasing_ratio(params, 2.0, timing, delta_a=d), timing)
        < mean_dephasing_transmitted(params, 2.0, timing, d)
        for d in detunings
    ]
    assert any(below)


def test_longer_pump_leaves_less_coherence(params):
    ratios = [
        dephasing_ratio(
            params, 1.0, PulseTiming.from_pump_and_wait(tau_p), delta_a=params.chi / 2
        )
        for tau_p in (0.54e-6, 1.08e-6, 2.5e-6)
    ]
    assert np.all(np.diff(ratios) <= 0)


@pytest.mark.slow
@pytest.mark.parametrize("load", [3e-4, 0.05])
def test_correlators_hold_across_the_detuning_grid(params, timing, load):
    n_probe = load / params.gamma
    detunings = np.linspace(-3, 3, 41) * params.chi
    analytic = np.array([eta_a(params, timing, d) for d in detunings])
    exact = np.array(
        [eta_a_oracle(params, timing, d, n_probe=n_probe) for d in detunings]
    )
    assert np.max(np.abs(analytic - exact)) < 0.02

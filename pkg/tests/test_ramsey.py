# Standard library
import math

# Third party
import numpy as np
import pytest

# Local
from qubitradiometer.dtos import PulseTiming, RamseyFringe, ReadoutModel
from qubitradiometer.errors import EstimationError, FitError, ValidationError
from qubitradiometer.radiometry.analytic import gamma_th
from qubitradiometer.radiometry.ramsey import (
    amp_off,
    amp_ratio,
    default_phases,
    estimate_gamma_a,
    estimate_n_r_eff,
    fit_fringe,
    fringe_pair,
    synth_fringe,
)


def _exact(amplitude, readout, phase_offset=0.0, phases=None):
    phases = default_phases() if phases is None else phases
    p_g = 0.5 - (1 - 2 * readout.p_e_ini) * amplitude * np.cos(phases - phase_offset)
    return RamseyFringe(phases, readout.read_g(p_g))


def _exact_pair(gamma_a_mean, qubit, timing, readout):
    off = amp_off(qubit, timing)
    on = off / amp_ratio(gamma_a_mean, qubit, timing)
    return _exact(on, readout), _exact(off, readout)


def test_default_phases_cover_two_periods():
    phases = default_phases()
    assert phases.size == 21
    assert phases[0] == 0.0
    assert phases[-1] < 4 * math.pi


def test_fit_recovers_exact_fringe(readout):
    fringe = _exact(0.3, readout, phase_offset=1.2)
    amplitude, phase_offset, sigma = fit_fringe(fringe)
    assert amplitude == pytest.approx(0.3 * readout.fringe_contrast, rel=1e-9)
    assert phase_offset == pytest.approx(1.2, abs=1e-9)
    assert sigma == pytest.approx(0.0, abs=1e-9)


def test_fit_rejects_sparse_or_short_grids(readout):
    with pytest.raises(FitError):
        fit_fringe(_exact(0.3, readout, phases=np.linspace(0, 2 * math.pi, 5)))
    with pytest.raises(FitError):
        fit_fringe(_exact(0.3, readout, phases=np.linspace(0, math.pi, 21)))


def test_synth_rejects_unphysical_amplitude(readout, timing):
    with pytest.raises(FitError):
        synth_fringe(0.6, 0.0, readout, timing, seed=1)


def test_synth_counts_are_consistent(readout, timing):
    fringe = synth_fringe(0.4, 0.0, readout, timing, seed=3)
    assert fringe.counts.shape == (21, 2)
    assert np.all(fringe.counts.sum(axis=1) == timing.n_rep)
    assert fringe.amplitude == pytest.approx(
        0.4 * readout.fringe_contrast, abs=5 * fringe.amp_sigma
    )


def test_fringe_rejects_bad_counts():
    with pytest.raises(ValidationError):
        RamseyFringe(
            np.zeros(3), np.full(3, 0.5), n_rep=10, counts=np.array([[5, 4]] * 3)
        )


def test_gamma_estimate_is_exact_without_noise(qubit, timing, readout):
    on, off = _exact_pair(5e4, qubit, timing, readout)
    gamma = estimate_gamma_a(on, off, qubit, timing)
    assert gamma.value == pytest.approx(5e4, rel=1e-9)


def test_gamma_estimate_ignores_contrast_rescaling(qubit, timing):
    clean = ReadoutModel(p_e_ini=0.0, p_read_e_given_g=0.0, p_read_g_given_e=0.0)
    noisy = ReadoutModel(p_e_ini=0.08, p_read_e_given_g=0.05, p_read_g_given_e=0.1)
    on, off = _exact_pair(5e4, qubit, timing, clean)
    on_noisy, off_noisy = _exact_pair(5e4, qubit, timing, noisy)
    assert estimate_gamma_a(on, off, qubit, timing).value == pytest.approx(
        estimate_gamma_a(on_noisy, off_noisy, qubit, timing).value, rel=1e-9
    )


def test_gamma_estimate_needs_contrast(qubit, timing, readout):
    flat = RamseyFringe(
        default_phases(), np.full(21, 0.5), amplitude=0.0, amp_sigma=0.0
    )
    _, off = _exact_pair(5e4, qubit, timing, readout)
    with pytest.raises(EstimationError):
        estimate_gamma_a(flat, off, qubit, timing)


def test_population_estimate_inverts_the_dephasing(params, qubit, timing, readout):
    on, off = _exact_pair(gamma_th(params, 0.02), qubit, timing, readout)
    n_r_eff = estimate_n_r_eff(on, off, qubit, timing, params)
    assert n_r_eff.value == pytest.approx(0.02, rel=1e-6)


def test_population_sigma_includes_intrinsic_uncertainty(params, qubit, timing):
    on, off = fringe_pair(gamma_th(params, 0.02), qubit, timing, seed=2)
    bare = estimate_n_r_eff(on, off, qubit, timing, params)
    loaded = estimate_n_r_eff(on, off, qubit, timing, params, gamma_2r_sigma=2e3)
    assert loaded.value == bare.value
    assert loaded.sigma > bare.sigma


def test_fringe_pair_is_reproducible(qubit, timing):
    first = fringe_pair(4e4, qubit, timing, seed=11)
    second = fringe_pair(4e4, qubit, timing, seed=11)
    for a, b in zip(first, second):
        np.testing.assert_array_equal(a.counts, b.counts)


def test_fringe_pair_carries_the_stark_phase(qubit, timing):
    on, off = fringe_pair(4e4, qubit, timing, seed=5, phase_shift=0.7)
    assert on.phase_offset == pytest.approx(0.7, abs=0.1)
    assert min(off.phase_offset, 2 * math.pi - off.phase_offset) < 0.1


@pytest.mark.slow
def test_estimator_is_unbiased(qubit, timing):
    truth = 6e4
    runs = 40
    estimates = [
        estimate_gamma_a(*fringe_pair(truth, qubit, timing, seed=s), qubit, timing)
        for s in range(runs)
    ]
    mean = np.mean([e.value for e in estimates])
    sigma = np.mean([e.sigma for e in estimates]) / math.sqrt(runs)
    assert abs(mean - truth) < 3 * sigma


def test_switch_off_amplitude(qubit, timing):
    assert amp_off(qubit, timing) == pytest.approx(0.4585, abs=1e-4)


@pytest.mark.parametrize("factor, expected", [(1.0, 1.0), (2.0, 1.046), (0.0, 0.956)])
def test_amplitude_ratio(qubit, timing, factor, expected):
    ratio = amp_ratio(factor * qubit.gamma_2r, qubit, timing)
    assert ratio == pytest.approx(expected, abs=1e-3)


def test_initial_contrast(readout):
    assert readout.a0 == pytest.approx(0.923, abs=1e-3)


def _sampled_amplitudes(n_rep, readout, seeds, amplitude=0.4):
    timing = PulseTiming(n_rep=n_rep)
    fringes = [
        synth_fringe(amplitude, 0.0, readout, timing, seed)
        for seed in np.random.SeedSequence(31).spawn(seeds)
    ]
    return (
        np.array([f.amplitude for f in fringes]),
        np.array([f.amp_sigma for f in fringes]),
    )


def test_amplitude_error_shrinks_with_repetitions(readout):
    _, few = _sampled_amplitudes(100, readout, 20)
    _, many = _sampled_amplitudes(10_000, readout, 20)
    assert few.mean() / many.mean() == pytest.approx(10.0, rel=0.05)


def test_amplitude_error_matches_the_sampled_scatter(readout):
    amplitudes, sigmas = _sampled_amplitudes(10_000, readout, 400)
    assert amplitudes.std(ddof=1) == pytest.approx(sigmas.mean(), rel=0.15)

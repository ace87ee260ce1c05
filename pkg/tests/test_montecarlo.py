"""Trajectory-average oracle, simulated measurements, and MLE studies.

These tests treat the Monte Carlo sampler as an independent witness for
the closed forms: agreement is always judged against the sampler's own
standard error, never against a hand-tuned constant.
"""

import math

import numpy as np
import pytest

from noiseprobe.colored import lambda_quadrature
from noiseprobe.dephasing import QubitState, rtn_decay
from noiseprobe.montecarlo import (
    cr_saturation_study,
    mc_colored_coefficient,
    mc_rtn_coefficient,
    mle_parameter,
    phase_integrals,
    simulate_population_shots,
)
from noiseprobe.noise import ColoredParams, RtnParams


class TestPhaseIntegrals:
    def test_bounded_by_horizon(self):
        rng = np.random.default_rng(0)
        ints = phase_integrals(np.full(500, 1.3), 2.0, rng)
        assert np.all(np.abs(ints) <= 2.0 + 1e-12)

    def test_zero_time(self):
        rng = np.random.default_rng(0)
        assert np.all(phase_integrals(np.full(10, 1.0), 0.0, rng) == 0.0)

    def test_symmetric_distribution(self):
        rng = np.random.default_rng(5)
        ints = phase_integrals(np.full(40000, 0.7), 1.5, rng)
        assert abs(ints.mean()) < 4 * ints.std() / math.sqrt(ints.size)

    def test_rejects_negative_time(self):
        with pytest.raises(ValueError):
            phase_integrals(np.ones(3), -1.0, np.random.default_rng(0))


class TestRtnOracle:
    @pytest.mark.parametrize("gamma,tau", [(0.3, 1.0), (2.0, 0.8), (6.0, 1.5)])
    def test_agrees_with_closed_form(self, gamma, tau):
        est = mc_rtn_coefficient(RtnParams(gamma), tau, 100_000, seed=91)
        closed = float(rtn_decay(tau, gamma))
        assert abs(est.mean - closed) <= 4 * est.std_error
        assert abs(est.residual) <= 4 * est.std_error

    def test_seed_determinism(self):
        a = mc_rtn_coefficient(RtnParams(1.0), 1.0, 20_000, seed=7)
        b = mc_rtn_coefficient(RtnParams(1.0), 1.0, 20_000, seed=7)
        c = mc_rtn_coefficient(RtnParams(1.0), 1.0, 20_000, seed=8)
        assert a == b
        assert a.mean != c.mean

    def test_error_shrinks_with_samples(self):
        small = mc_rtn_coefficient(RtnParams(1.0), 1.0, 4_000, seed=3)
        large = mc_rtn_coefficient(RtnParams(1.0), 1.0, 64_000, seed=3)
        # 16x the samples should cut the standard error about 4x
        assert large.std_error == pytest.approx(small.std_error / 4, rel=0.3)

    def test_rejects_empty_request(self):
        with pytest.raises(ValueError):
            mc_rtn_coefficient(RtnParams(1.0), 1.0, 0, seed=1)


class TestColoredOracle:
    @pytest.mark.parametrize("alpha,n_fl", [(1.0, 1), (1.8, 5)])
    def test_agrees_with_quadrature(self, alpha, n_fl):
        params = ColoredParams(alpha, n_fluctuators=n_fl)
        est = mc_colored_coefficient(params, 1.0, 100_000, seed=17)
        closed = lambda_quadrature(1.0, ColoredParams(alpha)).value ** n_fl
        assert abs(est.mean - closed) <= 4 * est.std_error

    def test_seed_determinism(self):
        p = ColoredParams(1.2, n_fluctuators=3)
        a = mc_colored_coefficient(p, 0.7, 10_000, seed=2)
        b = mc_colored_coefficient(p, 0.7, 10_000, seed=2)
        assert a == b


class TestSimulatedShots:
    def test_counts_sum_and_determinism(self):
        state = QubitState(p00=0.73, coherence=0.0)
        n0, n1 = simulate_population_shots(state, 10_000, 44)
        assert n0 + n1 == 10_000
        assert (n0, n1) == simulate_population_shots(state, 10_000, 44)
        # rough agreement with the population
        assert n0 / 10_000 == pytest.approx(0.73, abs=0.02)

    def test_rejects_zero_shots(self):
        with pytest.raises(ValueError):
            simulate_population_shots(QubitState(0.5, 0.0), 0, 1)


class TestMle:
    def test_recovers_rate_from_exact_counts(self):
        # feed the estimator counts matching the model probability exactly
        gamma, tau, shots = 1.2, 1.0, 10**6
        p0 = (1 + float(rtn_decay(tau, gamma))) / 2
        n0 = round(p0 * shots)
        est = mle_parameter((n0, shots - n0), tau, family="rtn")
        assert est.value == pytest.approx(gamma, abs=2e-3)
        assert not est.at_boundary

    def test_recovers_alpha_from_exact_counts(self):
        alpha, tau, shots = 1.4, 1.0, 10**6
        p0 = (1 + lambda_quadrature(tau, ColoredParams(alpha)).value) / 2
        n0 = round(p0 * shots)
        est = mle_parameter((n0, shots - n0), tau, family="colored",
                            interval=(0.5, 2.0), grid_points=100)
        assert est.value == pytest.approx(alpha, abs=5e-3)

    def test_boundary_flag(self):
        # all-excited counts push the estimate to an interval end
        est = mle_parameter((0, 1000), math.pi / 2, family="rtn")
        assert est.at_boundary

    def test_rejects_bad_inputs(self):
        with pytest.raises(ValueError):
            mle_parameter((0, 0), 1.0)
        with pytest.raises(ValueError):
            mle_parameter((-1, 5), 1.0)
        with pytest.raises(ValueError):
            mle_parameter((10, 10), 1.0, family="gaussian")


class TestCrStudy:
    def test_structure_and_determinism(self):
        st1 = cr_saturation_study(1.0, 1.45, 2_000, 40, seed=6)
        st2 = cr_saturation_study(1.0, 1.45, 2_000, 40, seed=6)
        assert st1 == st2
        assert st1.cr_bound > 0
        assert st1.empirical_variance > 0
        assert st1.n_boundary <= 40
        d = st1.as_dict()
        assert d["seed"] == 6 and d["n_repetitions"] == 40

    def test_estimator_is_nearly_unbiased(self):
        st = cr_saturation_study(1.0, 1.45, 5_000, 120, seed=13)
        assert st.valid
        se = math.sqrt(st.empirical_variance / st.n_repetitions)
        assert abs(st.mean_estimate - 1.0) < 4 * se

import numpy as np
import pytest

from conftest import steady_scenario
from steadycredit import synth
from steadycredit.cycles import cycle_stats
from steadycredit.errors import InvariantError, ParseError
from steadycredit.rates import F_SOURCE_BALANCE, F_SOURCE_LOANS, credit_growth_rates
from steadycredit.series import Quarter
from steadycredit.steady_state import ssp_least_squares


class TestGenerate:
    def test_deterministic_given_seed(self):
        scenario = steady_scenario(noise_sigma=0.004, seed=77)
        series_a, truth_a = synth.generate(scenario)
        series_b, truth_b = synth.generate(scenario)
        assert series_a == series_b
        assert truth_a == truth_b

    def test_different_seeds_differ(self):
        a, _ = synth.generate(steady_scenario(noise_sigma=0.004, seed=1))
        b, _ = synth.generate(steady_scenario(noise_sigma=0.004, seed=2))
        assert a != b

    def test_construction_consistency(self):
        series, truth = synth.generate(steady_scenario(noise_sigma=0.003, seed=4))
        obs = series.observations
        for point, prev, cur in zip(truth.points, obs, obs[1:]):
            rebuilt = prev.tcu * (1.0 - point.d) * (1.0 + point.f)
            assert abs(rebuilt - cur.tcu) <= 1e-12 * cur.tcu

    def test_null_hypothesis_recovery(self):
        scenario = steady_scenario(
            d_amp=0.0, hypothesis="H0", zeta_true=0.5, n_quarters=19
        )
        series, _ = synth.generate(scenario)
        rates = credit_growth_rates(series)
        for p in rates.points:
            assert p.d == pytest.approx(0.004, abs=1e-15)
            assert p.f == pytest.approx(0.004 / 0.996, abs=1e-15)

    def test_steady_state_recovery(self):
        series, _ = synth.generate(steady_scenario(zeta_true=0.00245))
        est = ssp_least_squares(credit_growth_rates(series))
        assert abs(est.zeta - 0.00245) < 1e-12

    def test_negative_growth_omits_loans(self):
        scenario = steady_scenario(
            zeta_true=-0.05, n_quarters=10, d_amp=0.0
        )  # growth pinned below zero
        series, truth = synth.generate(scenario)
        assert all(o.loans is None for o in series.observations[1:])
        assert all(p.f_source == F_SOURCE_BALANCE for p in truth.points)
        recovered = credit_growth_rates(series)
        for got, want in zip(recovered.points, truth.points):
            assert got.f == pytest.approx(want.f, abs=1e-15)

    def test_positive_growth_carries_loans(self):
        series, truth = synth.generate(steady_scenario())
        assert all(o.loans is not None for o in series.observations[1:])
        assert all(p.f_source == F_SOURCE_LOANS for p in truth.points)

    def test_explosive_noise_aborts_with_seed_and_index(self):
        scenario = steady_scenario(noise_sigma=3.0, seed=0, n_quarters=40)
        with pytest.raises(InvariantError, match=r"seed 0"):
            synth.generate(scenario)

    def test_estimator_identifiability(self):
        zeta = 0.020584
        estimates = []
        for seed in range(200):
            scenario = steady_scenario(
                n_quarters=50, zeta_true=zeta, noise_sigma=0.005, seed=seed
            )
            series, _ = synth.generate(scenario)
            estimates.append(ssp_least_squares(credit_growth_rates(series)).zeta)
        estimates = np.asarray(estimates)
        se = estimates.std(ddof=1) / np.sqrt(estimates.size)
        assert abs(estimates.mean() - zeta) <= 2.0 * se

    def test_mirror_scenario_cycles_on_bad_debt(self):
        # under the exact null the stock stays at its starting level, so the
        # sinusoidal default path shows up as a sinusoid in new bad debt
        d_amp = 39.2e9 / 915.4e9
        scenario = steady_scenario(
            n_quarters=18,
            tcu0=915.4e9,
            d_base=0.05,
            d_amp=d_amp,
            d_period_quarters=8,
            hypothesis="H0",
            zeta_true=0.0,
        )
        series, _ = synth.generate(scenario)
        tcu = np.asarray(series.tcu_values())
        assert np.max(np.abs(tcu - 915.4e9)) <= 1e-9 * 915.4e9
        abd = [o.abd for o in series.observations[1:]]
        report = cycle_stats(abd, quarters_per_year=4)
        assert report.frequency == pytest.approx(0.5, abs=1e-12)
        assert report.peak_amplitude_mean == pytest.approx(39.2e9, rel=0.02)


class TestScenarioValidation:
    def test_rejects_rate_range_leaving_unit_interval(self):
        with pytest.raises(InvariantError):
            steady_scenario(d_base=0.4, d_amp=0.7)

    def test_rejects_too_few_quarters(self):
        with pytest.raises(InvariantError):
            steady_scenario(n_quarters=2)

    def test_rejects_unknown_hypothesis(self):
        with pytest.raises(InvariantError):
            steady_scenario(hypothesis="H2")


class TestScenarioConfig:
    def test_text_round_trip(self):
        scenario = steady_scenario(noise_sigma=0.002, seed=123)
        assert synth.parse_scenario(synth.scenario_to_text(scenario)) == scenario

    def test_comments_and_blank_lines_ignored(self):
        text = (
            "# steady-state run\n"
            "n_quarters=18\n\n"
            "start=2008-Q1\n"
            "tcu0=9e11\n"
            "d_base=0.004  # baseline\n"
            "d_amp=0.002\n"
            "d_period_quarters=8\n"
            "zeta_true=0.00245\n"
            "noise_sigma=0\n"
            "hypothesis=H1\n"
            "seed=7\n"
        )
        scenario = synth.parse_scenario(text)
        assert scenario.start == Quarter(2008, 1)
        assert scenario.seed == 7

    def test_seed_argument_overrides_text(self):
        text = synth.scenario_to_text(steady_scenario(seed=1))
        assert synth.parse_scenario(text, seed=99).seed == 99

    def test_missing_keys_reported(self):
        with pytest.raises(ParseError, match="missing keys"):
            synth.parse_scenario("n_quarters=18\n")

    def test_unknown_key_rejected(self):
        with pytest.raises(ParseError, match="unknown"):
            synth.parse_scenario("bogus=1\n")

    def test_bad_value_reports_line(self):
        with pytest.raises(ParseError, match="line 1"):
            synth.parse_scenario("n_quarters=eighteen\n")

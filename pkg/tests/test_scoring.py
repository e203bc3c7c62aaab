import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from dynbench.scoring import (
    METRIC_NAMES,
    DegenerateTruth,
    ScoreProfile,
    ScoringConfig,
    ScoringFailed,
    ShapeMismatch,
    WindowTooSmall,
    log_power_spectrum,
    long_time_score,
    radar_export,
    relative_frobenius_error,
    score_submission,
    short_time_score,
)
from oracles import brute_log_power_spectrum, brute_relative_error

SPACE_CFG = ScoringConfig(k_short=4, k_long=20, k_m=2, spectral_axis="space")
TIME_CFG = ScoringConfig(k_short=4, k_long=20, k_m=100, spectral_axis="time")


class TestRelativeFrobeniusError:
    def test_equal_is_zero(self):
        t = np.random.default_rng(0).standard_normal((3, 10))
        assert relative_frobenius_error(t, t.copy(), (0, 10)) == 0.0

    def test_zeros_is_one(self):
        t = np.random.default_rng(1).standard_normal((3, 10))
        assert relative_frobenius_error(t, np.zeros_like(t), (0, 10)) == 1.0

    def test_diagonal_example(self):
        t = np.array([[3.0, 0.0], [0.0, 4.0]])
        assert relative_frobenius_error(t, np.zeros_like(t), (0, 2)) == 1.0
        assert relative_frobenius_error(t, t / 2.0, (0, 2)) == 0.5

    def test_matches_brute_force(self):
        rng = np.random.default_rng(2)
        t = rng.standard_normal((8, 12))
        p = rng.standard_normal((8, 12))
        mine = relative_frobenius_error(t, p, (2, 9))
        assert abs(mine - brute_relative_error(t, p, (2, 9))) < 1e-12

    def test_sign_symmetry(self):
        rng = np.random.default_rng(3)
        t = rng.standard_normal((4, 6))
        p = rng.standard_normal((4, 6))
        assert relative_frobenius_error(t, p, (0, 6)) == relative_frobenius_error(-t, -p, (0, 6))

    def test_shape_mismatch(self):
        with pytest.raises(ShapeMismatch):
            relative_frobenius_error(np.zeros((2, 3)), np.zeros((3, 2)), (0, 2))

    def test_degenerate_truth(self):
        with pytest.raises(DegenerateTruth):
            relative_frobenius_error(np.zeros((2, 3)), np.ones((2, 3)), (0, 3))


class TestLogPowerSpectrum:
    def test_constant_column_space_mode(self):
        n, c = 16, 2.5
        cfg = ScoringConfig(k_short=1, k_long=3, k_m=7, spectral_axis="space")
        m = np.full((n, 3), c)
        spec = log_power_spectrum(m, (0, 3), cfg)
        assert spec.shape == (15, 3)
        center = 7  # zero frequency lands mid-window
        expected_peak = math.log((n * c) ** 2 + cfg.epsilon)
        floor = math.log(cfg.epsilon)
        np.testing.assert_allclose(spec[center], expected_peak, rtol=1e-12)
        off = np.delete(spec, center, axis=0)
        assert np.all(np.abs(off - floor) < 1e-3)

    def test_pure_cosine_two_bins(self):
        n = 32
        cfg = ScoringConfig(k_short=1, k_long=1, k_m=15, spectral_axis="space")
        u = np.cos(2.0 * np.pi * 3.0 * np.arange(n) / n)
        spec = log_power_spectrum(u[:, None], (0, 1), cfg)[:, 0]
        floor = math.log(cfg.epsilon)
        hot = np.flatnonzero(spec > floor + 1.0)
        center = 15
        assert set(hot) == {center - 3, center + 3}

    def test_space_mode_matches_brute_dft(self):
        rng = np.random.default_rng(4)
        m = rng.standard_normal((128, 50))
        cfg = ScoringConfig(k_short=1, k_long=50, k_m=63, spectral_axis="space")
        mine = log_power_spectrum(m, (0, 50), cfg)
        ref = brute_log_power_spectrum(m, (0, 50), "space", 63, cfg.epsilon)
        np.testing.assert_allclose(mine, ref, atol=1e-10)

    def test_time_mode_matches_brute_dft(self):
        rng = np.random.default_rng(5)
        m = rng.standard_normal((4, 24))
        mine = log_power_spectrum(m, (0, 24), TIME_CFG)
        ref = brute_log_power_spectrum(m, (0, 24), "time", TIME_CFG.k_m, TIME_CFG.epsilon)
        assert mine.shape == (4, 2 * 11 + 1)
        np.testing.assert_allclose(mine, ref, atol=1e-10)

    def test_window_too_small(self):
        cfg = ScoringConfig(k_short=1, k_long=2, k_m=10, spectral_axis="space")
        with pytest.raises(WindowTooSmall):
            log_power_spectrum(np.zeros((8, 4)), (0, 4), cfg)
        with pytest.raises(WindowTooSmall):
            log_power_spectrum(np.zeros((3, 3)), (0, 3), TIME_CFG)


class TestScoreScale:
    def test_short_time_calibration_points(self):
        rng = np.random.default_rng(6)
        t = rng.standard_normal((5, 30))
        cfg = ScoringConfig(k_short=10, k_long=15, k_m=2, spectral_axis="space")
        assert short_time_score(t, t.copy(), cfg) == 100.0
        assert short_time_score(t, np.zeros_like(t), cfg) == 0.0
        assert short_time_score(t, 0.5 * t, cfg) == 50.0
        assert short_time_score(t, 2.0 * t, cfg) == 0.0
        assert short_time_score(t, -t, cfg) == -100.0

    @given(st.sampled_from([-1.0, 0.0, 0.25, 0.5, 1.0, 2.0]), st.integers(0, 2**32 - 1))
    @settings(max_examples=40, deadline=None)
    def test_scale_law(self, alpha, seed):
        t = np.random.default_rng(seed).standard_normal((3, 12)) + 0.1
        cfg = ScoringConfig(k_short=5, k_long=6, k_m=1, spectral_axis="space")
        expected = 100.0 * (1.0 - abs(1.0 - alpha))
        assert abs(short_time_score(t, alpha * t, cfg) - expected) < 1e-9

    def test_long_time_calibration(self):
        rng = np.random.default_rng(7)
        t = rng.standard_normal((7, 40))
        assert long_time_score(t, t.copy(), SPACE_CFG) == 100.0
        assert long_time_score(t, np.zeros_like(t), SPACE_CFG) == 0.0

    def test_long_time_column_permutation_invariance(self):
        rng = np.random.default_rng(8)
        t = rng.standard_normal((7, 40))
        p = rng.standard_normal((7, 40))
        base = long_time_score(t, p, SPACE_CFG)
        perm = rng.permutation(np.arange(20, 40))
        t2, p2 = t.copy(), p.copy()
        t2[:, 20:], p2[:, 20:] = t[:, perm], p[:, perm]
        assert long_time_score(t2, p2, SPACE_CFG) == pytest.approx(base, abs=1e-12)

    def test_monotone_degradation_under_noise(self):
        rng = np.random.default_rng(9)
        t = rng.standard_normal((6, 50))
        cfg = ScoringConfig(k_short=50, k_long=25, k_m=2, spectral_axis="space")
        means = []
        for sigma in (0.0, 0.1, 0.5, 1.0, 2.0):
            scores = [
                short_time_score(t, t + sigma * rng.standard_normal(t.shape), cfg)
                for _ in range(100)
            ]
            means.append(np.mean(scores))
        assert all(a >= b for a, b in zip(means, means[1:]))


def _synthetic_truths(rng, rows=6, cols=40):
    return {f"X{i}test": rng.standard_normal((rows, cols)) for i in range(1, 10)}


class TestScoreSubmission:
    def test_truth_bundle_scores_100(self):
        truths = _synthetic_truths(np.random.default_rng(10))
        bundle = {k: v.copy() for k, v in truths.items()}
        profile = score_submission(truths, bundle, SPACE_CFG)
        assert profile.scores == tuple([100.0] * 12)
        assert profile.composite == 100.0

    def test_zeros_bundle_scores_0(self):
        truths = _synthetic_truths(np.random.default_rng(11))
        bundle = {k: np.zeros_like(v) for k, v in truths.items()}
        profile = score_submission(truths, bundle, SPACE_CFG)
        assert all(abs(v) < 1e-9 for v in profile.scores)
        assert abs(profile.composite) < 1e-9

    def test_half_scaled_first_output(self):
        truths = _synthetic_truths(np.random.default_rng(12))
        bundle = {k: v.copy() for k, v in truths.items()}
        bundle["X1test"] = 0.5 * truths["X1test"]
        profile = score_submission(truths, bundle, SPACE_CFG)
        by_name = profile.as_mapping()
        assert by_name["E1"] == 50.0
        assert by_name["E2"] < 100.0
        for name in METRIC_NAMES[2:]:
            assert by_name[name] == 100.0

    def test_metric_flavors_route_to_expected_outputs(self):
        truths = _synthetic_truths(np.random.default_rng(13))
        bundle = {k: v.copy() for k, v in truths.items()}
        bundle["X8test"] = np.zeros_like(truths["X8test"])  # E11 only
        profile = score_submission(truths, bundle, SPACE_CFG)
        by_name = profile.as_mapping()
        assert by_name["E11"] == 0.0
        assert all(by_name[n] == 100.0 for n in METRIC_NAMES if n != "E11")

    def test_failure_collects_metric_list(self):
        truths = _synthetic_truths(np.random.default_rng(14))
        bundle = {k: v.copy() for k, v in truths.items()}
        del bundle["X1test"]
        with pytest.raises(ScoringFailed) as err:
            score_submission(truths, bundle, SPACE_CFG)
        failed = [name for name, _ in err.value.failures]
        assert failed == ["E1", "E2"]

    def test_composite_is_mean(self):
        truths = _synthetic_truths(np.random.default_rng(15))
        bundle = {k: v.copy() for k, v in truths.items()}
        bundle["X1test"] = -truths["X1test"]
        profile = score_submission(truths, bundle, SPACE_CFG)
        assert profile.composite == pytest.approx(np.mean(profile.scores), abs=1e-12)

    def test_deterministic(self):
        truths = _synthetic_truths(np.random.default_rng(16))
        bundle = {k: 0.9 * v for k, v in truths.items()}
        a = score_submission(truths, bundle, SPACE_CFG)
        b = score_submission(truths, bundle, SPACE_CFG)
        assert a.scores == b.scores


class TestRadarExport:
    def test_all_hundred(self):
        payload = radar_export(ScoreProfile(scores=tuple([100.0] * 12), composite=100.0))
        assert payload["axes"] == list(METRIC_NAMES)
        assert payload["raw"] == [100.0] * 12
        assert payload["display"] == [100.0] * 12

    def test_negative_clamped_for_display_only(self):
        scores = [-40.0] + [100.0] * 11
        profile = ScoreProfile(scores=tuple(scores), composite=float(np.mean(scores)))
        payload = radar_export(profile)
        assert payload["raw"][0] == -40.0
        assert payload["display"][0] == 0.0
        assert payload["composite"] == pytest.approx(np.mean(scores))

    def test_overshoot_clamped_high(self):
        scores = [150.0] + [0.0] * 11
        # Scores above 100 cannot come from the metrics, but the display rule
        # still clamps defensively.
        payload = radar_export(ScoreProfile(scores=tuple(scores), composite=12.5))
        assert payload["display"][0] == 100.0

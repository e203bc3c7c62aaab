import numpy as np
import pytest

from dynbench.baselines import BaselineKind, ManifestMismatch, make_baseline
from dynbench.challenge import validate_submission
from dynbench.scoring import score_submission


def _score(pack, bundle):
    return score_submission(pack.private.truths, bundle, pack.private.scoring)


class TestZeros:
    def test_validates_everywhere(self, lorenz_pack, ks_pack):
        for pack in (lorenz_pack, ks_pack):
            bundle = make_baseline(BaselineKind.ZEROS, pack.public.manifest, pack.public.train)
            assert validate_submission(pack.public.manifest, bundle) == []
            assert all(not b.any() for b in bundle.values())

    def test_scores_exactly_zero(self, lorenz_pack, ks_pack):
        # The platform's central calibration: zeros must score 0 on all 12.
        for pack in (lorenz_pack, ks_pack):
            bundle = make_baseline(BaselineKind.ZEROS, pack.public.manifest, pack.public.train)
            profile = _score(pack, bundle)
            assert all(abs(v) < 1e-9 for v in profile.scores)
            assert abs(profile.composite) < 1e-9


class TestPersistence:
    def test_forecasts_repeat_last_column(self, lorenz_pack):
        bundle = make_baseline(
            BaselineKind.PERSISTENCE, lorenz_pack.public.manifest, lorenz_pack.public.train
        )
        last = lorenz_pack.public.train["X1train"][:, -1]
        assert np.array_equal(bundle["X1test"], np.tile(last[:, None], (1, bundle["X1test"].shape[1])))

    def test_denoise_outputs_echo_input(self, lorenz_pack):
        bundle = make_baseline(
            BaselineKind.PERSISTENCE, lorenz_pack.public.manifest, lorenz_pack.public.train
        )
        assert np.array_equal(bundle["X2test"], lorenz_pack.public.train["X2train"])
        assert np.array_equal(bundle["X4test"], lorenz_pack.public.train["X3train"])

    def test_validates(self, lorenz_pack):
        bundle = make_baseline(
            BaselineKind.PERSISTENCE, lorenz_pack.public.manifest, lorenz_pack.public.train
        )
        assert validate_submission(lorenz_pack.public.manifest, bundle) == []

    def test_medium_noise_reconstruction_beats_zeros(self, lorenz_pack):
        bundle = make_baseline(
            BaselineKind.PERSISTENCE, lorenz_pack.public.manifest, lorenz_pack.public.train
        )
        profile = _score(lorenz_pack, bundle)
        assert profile.as_mapping()["E3"] > 0.0


class TestClimatology:
    def test_forecasts_repeat_mean_column(self, lorenz_pack):
        bundle = make_baseline(
            BaselineKind.CLIMATOLOGY, lorenz_pack.public.manifest, lorenz_pack.public.train
        )
        mean = lorenz_pack.public.train["X1train"].mean(axis=1)
        assert np.allclose(bundle["X1test"], mean[:, None])

    def test_short_forecast_beats_zeros_on_lorenz(self, lorenz_pack):
        bundle = make_baseline(
            BaselineKind.CLIMATOLOGY, lorenz_pack.public.manifest, lorenz_pack.public.train
        )
        profile = _score(lorenz_pack, bundle)
        assert profile.as_mapping()["E1"] > 0.0


def test_manifest_mismatch(lorenz_pack):
    train = dict(lorenz_pack.public.train)
    del train["X9train"]
    with pytest.raises(ManifestMismatch):
        make_baseline(BaselineKind.PERSISTENCE, lorenz_pack.public.manifest, train)

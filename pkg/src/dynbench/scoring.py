"""The twelve-metric scorer and its radar-profile export.

Two primitive error measures drive everything:

* relative Frobenius error over a column window — the "weather" measure for
  short-horizon trajectory matching and for denoising reconstructions;
* distance between log power spectra over the terminal window — the
  "climate" measure, comparing long-run statistics once pointwise matching
  is hopeless.

Both are mapped to score points as 100*(1 - error), so a perfect match is
100 and an all-zeros guess is exactly 0.  Scores below zero mean the
submission is worse than guessing zeros; stored scores are never clamped,
clamping happens only in the display payload of :func:`radar_export`.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Mapping

import numpy as np

SPECTRAL_SPACE = "space"
SPECTRAL_TIME = "time"

METRIC_NAMES = ("E1", "E2", "E3", "E4", "E5", "E6", "E7", "E8", "E9", "E10", "E11", "E12")

# Metric -> (submission/truth name, flavor).  "short" windows the first
# k_short columns, "full" spans every column, "long" compares terminal-window
# log power spectra.
METRIC_TABLE = (
    ("E1", "X1test", "short"),
    ("E2", "X1test", "long"),
    ("E3", "X2test", "full"),
    ("E4", "X3test", "long"),
    ("E5", "X4test", "full"),
    ("E6", "X5test", "long"),
    ("E7", "X6test", "short"),
    ("E8", "X6test", "long"),
    ("E9", "X7test", "short"),
    ("E10", "X7test", "long"),
    ("E11", "X8test", "full"),
    ("E12", "X9test", "full"),
)


class ShapeMismatch(ValueError):
    pass


class DegenerateTruth(ValueError):
    """Truth window has zero norm; the relative error is undefined."""


class WindowTooSmall(ValueError):
    pass


class ScoringFailed(RuntimeError):
    """One or more metrics could not be computed."""

    def __init__(self, failures: list[tuple[str, str]]):
        super().__init__("; ".join(f"{name}: {detail}" for name, detail in failures))
        self.failures = failures


@dataclass(frozen=True)
class ScoringConfig:
    k_short: int                 # short-horizon window, in columns
    k_long: int                  # terminal window for spectra, in columns
    k_m: int = 100               # wavenumber half-width kept around zero frequency
    epsilon: float = 1e-12       # floor inside the log spectrum
    spectral_axis: str = SPECTRAL_SPACE
    version: str = "1"

    def __post_init__(self):
        if self.k_short < 1 or self.k_long < 1 or self.k_m < 1:
            raise ValueError("window sizes must be >= 1")
        if not self.epsilon > 0:
            raise ValueError("epsilon must be positive")
        if self.spectral_axis not in (SPECTRAL_SPACE, SPECTRAL_TIME):
            raise ValueError(f"unknown spectral_axis {self.spectral_axis!r}")

    def to_json(self) -> str:
        return json.dumps(
            {
                "version": self.version,
                "k_short": self.k_short,
                "k_long": self.k_long,
                "k_m": self.k_m,
                "epsilon": self.epsilon,
                "spectral_axis": self.spectral_axis,
            },
            indent=2,
            sort_keys=True,
        )

    @classmethod
    def from_json(cls, text: str) -> "ScoringConfig":
        raw = json.loads(text)
        return cls(
            k_short=raw["k_short"],
            k_long=raw["k_long"],
            k_m=raw["k_m"],
            epsilon=raw["epsilon"],
            spectral_axis=raw["spectral_axis"],
            version=str(raw.get("version", "1")),
        )


@dataclass(frozen=True)
class ScoreProfile:
    """Twelve score points plus their arithmetic mean."""

    scores: tuple[float, ...]
    composite: float

    def __post_init__(self):
        if len(self.scores) != len(METRIC_NAMES):
            raise ValueError(f"expected {len(METRIC_NAMES)} scores, got {len(self.scores)}")

    def as_mapping(self) -> dict[str, float]:
        return dict(zip(METRIC_NAMES, self.scores))


def _window(a: np.ndarray, window: tuple[int, int]) -> np.ndarray:
    start, stop = window
    if not (0 <= start < stop <= a.shape[1]):
        raise ValueError(f"window {window} out of bounds for {a.shape[1]} columns")
    return a[:, start:stop]


def relative_frobenius_error(
    truth: np.ndarray, pred: np.ndarray, window: tuple[int, int]
) -> float:
    """||pred - truth|| / ||truth|| over a column window, Frobenius norms."""
    if truth.shape != pred.shape:
        raise ShapeMismatch(f"truth {truth.shape} vs prediction {pred.shape}")
    t = _window(truth, window)
    p = _window(pred, window)
    denom = float(np.linalg.norm(t))
    if denom == 0.0:
        raise DegenerateTruth("truth window is identically zero")
    return float(np.linalg.norm(p - t)) / denom


def log_power_spectrum(
    m: np.ndarray, window: tuple[int, int], cfg: ScoringConfig
) -> np.ndarray:
    """Centered log power spectrum of a column window.

    Space mode transforms each column along the state dimension and keeps the
    2*k_m+1 wavenumbers around zero frequency (zero frequency at index n//2
    after centering).  Time mode, used for low-dimensional systems whose
    state dimension cannot carry a wavenumber window, transforms each state
    row along the window's time axis and keeps the 2*k'+1 central frequency
    bins with k' = min(k_m, window//2 - 1).  The power is floored at epsilon
    so the log is always defined.
    """
    w = _window(m, window)
    if cfg.spectral_axis == SPECTRAL_SPACE:
        n = w.shape[0]
        if n < 2 * cfg.k_m + 1:
            raise WindowTooSmall(f"{n} rows cannot carry a +/-{cfg.k_m} wavenumber window")
        spec = np.fft.fftshift(np.fft.fft(w, axis=0), axes=0)
        power = np.log(np.abs(spec) ** 2 + cfg.epsilon)
        center = n // 2
        return power[center - cfg.k_m : center + cfg.k_m + 1, :]
    wlen = w.shape[1]
    k_eff = min(cfg.k_m, wlen // 2 - 1)
    if k_eff < 1:
        raise WindowTooSmall(f"window of {wlen} columns is too short for a frequency profile")
    spec = np.fft.fftshift(np.fft.fft(w, axis=1), axes=1)
    power = np.log(np.abs(spec) ** 2 + cfg.epsilon)
    center = wlen // 2
    return power[:, center - k_eff : center + k_eff + 1]


def short_time_score(truth: np.ndarray, pred: np.ndarray, cfg: ScoringConfig) -> float:
    """100*(1 - relative error) over the first k_short columns; unclamped."""
    return 100.0 * (1.0 - relative_frobenius_error(truth, pred, (0, cfg.k_short)))


def reconstruction_score(truth: np.ndarray, pred: np.ndarray) -> float:
    """100*(1 - relative error) over every column; used for denoising and
    parametric-regime reconstructions."""
    return 100.0 * (1.0 - relative_frobenius_error(truth, pred, (0, truth.shape[1])))


def long_time_score(truth: np.ndarray, pred: np.ndarray, cfg: ScoringConfig) -> float:
    """100*(1 - spectral distance) over the last k_long columns; unclamped.

    An identically-zero prediction window is scored against a zero spectrum
    rather than the log of the floor, which pins its score at exactly 0.
    """
    if truth.shape != pred.shape:
        raise ShapeMismatch(f"truth {truth.shape} vs prediction {pred.shape}")
    m = truth.shape[1]
    if cfg.k_long > m:
        raise WindowTooSmall(f"k_long={cfg.k_long} exceeds {m} columns")
    window = (m - cfg.k_long, m)
    p_truth = log_power_spectrum(truth, window, cfg)
    if not np.any(_window(pred, window)):
        p_pred = np.zeros_like(p_truth)
    else:
        p_pred = log_power_spectrum(pred, window, cfg)
    denom = float(np.linalg.norm(p_truth))
    if denom == 0.0:
        raise DegenerateTruth("truth spectrum is identically zero")
    return 100.0 * (1.0 - float(np.linalg.norm(p_pred - p_truth)) / denom)


def score_submission(
    sequestered: Mapping[str, np.ndarray],
    bundle: Mapping[str, np.ndarray],
    cfg: ScoringConfig,
) -> ScoreProfile:
    """Score a validated 9-matrix bundle against the withheld truths.

    Pure function: identical inputs always produce bit-identical profiles.
    Raises ScoringFailed listing every metric that could not be computed.
    """
    scores: list[float] = []
    failures: list[tuple[str, str]] = []
    for metric, name, flavor in METRIC_TABLE:
        try:
            truth = sequestered[name]
            pred = bundle[name]
            if flavor == "short":
                scores.append(short_time_score(truth, pred, cfg))
            elif flavor == "full":
                scores.append(reconstruction_score(truth, pred))
            else:
                scores.append(long_time_score(truth, pred, cfg))
        except (KeyError, ValueError) as exc:
            failures.append((metric, f"{type(exc).__name__}: {exc}"))
            scores.append(float("nan"))
    if failures:
        raise ScoringFailed(failures)
    return ScoreProfile(scores=tuple(scores), composite=float(np.mean(scores)))


def radar_export(profile: ScoreProfile) -> dict:
    """Radar-plot payload: raw scores, display scores clamped to [0, 100],
    and the unclamped composite."""
    return {
        "axes": list(METRIC_NAMES),
        "raw": [float(v) for v in profile.scores],
        "display": [float(min(100.0, max(0.0, v))) for v in profile.scores],
        "composite": float(profile.composite),
    }

"""dynbench: benchmark-data generation and sequestered scoring for dynamical systems.

The package covers the full challenge lifecycle: integrate the six reference
systems, cut their trajectories into public training data and withheld truth,
score submitted forecasts/reconstructions on twelve metrics, and serve the
whole thing over HTTP with a persistent leaderboard.
"""

__version__ = "0.1.0"

from .systems import SystemId, default_params, default_grid
from .challenge import generate_pack, load_public, load_private, write_pack, validate_submission
from .scoring import ScoringConfig, ScoreProfile, score_submission, radar_export
from .baselines import BaselineKind, make_baseline

__all__ = [
    "SystemId",
    "default_params",
    "default_grid",
    "generate_pack",
    "load_public",
    "load_private",
    "write_pack",
    "validate_submission",
    "ScoringConfig",
    "ScoreProfile",
    "score_submission",
    "radar_export",
    "BaselineKind",
    "make_baseline",
]

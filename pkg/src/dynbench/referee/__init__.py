"""Sequestered-test-set referee: HTTP service, journaled state, leaderboard."""

from .config import RefereeConfig, load_config
from .state import CorruptJournal, RefereeState
from .app import create_app

__all__ = ["RefereeConfig", "load_config", "RefereeState", "CorruptJournal", "create_app"]

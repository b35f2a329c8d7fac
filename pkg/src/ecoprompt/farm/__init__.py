"""Shared-lake farm game: deterministic engine, market, scripted players."""
from .engine import FarmGame, GameRNG
from .model import FarmConfig, FarmError, GameState
from .policies import PolicySpec, run_policy

__all__ = [
    "FarmConfig",
    "FarmError",
    "FarmGame",
    "GameRNG",
    "GameState",
    "PolicySpec",
    "run_policy",
]

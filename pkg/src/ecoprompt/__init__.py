"""ecoprompt: what does one AI prompt cost the planet?

A small service that turns generative-AI queries into modeled energy,
water, and carbon estimates -- rendered in kid-friendly units (water
drops, CO2 balloons, LED-minutes) -- plus a farm game where AI
conveniences visibly drain the lake everyone shares.
"""
from .budget import ResourceStatus, SessionBudget
from .config import AppConfig, ConfigError, load_config
from .footprint import (
    DatacenterProfile,
    FootprintEstimate,
    ModelProfile,
    QueryUsage,
    RelatableConstants,
    RelatableUnits,
    estimate_footprint,
    to_relatable,
)

__version__ = "0.1.0"

__all__ = [
    "AppConfig",
    "ConfigError",
    "DatacenterProfile",
    "FootprintEstimate",
    "ModelProfile",
    "QueryUsage",
    "RelatableConstants",
    "RelatableUnits",
    "ResourceStatus",
    "SessionBudget",
    "estimate_footprint",
    "load_config",
    "to_relatable",
    "__version__",
]

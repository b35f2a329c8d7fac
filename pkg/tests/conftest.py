from __future__ import annotations

import pytest

from ecoprompt.config import load_config
from ecoprompt.farm.model import FarmConfig


@pytest.fixture(scope="session")
def config():
    return load_config()


@pytest.fixture(scope="session")
def farm_config(config):
    return FarmConfig.from_dict(config.farm)

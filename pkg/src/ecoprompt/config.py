"""Configuration loading.

A single JSON file configures the whole service: model power profile,
datacenter multipliers, relatable-unit constants, budget thresholds,
provider settings, and every farm-game tuning knob.  Ships with a default;
a user file (``--config``) is deep-merged over it, so partial overrides
like ``{"datacenter": {"pue": 1.4}}`` work without restating everything.
"""
from __future__ import annotations

import copy
import json
from dataclasses import dataclass
from importlib import resources
from pathlib import Path
from typing import Any

from .footprint import DatacenterProfile, ModelProfile, RelatableConstants


class ConfigError(ValueError):
    """Unusable configuration: missing file, bad JSON, or invalid values."""


def _load_default_dict() -> dict:
    text = (
        resources.files("ecoprompt").joinpath("data/default_config.json").read_text()
    )
    return json.loads(text)


def _deep_merge(base: dict, override: dict) -> dict:
    out = copy.deepcopy(base)
    for key, value in override.items():
        if isinstance(value, dict) and isinstance(out.get(key), dict):
            out[key] = _deep_merge(out[key], value)
        else:
            out[key] = copy.deepcopy(value)
    return out


@dataclass(frozen=True)
class LiveProviderConfig:
    base_url: str
    model: str
    key_env: str
    timeout_s: float


@dataclass(frozen=True)
class ProviderConfig:
    default_mode: str
    mock_seed: int
    live: LiveProviderConfig

    def __post_init__(self) -> None:
        if self.default_mode not in ("mock", "live"):
            raise ConfigError("provider.default_mode must be 'mock' or 'live'")


@dataclass(frozen=True)
class ServiceConfig:
    ui_origin: str
    snapshot_every: int

    def __post_init__(self) -> None:
        if self.snapshot_every < 1:
            raise ConfigError("service.snapshot_every must be >= 1")


@dataclass(frozen=True)
class AppConfig:
    """Validated, typed view of the merged configuration."""

    model_profile: ModelProfile
    datacenter: DatacenterProfile
    relatable_constants: RelatableConstants
    approaching_threshold: float
    provider: ProviderConfig
    service: ServiceConfig
    farm: dict[str, Any]
    raw: dict[str, Any]

    def __post_init__(self) -> None:
        if not 0.0 < self.approaching_threshold <= 1.0:
            raise ConfigError("budget.approaching_threshold must be in (0, 1]")


def _build(raw: dict) -> AppConfig:
    try:
        mp = raw["model_profile"]
        dc = raw["datacenter"]
        rc = raw["relatable_constants"]
        prov = raw["provider"]
        svc = raw["service"]
        farm = raw["farm"]
        return AppConfig(
            model_profile=ModelProfile(
                name=str(mp["name"]),
                ttft_s=float(mp["ttft_s"]),
                gen_speed_tps=float(mp["gen_speed_tps"]),
                gpu_power_w=float(mp["gpu_power_w"]),
                gpu_utilization=float(mp["gpu_utilization"]),
                nongpu_power_w=float(mp["nongpu_power_w"]),
            ),
            datacenter=DatacenterProfile(
                name=str(dc["name"]),
                pue=float(dc["pue"]),
                wue_l_per_kwh=float(dc["wue_l_per_kwh"]),
                cif_g_per_kwh=float(dc["cif_g_per_kwh"]),
            ),
            relatable_constants=RelatableConstants(
                drop_volume_ml=float(rc["drop_volume_ml"]),
                balloon_mass_g=float(rc["balloon_mass_g"]),
                led_power_w=float(rc["led_power_w"]),
            ),
            approaching_threshold=float(raw["budget"]["approaching_threshold"]),
            provider=ProviderConfig(
                default_mode=str(prov["default_mode"]),
                mock_seed=int(prov["mock_seed"]),
                live=LiveProviderConfig(
                    base_url=str(prov["live"]["base_url"]),
                    model=str(prov["live"]["model"]),
                    key_env=str(prov["live"]["key_env"]),
                    timeout_s=float(prov["live"]["timeout_s"]),
                ),
            ),
            service=ServiceConfig(
                ui_origin=str(svc["ui_origin"]),
                snapshot_every=int(svc["snapshot_every"]),
            ),
            farm=farm,
            raw=raw,
        )
    except ConfigError:
        raise
    except (KeyError, TypeError, ValueError) as exc:
        raise ConfigError(f"invalid configuration: {exc}") from exc


def load_config(path: str | Path | None = None) -> AppConfig:
    """Load defaults, overlay the optional user file, validate, return.

    Raises ConfigError for a missing file, invalid JSON, a non-object
    top level, or out-of-range values.
    """
    raw = _load_default_dict()
    if path is not None:
        p = Path(path)
        if not p.is_file():
            raise ConfigError(f"config file not found: {p}")
        try:
            user = json.loads(p.read_text())
        except json.JSONDecodeError as exc:
            raise ConfigError(f"config file is not valid JSON: {exc}") from exc
        if not isinstance(user, dict):
            raise ConfigError("config file must contain a JSON object")
        raw = _deep_merge(raw, user)
    return _build(raw)

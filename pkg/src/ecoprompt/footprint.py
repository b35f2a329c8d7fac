"""Per-query environmental footprint model.

Stateless math that turns one generative-AI query into modeled estimates of
energy (Wh), water (mL), and carbon (gCO2e), plus the child-friendly
"relatable units" rendering (water drops, CO2 balloons, LED-minutes).

Model in one line:

    energy_wh = (gpu_power_w * gpu_utilization + nongpu_power_w)
                * latency_s / 3600 * pue
    water_ml  = energy_wh * wue_l_per_kwh      (L/kWh == mL/Wh)
    carbon_g  = energy_wh * cif_g_per_kwh / 1000

Latency is either measured (passed through) or estimated as
ttft_s + output_tokens / gen_speed_tps.

Everything here is a modeled estimate, not a measurement; outputs carry
that label so UIs can surface it.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import ClassVar

SECONDS_PER_HOUR = 3600.0

ESTIMATE_LABEL = "modeled estimate"


@dataclass(frozen=True)
class ModelProfile:
    """Runtime and power characteristics of one serving deployment."""

    name: str
    ttft_s: float
    gen_speed_tps: float
    gpu_power_w: float
    gpu_utilization: float
    nongpu_power_w: float

    def __post_init__(self) -> None:
        if self.ttft_s < 0:
            raise ValueError("ttft_s must be >= 0")
        if self.gen_speed_tps <= 0:
            raise ValueError("gen_speed_tps must be > 0")
        if self.gpu_power_w < 0 or self.nongpu_power_w < 0:
            raise ValueError("power draws must be >= 0")
        if not 0.0 <= self.gpu_utilization <= 1.0:
            raise ValueError("gpu_utilization must be in [0, 1]")

    @property
    def effective_power_w(self) -> float:
        return self.gpu_power_w * self.gpu_utilization + self.nongpu_power_w


@dataclass(frozen=True)
class DatacenterProfile:
    """Facility-level multipliers: PUE, WUE (L/kWh), CIF (gCO2e/kWh)."""

    name: str
    pue: float
    wue_l_per_kwh: float
    cif_g_per_kwh: float

    def __post_init__(self) -> None:
        if self.pue < 1.0:
            raise ValueError("pue must be >= 1.0")
        if self.wue_l_per_kwh < 0:
            raise ValueError("wue_l_per_kwh must be >= 0")
        if self.cif_g_per_kwh < 0:
            raise ValueError("cif_g_per_kwh must be >= 0")


@dataclass(frozen=True)
class QueryUsage:
    """Token counts for one query; a measured latency overrides estimation."""

    input_tokens: int
    output_tokens: int
    measured_latency_s: float | None = None

    def __post_init__(self) -> None:
        if self.input_tokens < 0 or self.output_tokens < 0:
            raise ValueError("token counts must be >= 0")
        if self.measured_latency_s is not None and self.measured_latency_s <= 0:
            raise ValueError("measured_latency_s must be > 0 when present")


@dataclass(frozen=True)
class FootprintEstimate:
    """One query's modeled energy, water, and carbon cost."""

    energy_wh: float
    water_ml: float
    carbon_g: float
    latency_s: float

    label: ClassVar[str] = ESTIMATE_LABEL

    @classmethod
    def zero(cls) -> "FootprintEstimate":
        return cls(0.0, 0.0, 0.0, 0.0)

    def add(self, other: "FootprintEstimate") -> "FootprintEstimate":
        return FootprintEstimate(
            energy_wh=self.energy_wh + other.energy_wh,
            water_ml=self.water_ml + other.water_ml,
            carbon_g=self.carbon_g + other.carbon_g,
            latency_s=self.latency_s + other.latency_s,
        )

    def to_dict(self) -> dict:
        return {
            "energy_wh": self.energy_wh,
            "water_ml": self.water_ml,
            "carbon_g": self.carbon_g,
            "latency_s": self.latency_s,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "FootprintEstimate":
        return cls(
            energy_wh=float(d["energy_wh"]),
            water_ml=float(d["water_ml"]),
            carbon_g=float(d["carbon_g"]),
            latency_s=float(d["latency_s"]),
        )


@dataclass(frozen=True)
class RelatableConstants:
    """Conversion constants for the child-friendly units."""

    drop_volume_ml: float = 0.25
    balloon_mass_g: float = 25.0
    led_power_w: float = 10.0

    def __post_init__(self) -> None:
        if min(self.drop_volume_ml, self.balloon_mass_g, self.led_power_w) <= 0:
            raise ValueError("relatable constants must be > 0")


def _drops_display(drops: float) -> str:
    # Nearest integer; "~" marks sub-1.5 values as approximate (an exact
    # zero stays a plain "0 drops").
    whole = int(round(drops))
    noun = "drop" if whole == 1 else "drops"
    if 0 < drops < 1.5:
        return f"~{whole} {noun}"
    return f"{whole} {noun}"


@dataclass(frozen=True)
class RelatableUnits:
    """Footprint rendered as water drops, CO2 balloons, and LED-minutes.

    Display rounding: drops to the nearest integer ("~" prefix below 1.5),
    balloons to 2 decimals, LED-minutes to 1 decimal.
    """

    water_drops: float
    co2_balloons: float
    led_minutes: float

    @property
    def water_display(self) -> str:
        return _drops_display(self.water_drops)

    @property
    def carbon_display(self) -> str:
        return f"{self.co2_balloons:.2f} balloons"

    @property
    def energy_display(self) -> str:
        return f"{self.led_minutes:.1f} minutes"

    def summary(self) -> str:
        return (
            f"{self.water_display} of water, {self.carbon_display} of CO2, "
            f"and powering an LED for {self.energy_display}"
        )

    def to_dict(self) -> dict:
        return {
            "water_drops": self.water_drops,
            "co2_balloons": self.co2_balloons,
            "led_minutes": self.led_minutes,
            "water_display": self.water_display,
            "carbon_display": self.carbon_display,
            "energy_display": self.energy_display,
            "summary": self.summary(),
        }


def estimate_latency(profile: ModelProfile, usage: QueryUsage) -> float:
    """Seconds one query occupies the serving hardware.

    A measured latency wins; otherwise time-to-first-token plus decode time.
    """
    if usage.measured_latency_s is not None:
        return usage.measured_latency_s
    return profile.ttft_s + usage.output_tokens / profile.gen_speed_tps


def estimate_energy(
    profile: ModelProfile, dc: DatacenterProfile, latency_s: float
) -> float:
    """Watt-hours drawn for `latency_s` seconds, including facility overhead."""
    if latency_s < 0:
        raise ValueError("latency_s must be >= 0")
    return profile.effective_power_w * latency_s / SECONDS_PER_HOUR * dc.pue


def energy_to_water(dc: DatacenterProfile, energy_wh: float) -> float:
    """Milliliters of water for `energy_wh` (WUE in L/kWh equals mL/Wh)."""
    if energy_wh < 0:
        raise ValueError("energy_wh must be >= 0")
    return energy_wh * dc.wue_l_per_kwh


def energy_to_carbon(dc: DatacenterProfile, energy_wh: float) -> float:
    """Grams CO2e for `energy_wh` at the grid's carbon intensity."""
    if energy_wh < 0:
        raise ValueError("energy_wh must be >= 0")
    return energy_wh * dc.cif_g_per_kwh / 1000.0


def estimate_footprint(
    profile: ModelProfile, dc: DatacenterProfile, usage: QueryUsage
) -> FootprintEstimate:
    """Full pipeline: latency -> energy -> water + carbon."""
    latency_s = estimate_latency(profile, usage)
    energy_wh = estimate_energy(profile, dc, latency_s)
    return FootprintEstimate(
        energy_wh=energy_wh,
        water_ml=energy_to_water(dc, energy_wh),
        carbon_g=energy_to_carbon(dc, energy_wh),
        latency_s=latency_s,
    )


def to_relatable(
    fp: FootprintEstimate, constants: RelatableConstants
) -> RelatableUnits:
    """Convert physical quantities to the child-friendly units."""
    return RelatableUnits(
        water_drops=fp.water_ml / constants.drop_volume_ml,
        co2_balloons=fp.carbon_g / constants.balloon_mass_g,
        led_minutes=fp.energy_wh / constants.led_power_w * 60.0,
    )

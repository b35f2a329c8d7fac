"""Farm game data model: tuning config, tiles, and full game state.

Everything that can change during play is kept as integers (or strings /
bools) so that replaying the same action log always reproduces the exact
same state, bit for bit, on any platform.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

SEASONS_DEFAULT = ("spring", "summer", "fall", "winter")

OUTCOME_WON = "won"
OUTCOME_LOST = "lost"


class FarmError(Exception):
    """Rule violation for a game action; `code` is a stable identifier."""

    def __init__(self, code: str, message: str):
        super().__init__(message)
        self.code = code
        self.message = message


@dataclass(frozen=True)
class CropSpec:
    name: str
    seasons: tuple[str, ...]
    growth_ticks: int
    yield_units: int
    xp: int
    base_price: int


@dataclass(frozen=True)
class PestConfig:
    spawn_permyriad: int  # spawn chance per tick, in 1/10000
    max_active: int
    required_hits_by_level: dict[int, int]
    max_hit_rate_hz: float
    minigame_window_s: float
    damage_after_ticks: int
    pesticide_recipe: dict[str, int]


@dataclass(frozen=True)
class BirdConfig:
    spawn_permyriad: int
    yield_penalty: float


@dataclass(frozen=True)
class MarketConfig:
    week_length_ticks: int
    elasticity: float
    max_price: int
    base_demand: dict[str, int]


@dataclass(frozen=True)
class FarmConfig:
    """All tuning knobs for one game, parsed from the `farm` config block."""

    grid_size: int
    obstructed_tiles_min: int
    obstructed_tiles_max: int
    season_names: tuple[str, ...]
    season_length_ticks: int
    initial_lake_health: int
    drain_interval_ticks: int
    drain_bag: tuple[int, ...]
    initial_seeds: int
    seed_return_on_harvest: int
    watered_duration_ticks: int
    xp_thresholds: tuple[int, ...]
    win_xp: int
    ai_costs: dict[str, int]
    crops: dict[str, CropSpec]
    pests: PestConfig
    birds: BirdConfig
    market: MarketConfig

    @classmethod
    def from_dict(cls, d: dict[str, Any]) -> "FarmConfig":
        crops = {
            name: CropSpec(
                name=name,
                seasons=tuple(spec["seasons"]),
                growth_ticks=int(spec["growth_ticks"]),
                yield_units=int(spec["yield_units"]),
                xp=int(spec["xp"]),
                base_price=int(spec["base_price"]),
            )
            for name, spec in d["crops"].items()
        }
        pests = d["pests"]
        birds = d["birds"]
        market = d["market"]
        return cls(
            grid_size=int(d["grid_size"]),
            obstructed_tiles_min=int(d["obstructed_tiles_min"]),
            obstructed_tiles_max=int(d["obstructed_tiles_max"]),
            season_names=tuple(d["season_names"]),
            season_length_ticks=int(d["season_length_ticks"]),
            initial_lake_health=int(d["initial_lake_health"]),
            drain_interval_ticks=int(d["drain_interval_ticks"]),
            drain_bag=tuple(int(x) for x in d["drain_bag"]),
            initial_seeds=int(d["initial_seeds"]),
            seed_return_on_harvest=int(d["seed_return_on_harvest"]),
            watered_duration_ticks=int(d["watered_duration_ticks"]),
            xp_thresholds=tuple(int(x) for x in d["xp_thresholds"]),
            win_xp=int(d["win_xp"]),
            ai_costs={k: int(v) for k, v in d["ai_costs"].items()},
            crops=crops,
            pests=PestConfig(
                spawn_permyriad=int(round(float(pests["spawn_chance"]) * 10000)),
                max_active=int(pests["max_active"]),
                required_hits_by_level={
                    int(k): int(v) for k, v in pests["required_hits_by_level"].items()
                },
                max_hit_rate_hz=float(pests["max_hit_rate_hz"]),
                minigame_window_s=float(pests["minigame_window_s"]),
                damage_after_ticks=int(pests["damage_after_ticks"]),
                pesticide_recipe={
                    k: int(v) for k, v in pests["pesticide_recipe"].items()
                },
            ),
            birds=BirdConfig(
                spawn_permyriad=int(round(float(birds["spawn_chance"]) * 10000)),
                yield_penalty=float(birds["yield_penalty"]),
            ),
            market=MarketConfig(
                week_length_ticks=int(market["week_length_ticks"]),
                elasticity=float(market["elasticity"]),
                max_price=int(market["max_price"]),
                base_demand={k: int(v) for k, v in market["base_demand"].items()},
            ),
        )

    def season_at(self, tick: int) -> str:
        index = (tick // self.season_length_ticks) % len(self.season_names)
        return self.season_names[index]

    def level_for_xp(self, xp: int) -> int:
        return 1 + sum(1 for t in self.xp_thresholds if xp >= t)

    @property
    def max_level(self) -> int:
        return 1 + len(self.xp_thresholds)


@dataclass
class Tile:
    row: int
    col: int
    obstructed: bool = False
    crop: str | None = None
    planted_tick: int = 0
    progress: int = 0
    watered_until: int = 0
    pest_damaged: bool = False

    def growth_stage(self, config: FarmConfig) -> str | None:
        """Coarse label for the UI: seedling -> growing -> mature."""
        if not self.crop:
            return None
        growth = config.crops[self.crop].growth_ticks
        if self.progress >= growth:
            return "mature"
        if self.progress * 2 >= growth:
            return "growing"
        return "seedling"

    def to_dict(self, config: FarmConfig) -> dict:
        return {
            "row": self.row,
            "col": self.col,
            "obstructed": self.obstructed,
            "crop": self.crop,
            "planted_tick": self.planted_tick,
            "progress": self.progress,
            "growth_stage": self.growth_stage(config),
            "watered_until": self.watered_until,
            "pest_damaged": self.pest_damaged,
        }


@dataclass
class Pest:
    row: int
    col: int
    since_tick: int

    def to_dict(self) -> dict:
        return {"row": self.row, "col": self.col, "since_tick": self.since_tick}


@dataclass
class Bird:
    since_tick: int

    def to_dict(self) -> dict:
        return {"since_tick": self.since_tick}


@dataclass
class MarketWeek:
    week_index: int
    opened_tick: int
    closes_at_tick: int
    reference_prices: dict[str, int]
    player_prices: dict[str, int]

    def to_dict(self) -> dict:
        return {
            "week_index": self.week_index,
            "opened_tick": self.opened_tick,
            "closes_at_tick": self.closes_at_tick,
            "reference_prices": dict(self.reference_prices),
            "player_prices": dict(self.player_prices),
        }


@dataclass
class GameState:
    """Mutable, integer-valued state of one game."""

    seed: int
    tick: int = 0
    lake_health: int = 100
    community_drained: int = 0
    ai_spent: int = 0
    xp: int = 0
    level: int = 1
    coins: int = 0
    seeds: dict[str, int] = field(default_factory=dict)
    produce: dict[str, int] = field(default_factory=dict)
    tiles: dict[tuple[int, int], Tile] = field(default_factory=dict)
    pest: Pest | None = None
    bird: Bird | None = None
    scarecrow_active: bool = False
    scarecrow_ref: str | None = None
    market_week: MarketWeek | None = None
    weeks_opened: int = 0
    week_sales: dict[str, dict] = field(default_factory=dict)
    last_week_report: dict[str, dict] | None = None
    ai_action_counts: dict[str, int] = field(default_factory=dict)
    game_over: bool = False
    outcome: str | None = None
    status_log: list[str] = field(default_factory=list)

    def to_dict(self, config: FarmConfig) -> dict:
        return {
            "seed": self.seed,
            "tick": self.tick,
            "season": config.season_at(self.tick),
            "lake_health": self.lake_health,
            "community_drained": self.community_drained,
            "ai_spent": self.ai_spent,
            "xp": self.xp,
            "level": self.level,
            "coins": self.coins,
            "seeds": dict(self.seeds),
            "produce": dict(self.produce),
            "tiles": [t.to_dict(config) for _, t in sorted(self.tiles.items())],
            "pest": self.pest.to_dict() if self.pest else None,
            "bird": self.bird.to_dict() if self.bird else None,
            "scarecrow_active": self.scarecrow_active,
            "scarecrow_ref": self.scarecrow_ref,
            "market_week": self.market_week.to_dict() if self.market_week else None,
            "week_sales": {k: dict(v) for k, v in self.week_sales.items()},
            "last_week_report": (
                {k: dict(v) for k, v in self.last_week_report.items()}
                if self.last_week_report is not None
                else None
            ),
            "ai_action_counts": dict(self.ai_action_counts),
            "game_over": self.game_over,
            "outcome": self.outcome,
            "status_log": list(self.status_log),
        }

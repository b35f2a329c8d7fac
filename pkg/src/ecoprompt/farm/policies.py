"""Scripted players for headless simulation.

Three play styles over the same competent farming routine (clear pests,
harvest when ripe, keep the chosen number of plots planted and watered,
trade at the market once it unlocks):

    never_ai     manual everything; AI helpers untouched
    always_ai    leans on every AI helper at every opportunity
    threshold:K  uses AI helpers only while the lake is above K

The farming routine is deliberately deterministic so that differences
between runs come from the game's seed and the AI-usage style, nothing
else.
"""
from __future__ import annotations

from dataclasses import dataclass

from .engine import FarmGame
from .model import FarmConfig

# How many plots each play style keeps planted at a given level.
_PLOTS_BY_LEVEL = {1: 1, 2: 2, 3: 2, 4: 3, 5: 3}

_FARMHAND_QUESTION = "Any tips for today?"
_FARMHAND_CANNED_ANSWER = "Keep your crops watered and harvest on time."

DEFAULT_MAX_TICKS = 400


@dataclass(frozen=True)
class PolicySpec:
    kind: str  # "never_ai" | "always_ai" | "threshold"
    threshold: int = 0

    @classmethod
    def parse(cls, text: str) -> "PolicySpec":
        if text == "never_ai":
            return cls("never_ai")
        if text == "always_ai":
            return cls("always_ai")
        if text.startswith("threshold:"):
            try:
                value = int(text.split(":", 1)[1])
            except ValueError:
                raise ValueError(f"bad threshold policy: {text!r}")
            if value < 0:
                raise ValueError("threshold must be >= 0")
            return cls("threshold", value)
        raise ValueError(
            f"unknown policy {text!r}; expected never_ai, always_ai, "
            "or threshold:<lake-level>"
        )

    def __str__(self) -> str:
        if self.kind == "threshold":
            return f"threshold:{self.threshold}"
        return self.kind

    def allows_ai(self, lake_health: int) -> bool:
        if self.kind == "never_ai":
            return False
        if self.kind == "always_ai":
            return True
        return lake_health > self.threshold


def _pick_crop(config: FarmConfig, game: FarmGame):
    """Highest-xp in-season crop we hold a seed for; config order breaks ties."""
    season = config.season_at(game.state.tick)
    best = None
    for name, spec in config.crops.items():
        if season in spec.seasons and game.state.seeds.get(name, 0) > 0:
            if best is None or spec.xp > best.xp:
                best = spec
    return best


class PolicyRunner:
    """Drives one game to completion with a fixed play style."""

    def __init__(
        self,
        config: FarmConfig,
        seed: int,
        policy: PolicySpec,
        max_ticks: int = DEFAULT_MAX_TICKS,
    ):
        self.config = config
        self.policy = policy
        self.max_ticks = max_ticks
        self.game = FarmGame(config, seed)
        self.level_history: list[dict] = []
        self.rows: list[dict] = []
        self._suggested_week = -1

    def _apply(self, action: dict) -> list[dict]:
        events = self.game.apply(action)
        for ev in events:
            if ev["kind"] == "level_up":
                self.level_history.append(
                    {
                        "level": ev["level"],
                        "tick": self.game.state.tick,
                        "lake_health": self.game.state.lake_health,
                    }
                )
        return events

    def _capture(self) -> None:
        s = self.game.state
        row = {
            "tick": s.tick,
            "lake_health": s.lake_health,
            "coins": s.coins,
            "xp": s.xp,
            "level": s.level,
        }
        if self.rows and self.rows[-1]["tick"] == s.tick:
            self.rows[-1] = row
        else:
            self.rows.append(row)

    # -- one round of decisions at the current tick -----------------------

    def _handle_pest(self) -> None:
        s = self.game.state
        if s.pest is None or s.level < 3:
            return
        if self.policy.allows_ai(s.lake_health):
            self._apply({"type": "ai_pest_control", "ack_warning": True})
        else:
            required = self.config.pests.required_hits_by_level.get(s.level, 9)
            self._apply(
                {
                    "type": "resolve_pest_minigame",
                    "payload": {"hits": required},
                }
            )

    def _handle_bird(self) -> None:
        s = self.game.state
        if s.level < 4 or s.bird is None or s.scarecrow_active:
            return
        if self.policy.allows_ai(s.lake_health):
            self._apply({"type": "ai_scarecrow", "ack_warning": True})
        else:
            self._apply(
                {
                    "type": "place_scarecrow",
                    "payload": {"drawing_ref": "drawings/scarecrow.png"},
                }
            )

    def _harvest_ripe(self) -> None:
        s = self.game.state
        for coords in sorted(s.tiles):
            if s.game_over:
                return
            tile = s.tiles[coords]
            if not tile.crop:
                continue
            if s.pest and (s.pest.row, s.pest.col) == coords:
                continue
            if tile.progress >= self.config.crops[tile.crop].growth_ticks:
                self._apply(
                    {"type": "harvest", "payload": {"row": tile.row, "col": tile.col}}
                )

    def _plant_free_plots(self) -> None:
        s = self.game.state
        want = _PLOTS_BY_LEVEL.get(s.level, 3)
        planted = sum(1 for t in s.tiles.values() if t.crop)
        for coords in sorted(s.tiles):
            if planted >= want:
                return
            tile = s.tiles[coords]
            if tile.obstructed or tile.crop:
                continue
            crop = _pick_crop(self.config, self.game)
            if crop is None:
                return
            self._apply(
                {
                    "type": "plant",
                    "payload": {"row": tile.row, "col": tile.col, "crop": crop.name},
                }
            )
            planted += 1

    def _water_dry_plots(self) -> None:
        s = self.game.state
        for coords in sorted(s.tiles):
            tile = s.tiles[coords]
            if tile.crop and tile.watered_until <= s.tick:
                self._apply(
                    {"type": "water", "payload": {"row": tile.row, "col": tile.col}}
                )

    def _chat_with_farmhand(self) -> None:
        s = self.game.state
        if s.level >= 2 and self.policy.allows_ai(s.lake_health):
            self._apply(
                {
                    "type": "farmhand_chat",
                    "ack_warning": True,
                    "payload": {
                        "question": _FARMHAND_QUESTION,
                        "answer": _FARMHAND_CANNED_ANSWER,
                    },
                }
            )

    def _trade(self) -> None:
        s = self.game.state
        if s.level < 5 or s.game_over:
            return
        have_stock = [c for c, n in sorted(s.produce.items()) if n > 0]
        if s.market_week is None:
            if not have_stock:
                return
            self._apply({"type": "open_market_week"})
        s = self.game.state
        week = s.market_week
        if week is None:
            return
        if (
            have_stock
            and self.policy.allows_ai(s.lake_health)
            and self._suggested_week != week.week_index
        ):
            crop = max(have_stock, key=lambda c: s.produce[c])
            self._suggested_week = week.week_index
            events = self._apply(
                {
                    "type": "ai_price_suggestion",
                    "ack_warning": True,
                    "payload": {"crop": crop},
                }
            )
            suggested = next(
                (ev["price"] for ev in events if ev["kind"] == "price_suggested"),
                None,
            )
            if suggested is not None and not s.game_over:
                self._apply(
                    {
                        "type": "set_price",
                        "payload": {"crop": crop, "price": suggested},
                    }
                )
        if have_stock and not s.game_over:
            self._apply({"type": "sell"})

    def run(self) -> dict:
        game = self.game
        self._capture()
        while not game.state.game_over and game.state.tick < self.max_ticks:
            self._handle_pest()
            if not game.state.game_over:
                self._handle_bird()
            if not game.state.game_over:
                self._harvest_ripe()
            if not game.state.game_over:
                self._plant_free_plots()
            if not game.state.game_over:
                self._water_dry_plots()
            if not game.state.game_over:
                self._chat_with_farmhand()
            if not game.state.game_over:
                self._trade()
            if not game.state.game_over:
                self._apply({"type": "tick"})
            self._capture()
        s = game.state
        return {
            "seed": s.seed,
            "policy": str(self.policy),
            "outcome": s.outcome,
            "ticks": s.tick,
            "lake_health": s.lake_health,
            "xp": s.xp,
            "level": s.level,
            "coins": s.coins,
            "community_drained": s.community_drained,
            "ai_spent": s.ai_spent,
            "level_history": list(self.level_history),
        }


def run_policy(
    config: FarmConfig,
    seed: int,
    policy: PolicySpec,
    max_ticks: int = DEFAULT_MAX_TICKS,
) -> tuple[dict, list[dict]]:
    """Run one full game; returns (summary, per-tick rows)."""
    runner = PolicyRunner(config, seed, policy, max_ticks)
    summary = runner.run()
    return summary, runner.rows

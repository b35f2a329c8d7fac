"""Farm game engine: validated actions over deterministic state.

Determinism contract: a game is fully described by its seed plus the
ordered list of successfully applied actions.  Randomness (obstructed
tiles, community lake drains, pest and bird spawns) comes from one seeded
RNG whose draws happen at fixed points -- game setup and the tick handler
-- so replaying the same action list reproduces identical state.

Community lake drains use a shuffled-bag randomizer: the bag holds one
copy of each drain size and is reshuffled only when empty.  Draw sums are
therefore tightly bounded (every full bag drains the same total), which
keeps early-game lake levels predictable without making draws constant.

AI helper actions (farm hand chat, pest control, scarecrow art, price
suggestions) cost lake water and must arrive with `ack_warning` set,
proving the player saw the cost warning.  Provider calls happen outside
the engine; the farm hand's answer arrives in the action payload, so
replay never needs the network.
"""
from __future__ import annotations

import copy
import random
from typing import Any

from .market import demand_at_price, open_week, suggest_price
from .model import (
    OUTCOME_LOST,
    OUTCOME_WON,
    Bird,
    FarmConfig,
    FarmError,
    GameState,
    Pest,
    Tile,
)

# Minimum level at which each action unlocks.
_FEATURE_LEVEL = {
    "farmhand_chat": 2,
    "start_pest_minigame": 3,
    "resolve_pest_minigame": 3,
    "craft_pesticide": 3,
    "ai_pest_control": 3,
    "place_scarecrow": 4,
    "ai_scarecrow": 4,
    "open_market_week": 5,
    "set_price": 5,
    "sell": 5,
    "ai_price_suggestion": 5,
}

# AI-powered actions and the ai_costs key that prices them.
_AI_COST_KEY = {
    "farmhand_chat": "farmhand_chat",
    "ai_pest_control": "pest_control",
    "ai_scarecrow": "scarecrow_image",
    "ai_price_suggestion": "price_suggestion",
}

_AI_LABEL = {
    "farmhand_chat": "AI farm hand",
    "ai_pest_control": "AI pest control",
    "ai_scarecrow": "AI scarecrow artist",
    "ai_price_suggestion": "AI market advisor",
}

# Reference image shipped with the UI, used when the scarecrow is AI-drawn.
_AI_SCARECROW_REF = "builtin:scarecrow"


class GameRNG:
    """Thin seeded-RNG wrapper so every draw goes through one place."""

    def __init__(self, seed: int):
        self._rng = random.Random(seed)

    def shuffle(self, items: list) -> None:
        self._rng.shuffle(items)

    def randrange(self, n: int) -> int:
        return self._rng.randrange(n)

    def sample(self, population: list, k: int) -> list:
        return self._rng.sample(population, k)


class FarmGame:
    """One playable game: seed + config in, validated actions through."""

    def __init__(self, config: FarmConfig, seed: int):
        self.config = config
        self.rng = GameRNG(seed)
        self.actions: list[dict] = []
        self._bag: list[int] = []
        self.state = self._new_state(seed)

    def _new_state(self, seed: int) -> GameState:
        cfg = self.config
        n = cfg.grid_size
        tiles = {(r, c): Tile(row=r, col=c) for r in range(n) for c in range(n)}
        count = cfg.obstructed_tiles_min + self.rng.randrange(
            cfg.obstructed_tiles_max - cfg.obstructed_tiles_min + 1
        )
        coords = [(r, c) for r in range(n) for c in range(n)]
        for r, c in self.rng.sample(coords, count):
            tiles[(r, c)].obstructed = True
        return GameState(
            seed=seed,
            lake_health=cfg.initial_lake_health,
            seeds={name: cfg.initial_seeds for name in cfg.crops},
            produce={name: 0 for name in cfg.crops},
            tiles=tiles,
            status_log=[
                "Welcome to your farm! Plant seeds, water them, and harvest "
                "crops to earn XP.",
                "The community lake is shared with every farm around. AI "
                "helpers drink from it, so keep an eye on its level.",
            ],
        )

    # -- persistence ----------------------------------------------------

    def snapshot(self) -> dict:
        return {"seed": self.state.seed, "actions": copy.deepcopy(self.actions)}

    @classmethod
    def replay(cls, config: FarmConfig, snapshot: dict) -> "FarmGame":
        game = cls(config, int(snapshot["seed"]))
        for action in snapshot["actions"]:
            game.apply(action)
        return game

    def state_dict(self) -> dict:
        return self.state.to_dict(self.config)

    # -- read-only helpers (no log entry, no state change) ---------------

    def almanac(self, topic: str | None = None) -> dict:
        """Look up a season or crop in the Farmer's Almanac.

        Pure read, zero lake cost.  Unlocks at level 2; unknown or missing
        topics return the index of things the almanac knows about.
        """
        if self.state.level < 2:
            raise FarmError(
                "feature_locked", "the Farmer's Almanac unlocks at level 2"
            )
        cfg = self.config
        season = cfg.season_at(self.state.tick)
        key = topic.strip().lower() if isinstance(topic, str) else ""
        if key in cfg.season_names:
            crops = sorted(
                name for name, spec in cfg.crops.items() if key in spec.seasons
            )
            return {
                "topic": key,
                "kind": "season",
                "current_season": season,
                "in_season_crops": crops,
                "hint": f"In {key} you can plant: {', '.join(crops)}.",
            }
        if key in cfg.crops:
            spec = cfg.crops[key]
            return {
                "topic": key,
                "kind": "crop",
                "current_season": season,
                "seasons": list(spec.seasons),
                "growth_ticks": spec.growth_ticks,
                "yield_units": spec.yield_units,
                "xp": spec.xp,
                "base_price": spec.base_price,
                "in_season": season in spec.seasons,
                "hint": (
                    f"{spec.name} grows in {', '.join(spec.seasons)} and "
                    f"matures after {spec.growth_ticks} watered ticks."
                ),
            }
        topics = sorted(cfg.season_names) + sorted(cfg.crops)
        return {
            "topic": key or None,
            "kind": "index",
            "current_season": season,
            "topics": topics,
            "hint": "Ask the almanac about a season or a crop: "
            + ", ".join(topics)
            + ".",
        }

    def score(self) -> dict:
        """Scoreboard summary: progress, lake, and AI use by kind."""
        s = self.state
        outcome = s.outcome or "in_progress"
        if outcome == OUTCOME_WON:
            levels_completed = self.config.max_level
        else:
            levels_completed = s.level - 1
        return {
            "coins": s.coins,
            "xp": s.xp,
            "lake_health": s.lake_health,
            "level": s.level,
            "levels_completed": levels_completed,
            "ai_actions": {
                kind: s.ai_action_counts.get(kind, 0)
                for kind in sorted(self.config.ai_costs)
            },
            "outcome": outcome,
        }

    def ai_cost(self, action_type: str) -> int:
        return self.config.ai_costs[_AI_COST_KEY[action_type]]

    # -- action entry point ----------------------------------------------

    def apply(self, action: dict) -> list[dict]:
        """Validate and apply one action; returns the events it caused.

        Raises FarmError without changing state when the action is
        illegal.  Successful actions are appended to the replay log.
        """
        if not isinstance(action, dict) or not isinstance(action.get("type"), str):
            raise FarmError("invalid_payload", "action must be {'type': str, ...}")
        atype = action["type"]
        payload = action.get("payload") or {}
        ack = bool(action.get("ack_warning", False))
        if not isinstance(payload, dict):
            raise FarmError("invalid_payload", "payload must be an object")
        if self.state.game_over:
            raise FarmError("game_over", "the game has ended")
        handler = getattr(self, f"_act_{atype}", None)
        if handler is None:
            raise FarmError("unknown_action", f"unknown action type: {atype}")
        needed = _FEATURE_LEVEL.get(atype, 1)
        if self.state.level < needed:
            raise FarmError(
                "feature_locked", f"{atype} unlocks at level {needed}"
            )
        if atype in _AI_COST_KEY and not ack:
            raise FarmError(
                "warning_required",
                f"{atype} spends {self.ai_cost(atype)} units of lake water; "
                "set ack_warning to confirm",
            )
        events = handler(payload)
        self.actions.append(
            {"type": atype, "payload": copy.deepcopy(payload), "ack_warning": ack}
        )
        return events

    # -- shared internals --------------------------------------------------

    def _event(self, kind: str, **data: Any) -> dict:
        return {"kind": kind, "tick": self.state.tick, **data}

    def _draw_from_bag(self) -> int:
        if not self._bag:
            self._bag = list(self.config.drain_bag)
            self.rng.shuffle(self._bag)
        return self._bag.pop()

    def _lose_lake(self, amount: int, events: list[dict]) -> None:
        s = self.state
        s.lake_health -= amount
        if s.lake_health <= 0:
            s.lake_health = 0
            s.game_over = True
            s.outcome = OUTCOME_LOST
            s.status_log.append("The lake ran dry. The farm cannot go on.")
            events.append(self._event("lost", reason="lake_empty"))

    def _spend_for_ai(self, atype: str, events: list[dict]) -> None:
        s = self.state
        kind = _AI_COST_KEY[atype]
        cost = self.ai_cost(atype)
        s.ai_spent += cost
        s.ai_action_counts[kind] = s.ai_action_counts.get(kind, 0) + 1
        s.status_log.append(f"{_AI_LABEL[atype]} used {cost} units of lake water.")
        events.append(
            self._event("lake_spent", amount=cost, purpose=atype)
        )
        self._lose_lake(cost, events)

    def _tile_at(self, payload: dict) -> Tile:
        try:
            row, col = int(payload["row"]), int(payload["col"])
        except (KeyError, TypeError, ValueError):
            raise FarmError("invalid_payload", "row and col must be integers")
        tile = self.state.tiles.get((row, col))
        if tile is None:
            raise FarmError("out_of_bounds", f"no tile at ({row}, {col})")
        return tile

    def _crop_spec(self, payload: dict):
        crop = payload.get("crop")
        spec = self.config.crops.get(crop) if isinstance(crop, str) else None
        if spec is None:
            raise FarmError("invalid_payload", f"unknown crop: {crop!r}")
        return spec

    def _pest_on(self, tile: Tile) -> bool:
        p = self.state.pest
        return p is not None and (p.row, p.col) == (tile.row, tile.col)

    def _check_level_up(self, events: list[dict]) -> None:
        s = self.state
        cfg = self.config
        new_level = cfg.level_for_xp(s.xp)
        while s.level < new_level:
            s.level += 1
            s.status_log.append(f"Reached level {s.level}.")
            events.append(self._event("level_up", level=s.level))
        if s.level >= cfg.max_level and s.xp >= cfg.win_xp and not s.game_over:
            s.game_over = True
            s.outcome = OUTCOME_WON
            s.status_log.append("The farm is thriving. You win!")
            events.append(self._event("won", xp=s.xp, lake_health=s.lake_health))

    # -- the clock ---------------------------------------------------------

    def _close_week(self, events: list[dict]) -> None:
        """Archive the week's sales as the report shown at the next open."""
        s = self.state
        if s.market_week is None:
            return
        s.last_week_report = {k: dict(v) for k, v in s.week_sales.items()}
        events.append(
            self._event(
                "week_closed",
                week_index=s.market_week.week_index,
                report={k: dict(v) for k, v in s.week_sales.items()},
            )
        )
        s.market_week = None
        s.week_sales = {}

    def _act_tick(self, payload: dict) -> list[dict]:
        s = self.state
        cfg = self.config
        events: list[dict] = []
        s.tick += 1
        if s.market_week and s.tick >= s.market_week.closes_at_tick:
            self._close_week(events)
        if s.tick % cfg.drain_interval_ticks == 0:
            draw = self._draw_from_bag()
            s.community_drained += draw
            unit = "unit" if draw == 1 else "units"
            s.status_log.append(f"Neighbors drew {draw} {unit} from the lake.")
            events.append(self._event("drained", amount=draw))
            self._lose_lake(draw, events)
        if not s.game_over and s.level >= 3 and s.pest is None:
            if self.rng.randrange(10000) < cfg.pests.spawn_permyriad:
                planted = [c for c in sorted(s.tiles) if s.tiles[c].crop]
                if planted:
                    row, col = planted[self.rng.randrange(len(planted))]
                    s.pest = Pest(row=row, col=col, since_tick=s.tick)
                    s.status_log.append(f"A pest landed on ({row}, {col})!")
                    events.append(self._event("pest_spawned", row=row, col=col))
        if (
            not s.game_over
            and s.level >= 4
            and s.bird is None
            and not s.scarecrow_active
        ):
            if self.rng.randrange(10000) < cfg.birds.spawn_permyriad:
                s.bird = Bird(since_tick=s.tick)
                s.status_log.append("A hungry bird is circling the farm!")
                events.append(self._event("bird_arrived"))
        if not s.game_over and s.pest is not None:
            tile = s.tiles[(s.pest.row, s.pest.col)]
            if (
                tile.crop
                and not tile.pest_damaged
                and s.tick - s.pest.since_tick >= cfg.pests.damage_after_ticks
            ):
                tile.pest_damaged = True
                events.append(
                    self._event("pest_damage", row=tile.row, col=tile.col)
                )
        if not s.game_over:
            for coords in sorted(s.tiles):
                tile = s.tiles[coords]
                if not tile.crop or self._pest_on(tile):
                    continue
                spec = cfg.crops[tile.crop]
                if tile.watered_until >= s.tick and tile.progress < spec.growth_ticks:
                    tile.progress += 1
                    if tile.progress >= spec.growth_ticks:
                        events.append(
                            self._event(
                                "crop_matured",
                                row=tile.row,
                                col=tile.col,
                                crop=tile.crop,
                            )
                        )
        return events

    # -- farming -------------------------------------------------------------

    def _act_plant(self, payload: dict) -> list[dict]:
        s = self.state
        tile = self._tile_at(payload)
        spec = self._crop_spec(payload)
        if tile.obstructed or tile.crop:
            raise FarmError("tile_not_empty", "tile is not free for planting")
        # Seasons only bind once the almanac exists to explain them (level 2+).
        season = self.config.season_at(s.tick)
        if s.level >= 2 and season not in spec.seasons:
            raise FarmError(
                "off_season",
                f"it is {season}; the Almanac says {spec.name} grows in "
                + ", ".join(spec.seasons),
            )
        if s.seeds.get(spec.name, 0) < 1:
            raise FarmError("missing_seed", f"no {spec.name} seeds left")
        s.seeds[spec.name] -= 1
        tile.crop = spec.name
        tile.planted_tick = s.tick
        tile.progress = 0
        tile.watered_until = s.tick
        tile.pest_damaged = False
        return [
            self._event("planted", row=tile.row, col=tile.col, crop=spec.name)
        ]

    def _act_water(self, payload: dict) -> list[dict]:
        s = self.state
        tile = self._tile_at(payload)
        if not tile.crop:
            raise FarmError("tile_not_planted", "nothing to water here")
        tile.watered_until = s.tick + self.config.watered_duration_ticks
        return [
            self._event(
                "watered",
                row=tile.row,
                col=tile.col,
                watered_until=tile.watered_until,
            )
        ]

    def _act_harvest(self, payload: dict) -> list[dict]:
        s = self.state
        cfg = self.config
        tile = self._tile_at(payload)
        if not tile.crop:
            raise FarmError("tile_not_planted", "nothing to harvest here")
        if self._pest_on(tile):
            raise FarmError("pest_on_tile", "clear the pest before harvesting")
        spec = cfg.crops[tile.crop]
        if tile.progress < spec.growth_ticks:
            raise FarmError("not_mature", f"{tile.crop} is still growing")
        units = spec.yield_units
        if tile.pest_damaged:
            units //= 2
        events: list[dict] = []
        if s.bird is not None and not s.scarecrow_active:
            units //= 2
            s.bird = None
            s.status_log.append("The bird snatched part of the harvest!")
            events.append(self._event("bird_stole", row=tile.row, col=tile.col))
        s.produce[spec.name] += units
        s.seeds[spec.name] += cfg.seed_return_on_harvest
        s.xp += spec.xp
        tile.crop = None
        tile.progress = 0
        tile.pest_damaged = False
        events.insert(
            0,
            self._event(
                "harvested",
                row=tile.row,
                col=tile.col,
                crop=spec.name,
                units=units,
                xp_gained=spec.xp,
                seeds_returned=cfg.seed_return_on_harvest,
            ),
        )
        self._check_level_up(events)
        return events

    # -- pests ----------------------------------------------------------------

    def _require_pest(self):
        pest = self.state.pest
        if pest is None:
            raise FarmError("no_active_pest", "there is no pest right now")
        return pest

    def _required_hits(self) -> int:
        by_level = self.config.pests.required_hits_by_level
        return by_level.get(self.state.level, max(by_level.values()))

    def _act_craft_pesticide(self, payload: dict) -> list[dict]:
        s = self.state
        pest = self._require_pest()
        recipe = self.config.pests.pesticide_recipe
        for crop, amount in recipe.items():
            if s.produce.get(crop, 0) < amount:
                raise FarmError(
                    "insufficient_items",
                    f"pesticide needs {amount} {crop}",
                )
        for crop, amount in recipe.items():
            s.produce[crop] -= amount
        row, col = pest.row, pest.col
        s.pest = None
        s.status_log.append("You crafted pesticide and cleared the pest.")
        return [
            self._event("pesticide_crafted", recipe=dict(recipe)),
            self._event("pest_cleared", method="pesticide", row=row, col=col),
        ]

    def _act_start_pest_minigame(self, payload: dict) -> list[dict]:
        """Hand the UI the minigame parameters; timing runs client-side."""
        pest = self._require_pest()
        cfg = self.config.pests
        return [
            self._event(
                "pest_minigame_started",
                row=pest.row,
                col=pest.col,
                required_hits=self._required_hits(),
                window_s=cfg.minigame_window_s,
                max_hit_rate_hz=cfg.max_hit_rate_hz,
            )
        ]

    def _act_resolve_pest_minigame(self, payload: dict) -> list[dict]:
        s = self.state
        cfg = self.config.pests
        pest = self._require_pest()
        try:
            hits = int(payload["hits"])
        except (KeyError, TypeError, ValueError):
            raise FarmError("invalid_payload", "hits (int) required")
        if hits < 0:
            raise FarmError("invalid_payload", "hits must be >= 0")
        # The window runs client-side; the server only rejects hit counts
        # no human could produce within it.
        if hits > cfg.minigame_window_s * cfg.max_hit_rate_hz + 1e-9:
            raise FarmError(
                "impossible_hits",
                f"{hits} hits exceeds {cfg.max_hit_rate_hz:.0f}/s over "
                f"{cfg.minigame_window_s:.0f}s",
            )
        required = self._required_hits()
        if hits < required:
            return [
                self._event(
                    "pest_minigame_failed", hits=hits, required=required
                )
            ]
        row, col = pest.row, pest.col
        s.pest = None
        s.status_log.append("You chased the pest away by hand.")
        return [
            self._event(
                "pest_cleared", method="minigame", row=row, col=col, hits=hits
            )
        ]

    def _act_ai_pest_control(self, payload: dict) -> list[dict]:
        s = self.state
        pest = self._require_pest()
        events: list[dict] = []
        self._spend_for_ai("ai_pest_control", events)
        if not s.game_over:
            row, col = pest.row, pest.col
            s.pest = None
            events.append(
                self._event("pest_cleared", method="ai", row=row, col=col)
            )
        return events

    # -- birds ------------------------------------------------------------------

    def _raise_if_scarecrow_up(self) -> None:
        if self.state.scarecrow_active:
            raise FarmError("scarecrow_active", "a scarecrow is already up")

    def _erect_scarecrow(self, ref: str, events: list[dict]) -> None:
        s = self.state
        s.scarecrow_active = True
        s.scarecrow_ref = ref
        if s.bird is not None:
            s.bird = None
        s.status_log.append("A scarecrow now guards the fields.")
        events.append(self._event("scarecrow_placed", ref=ref))

    def _act_place_scarecrow(self, payload: dict) -> list[dict]:
        """Player-drawn scarecrow: free, just needs the drawing."""
        self._raise_if_scarecrow_up()
        ref = payload.get("drawing_ref")
        if not isinstance(ref, str) or not ref.strip():
            raise FarmError(
                "invalid_payload", "drawing_ref must be a non-empty string"
            )
        events: list[dict] = []
        self._erect_scarecrow(ref, events)
        return events

    def _act_ai_scarecrow(self, payload: dict) -> list[dict]:
        """AI-generated scarecrow art: same effect, costs lake water."""
        self._raise_if_scarecrow_up()
        events: list[dict] = []
        self._spend_for_ai("ai_scarecrow", events)
        if not self.state.game_over:
            self._erect_scarecrow(_AI_SCARECROW_REF, events)
        return events

    # -- the AI farm hand ----------------------------------------------------

    def _act_farmhand_chat(self, payload: dict) -> list[dict]:
        question = payload.get("question")
        answer = payload.get("answer")
        if not isinstance(question, str) or not question.strip():
            raise FarmError("invalid_payload", "question must be a non-empty string")
        if not isinstance(answer, str) or not answer.strip():
            raise FarmError("invalid_payload", "answer must be a non-empty string")
        events: list[dict] = []
        self._spend_for_ai("farmhand_chat", events)
        if not self.state.game_over:
            events.append(
                self._event("farmhand_answered", question=question, answer=answer)
            )
        return events

    # -- market -----------------------------------------------------------------

    def _act_open_market_week(self, payload: dict) -> list[dict]:
        s = self.state
        events: list[dict] = []
        self._close_week(events)
        week = open_week(self.config, s.seed, s.weeks_opened, s.tick)
        s.weeks_opened += 1
        s.market_week = week
        events.append(
            self._event(
                "week_opened",
                week_index=week.week_index,
                closes_at_tick=week.closes_at_tick,
                reference_prices=dict(week.reference_prices),
                last_week_report=(
                    {k: dict(v) for k, v in s.last_week_report.items()}
                    if s.last_week_report is not None
                    else None
                ),
            )
        )
        return events

    def _require_week(self):
        if self.state.market_week is None:
            raise FarmError("no_open_week", "open a market week first")
        return self.state.market_week

    def _act_set_price(self, payload: dict) -> list[dict]:
        week = self._require_week()
        spec = self._crop_spec(payload)
        try:
            price = int(payload["price"])
        except (KeyError, TypeError, ValueError):
            raise FarmError("invalid_payload", "price must be an integer")
        if not 1 <= price <= self.config.market.max_price:
            raise FarmError(
                "invalid_price",
                f"price must be in [1, {self.config.market.max_price}]",
            )
        week.player_prices[spec.name] = price
        return [self._event("price_set", crop=spec.name, price=price)]

    def _act_sell(self, payload: dict) -> list[dict]:
        """Put the whole harvest on the stall at the week's posted prices.

        Posted prices start at the week's reference prices until changed
        with set_price.  Demand caps how much actually moves; leftovers
        stay in inventory.  With nothing in stock this is a no-op that
        only notes the empty stall.
        """
        s = self.state
        week = self._require_week()
        mkt = self.config.market
        if sum(s.produce.values()) < 1:
            s.status_log.append("The market stall is empty; nothing to sell.")
            return [self._event("sold_nothing")]
        events: list[dict] = []
        total_units = 0
        total_coins = 0
        for name in sorted(s.produce):
            stock = s.produce[name]
            if stock < 1:
                continue
            price = week.player_prices[name]
            demand = demand_at_price(
                mkt.base_demand[name],
                week.reference_prices[name],
                price,
                mkt.elasticity,
            )
            units = min(stock, demand)
            s.produce[name] -= units
            s.coins += units * price
            total_units += units
            total_coins += units * price
            report = s.week_sales.setdefault(name, {"units_sold": 0, "price": price})
            report["units_sold"] += units
            report["price"] = price
            events.append(
                self._event(
                    "sold",
                    crop=name,
                    units=units,
                    price=price,
                    coins_gained=units * price,
                    demand=demand,
                )
            )
        s.status_log.append(
            f"Market day: sold {total_units} crops for {total_coins} coins."
        )
        return events

    def _act_ai_price_suggestion(self, payload: dict) -> list[dict]:
        s = self.state
        week = self._require_week()
        spec = self._crop_spec(payload)
        mkt = self.config.market
        events: list[dict] = []
        self._spend_for_ai("ai_price_suggestion", events)
        if not s.game_over:
            price = suggest_price(
                base_demand=mkt.base_demand[spec.name],
                reference_price=week.reference_prices[spec.name],
                elasticity=mkt.elasticity,
                stock=s.produce.get(spec.name, 0),
                max_price=mkt.max_price,
            )
            events.append(
                self._event("price_suggested", crop=spec.name, price=price)
            )
        return events

from __future__ import annotations

import random

import pytest

from ecoprompt.farm.engine import FarmGame
from ecoprompt.farm.market import (
    demand_at_price,
    reference_prices_for_week,
    revenue,
    suggest_price,
    units_sold,
)
from ecoprompt.farm.model import FarmError


def test_demand_curve_known_values():
    # elasticity 1: demand scales like ref/price
    assert demand_at_price(8, 4, 4, 1.0) == 8
    assert demand_at_price(8, 4, 2, 1.0) == 16
    assert demand_at_price(8, 4, 8, 1.0) == 4
    assert demand_at_price(8, 4, 50, 1.0) == 1
    # steeper elasticity punishes overpricing harder
    assert demand_at_price(8, 4, 8, 2.0) == 2


def test_units_sold_capped_by_stock():
    assert units_sold(8, 4, 2, 1.0, stock=5) == 5
    assert units_sold(8, 4, 2, 1.0, stock=100) == 16


def test_revenue_and_suggestion_simple_case():
    # stock 10, base 2, ref 3: demand round(6/p) hits 0 past p = 11, so the
    # best move is one unit at the highest price that still sells: 11.
    assert revenue(2, 3, 4, 1.0, stock=10) == 8  # 2 units at 4
    assert revenue(2, 3, 11, 1.0, stock=10) == 11  # 1 unit at 11
    assert demand_at_price(2, 3, 13, 1.0) == 0
    assert suggest_price(2, 3, 1.0, stock=10, max_price=50) == 11


def test_suggestion_breaks_ties_low():
    # zero stock: every price earns 0; lowest wins
    assert suggest_price(8, 4, 1.0, stock=0, max_price=50) == 1


def _brute_force(base, ref, elasticity, stock, max_price):
    best_price, best_rev = 1, -1
    for p in range(1, max_price + 1):
        d = max(0, round(base * (ref / p) ** elasticity))
        r = p * min(stock, d)
        if r > best_rev:
            best_price, best_rev = p, r
    return best_price


def test_suggestion_matches_brute_force_randomized():
    rng = random.Random(99)
    for _ in range(250):
        base = rng.randint(1, 20)
        ref = rng.randint(1, 20)
        elasticity = rng.choice([0.5, 1.0, 1.5, 2.0, 2.5])
        stock = rng.randint(0, 60)
        assert suggest_price(base, ref, elasticity, stock, 50) == _brute_force(
            base, ref, elasticity, stock, 50
        )


def test_reference_prices_deterministic_and_bounded(farm_config):
    a = reference_prices_for_week(farm_config, seed=7, week_index=3)
    b = reference_prices_for_week(farm_config, seed=7, week_index=3)
    assert a == b
    for name, price in a.items():
        base = farm_config.crops[name].base_price
        assert price >= 1
        assert abs(price - base) <= 2
    # different weeks move at least one price
    later = reference_prices_for_week(farm_config, seed=7, week_index=4)
    assert later != a


def _level5_game(farm_config, stock=10):
    game = FarmGame(farm_config, seed=6)
    game.state.level = 5
    game.state.produce["wheat"] = stock
    return game


def test_market_actions_locked_below_level_five(farm_config):
    game = FarmGame(farm_config, seed=6)
    with pytest.raises(FarmError) as e:
        game.apply({"type": "open_market_week"})
    assert e.value.code == "feature_locked"


def test_sell_requires_open_week(farm_config):
    game = _level5_game(farm_config)
    with pytest.raises(FarmError) as e:
        game.apply({"type": "sell"})
    assert e.value.code == "no_open_week"


def test_week_lifecycle_selling_and_report(farm_config):
    game = _level5_game(farm_config, stock=10)
    events = game.apply({"type": "open_market_week"})
    opened = next(e for e in events if e["kind"] == "week_opened")
    ref = opened["reference_prices"]["wheat"]
    assert opened["last_week_report"] is None  # nothing sold yet, ever
    assert game.state.market_week.player_prices["wheat"] == ref

    game.apply({"type": "set_price", "payload": {"crop": "wheat", "price": ref}})
    events = game.apply({"type": "sell"})
    sold = next(e for e in events if e["kind"] == "sold")
    base = farm_config.market.base_demand["wheat"]
    expected_units = min(10, demand_at_price(base, ref, ref, farm_config.market.elasticity))
    assert sold["units"] == expected_units
    assert sold["coins_gained"] == expected_units * ref
    assert game.state.coins == expected_units * ref
    assert game.state.produce["wheat"] == 10 - expected_units
    assert game.state.week_sales["wheat"] == {
        "units_sold": expected_units,
        "price": ref,
    }

    # week auto-closes after its length, archiving the sales report
    for _ in range(farm_config.market.week_length_ticks):
        game.apply({"type": "tick"})
    assert game.state.market_week is None
    assert game.state.week_sales == {}
    assert game.state.last_week_report["wheat"]["units_sold"] == expected_units
    assert game.state.last_week_report["wheat"]["price"] == ref

    # the next week opens with last week's report attached
    events = game.apply({"type": "open_market_week"})
    opened = next(e for e in events if e["kind"] == "week_opened")
    assert opened["last_week_report"]["wheat"]["units_sold"] == expected_units


def test_unpriced_crops_sell_at_reference_price(farm_config):
    # posted prices start at the week's reference prices, so selling
    # without set_price moves min(stock, base_demand) at the reference
    game = _level5_game(farm_config, stock=0)
    game.state.produce["carrot"] = 2
    game.apply({"type": "open_market_week"})
    week = game.state.market_week
    ref = week.reference_prices["carrot"]
    events = game.apply({"type": "sell"})
    sold = next(e for e in events if e["kind"] == "sold")
    assert sold["price"] == ref
    assert sold["units"] == min(2, farm_config.market.base_demand["carrot"])
    assert game.state.coins == sold["units"] * ref


def test_set_price_validation(farm_config):
    game = _level5_game(farm_config)
    game.apply({"type": "open_market_week"})
    with pytest.raises(FarmError) as e:
        game.apply({"type": "set_price", "payload": {"crop": "wheat", "price": 0}})
    assert e.value.code == "invalid_price"
    with pytest.raises(FarmError) as e:
        game.apply(
            {
                "type": "set_price",
                "payload": {"crop": "wheat", "price": farm_config.market.max_price + 1},
            }
        )
    assert e.value.code == "invalid_price"


def test_sell_with_no_stock_is_noop_with_log_entry(farm_config):
    game = _level5_game(farm_config, stock=0)
    game.apply({"type": "open_market_week"})
    before_coins = game.state.coins
    before_log = len(game.state.status_log)
    events = game.apply({"type": "sell"})
    assert [e["kind"] for e in events] == ["sold_nothing"]
    assert game.state.coins == before_coins
    assert game.state.week_sales == {}
    new_lines = game.state.status_log[before_log:]
    assert len(new_lines) == 1 and "nothing to sell" in new_lines[0]


def test_ai_price_suggestion_costs_lake_and_matches_module(farm_config):
    game = _level5_game(farm_config, stock=10)
    game.apply({"type": "open_market_week"})
    week = game.state.market_week
    cost = farm_config.ai_costs["price_suggestion"]
    events = game.apply(
        {"type": "ai_price_suggestion", "ack_warning": True, "payload": {"crop": "wheat"}}
    )
    suggested = next(e for e in events if e["kind"] == "price_suggested")
    expected = suggest_price(
        farm_config.market.base_demand["wheat"],
        week.reference_prices["wheat"],
        farm_config.market.elasticity,
        stock=10,
        max_price=farm_config.market.max_price,
    )
    assert suggested["price"] == expected
    assert game.state.lake_health == farm_config.initial_lake_health - cost

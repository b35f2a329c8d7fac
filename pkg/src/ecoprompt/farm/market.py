"""Market pricing: demand curve, revenue, and the price suggestion.

Demand follows a constant-elasticity curve anchored at the week's
reference price:

    demand(p) = round(base_demand * (reference_price / p) ** elasticity)

Units actually sold are capped by stock on hand.  The suggested price is
the exact argmax of revenue over the integer price grid 1..max_price,
breaking ties toward the lower (friendlier) price.
"""
from __future__ import annotations

from .model import FarmConfig, MarketWeek


def demand_at_price(
    base_demand: int, reference_price: int, price: int, elasticity: float
) -> int:
    """Units buyers want at `price`; never negative."""
    if price < 1:
        raise ValueError("price must be >= 1")
    return max(0, round(base_demand * (reference_price / price) ** elasticity))


def units_sold(
    base_demand: int, reference_price: int, price: int, elasticity: float, stock: int
) -> int:
    return min(stock, demand_at_price(base_demand, reference_price, price, elasticity))


def revenue(
    base_demand: int, reference_price: int, price: int, elasticity: float, stock: int
) -> int:
    return price * units_sold(base_demand, reference_price, price, elasticity, stock)


def suggest_price(
    base_demand: int,
    reference_price: int,
    elasticity: float,
    stock: int,
    max_price: int,
) -> int:
    """Integer price in [1, max_price] that maximizes revenue for `stock`.

    Ties go to the lowest price.
    """
    best_price = 1
    best_revenue = -1
    for price in range(1, max_price + 1):
        r = revenue(base_demand, reference_price, price, elasticity, stock)
        if r > best_revenue:
            best_revenue = r
            best_price = price
    return best_price


def reference_prices_for_week(config: FarmConfig, seed: int, week_index: int) -> dict:
    """Per-crop reference prices for one market week.

    Deterministic in (seed, week_index) without touching the game's RNG
    stream, so opening a market week never perturbs pest/drain draws.
    Prices wobble within +/-2 of each crop's base price, floored at 1.
    """
    prices = {}
    for idx, (name, spec) in enumerate(sorted(config.crops.items())):
        offset = (seed * 31 + week_index * 7 + idx * 13) % 5 - 2
        prices[name] = max(1, spec.base_price + offset)
    return prices


def open_week(config: FarmConfig, seed: int, week_index: int, tick: int) -> MarketWeek:
    refs = reference_prices_for_week(config, seed, week_index)
    return MarketWeek(
        week_index=week_index,
        opened_tick=tick,
        closes_at_tick=tick + config.market.week_length_ticks,
        reference_prices=refs,
        player_prices=dict(refs),
    )

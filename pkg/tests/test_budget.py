from __future__ import annotations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ecoprompt.budget import (
    STATUS_APPROACHING,
    STATUS_EXCEEDED,
    STATUS_NO_LIMIT,
    STATUS_UNDER,
    SessionBudget,
)
from ecoprompt.footprint import FootprintEstimate


def _estimate(water=0.0, carbon=0.0, energy=0.0):
    return FootprintEstimate(
        energy_wh=energy, water_ml=water, carbon_g=carbon, latency_s=1.0
    )


def test_fresh_budget_has_no_limits_and_zero_totals():
    budget = SessionBudget()
    for status in budget.statuses().values():
        assert status.status == STATUS_NO_LIMIT
        assert status.fill == 0.0
        assert status.total == 0.0


def test_status_band_edges():
    budget = SessionBudget(approaching_threshold=0.75)
    budget.set_limits(water_ml=100.0)

    budget.totals["water"] = 74.999
    assert budget.statuses()["water"].status == STATUS_UNDER
    budget.totals["water"] = 75.0  # exactly at threshold -> approaching
    assert budget.statuses()["water"].status == STATUS_APPROACHING
    budget.totals["water"] = 100.0  # exactly full -> still approaching
    assert budget.statuses()["water"].status == STATUS_APPROACHING
    budget.totals["water"] = 100.0000001
    assert budget.statuses()["water"].status == STATUS_EXCEEDED


def test_display_fraction_caps_at_one():
    budget = SessionBudget()
    budget.set_limits(carbon_g=10.0)
    budget.totals["carbon"] = 25.0
    status = budget.statuses()["carbon"]
    assert status.fill == 2.5
    assert status.display_fraction == 1.0


def test_record_accumulates_and_reports_transitions():
    budget = SessionBudget()
    budget.set_limits(water_ml=1.0)
    pid, statuses, transitions = budget.record(_estimate(water=0.8))
    assert pid == "p1"
    assert statuses["water"].status == STATUS_APPROACHING
    assert transitions == [
        {"resource": "water", "from": STATUS_UNDER, "to": STATUS_APPROACHING}
    ]
    pid, statuses, transitions = budget.record(_estimate(water=0.8))
    assert pid == "p2"
    assert statuses["water"].status == STATUS_EXCEEDED
    assert transitions == [
        {"resource": "water", "from": STATUS_APPROACHING, "to": STATUS_EXCEEDED}
    ]


def test_exceeded_limit_never_blocks_recording():
    budget = SessionBudget()
    budget.set_limits(energy_wh=0.1)
    for _ in range(10):
        budget.record(_estimate(energy=1.0))
    assert budget.prompt_count == 10
    assert budget.totals["energy"] == pytest.approx(10.0)


def test_explicit_prompt_id_is_kept():
    budget = SessionBudget()
    pid, _, _ = budget.record(_estimate(water=1.0), prompt_id="custom")
    assert pid == "custom"
    pid, _, _ = budget.record(_estimate(water=1.0))
    assert pid == "p2"


def test_set_limits_rejects_non_positive():
    budget = SessionBudget()
    with pytest.raises(ValueError):
        budget.set_limits(water_ml=0.0)
    with pytest.raises(ValueError):
        budget.set_limits(carbon_g=-5.0)


def test_set_limits_replaces_wholesale():
    budget = SessionBudget()
    budget.set_limits(water_ml=5.0, carbon_g=5.0)
    budget.set_limits(energy_wh=2.0)
    assert budget.limits == {"water": None, "carbon": None, "energy": 2.0}


def test_bad_threshold_rejected():
    with pytest.raises(ValueError):
        SessionBudget(approaching_threshold=0.0)
    with pytest.raises(ValueError):
        SessionBudget(approaching_threshold=1.5)


def test_dict_round_trip():
    budget = SessionBudget(approaching_threshold=0.8)
    budget.set_limits(water_ml=100.0)
    budget.record(_estimate(water=3.25, carbon=0.5, energy=0.125))
    clone = SessionBudget.from_dict(budget.to_dict())
    assert clone.to_dict() == budget.to_dict()
    assert clone.statuses() == budget.statuses()


_STATUS_ORDER = {STATUS_UNDER: 0, STATUS_APPROACHING: 1, STATUS_EXCEEDED: 2}

amounts = st.lists(
    st.tuples(
        st.floats(min_value=0, max_value=50, allow_nan=False),
        st.floats(min_value=0, max_value=50, allow_nan=False),
        st.floats(min_value=0, max_value=50, allow_nan=False),
    ),
    min_size=1,
    max_size=30,
)


@settings(max_examples=150)
@given(amounts=amounts, limit=st.floats(min_value=0.5, max_value=200))
def test_totals_conserve_and_statuses_only_escalate(amounts, limit):
    budget = SessionBudget()
    budget.set_limits(water_ml=limit, carbon_g=limit, energy_wh=limit)
    sums = {"water": 0.0, "carbon": 0.0, "energy": 0.0}
    last_rank = {r: 0 for r in sums}
    for water, carbon, energy in amounts:
        _, statuses, _ = budget.record(
            _estimate(water=water, carbon=carbon, energy=energy)
        )
        sums["water"] += water
        sums["carbon"] += carbon
        sums["energy"] += energy
        for resource, status in statuses.items():
            assert 0.0 <= status.display_fraction <= 1.0
            rank = _STATUS_ORDER[status.status]
            assert rank >= last_rank[resource]  # totals only grow
            last_rank[resource] = rank
    for resource, expected in sums.items():
        if expected:
            assert budget.totals[resource] == pytest.approx(expected, rel=1e-9)
        else:
            assert budget.totals[resource] == 0.0

"""Session budget tracking for water, carbon, and energy.

A session accumulates per-prompt footprint estimates against optional
self-set limits.  Limits are purely informational: crossing one changes a
status ("under" -> "approaching" -> "exceeded"), it never blocks a prompt.

Status bands over fill = total / limit:
    under        fill <  approaching_threshold
    approaching  approaching_threshold <= fill <= 1.0
    exceeded     fill >  1.0
With no limit set for a resource the status is "no_limit" and fill is 0.
"""
from __future__ import annotations

from dataclasses import dataclass

from .footprint import FootprintEstimate

RESOURCES = ("water", "carbon", "energy")

STATUS_NO_LIMIT = "no_limit"
STATUS_UNDER = "under"
STATUS_APPROACHING = "approaching"
STATUS_EXCEEDED = "exceeded"

DEFAULT_APPROACHING_THRESHOLD = 0.75

_ESTIMATE_FIELDS = {"water": "water_ml", "carbon": "carbon_g", "energy": "energy_wh"}


@dataclass(frozen=True)
class ResourceStatus:
    """One resource's position against its limit after some prompt."""

    resource: str
    total: float
    limit: float | None
    fill: float
    display_fraction: float
    status: str

    def to_dict(self) -> dict:
        return {
            "resource": self.resource,
            "total": self.total,
            "limit": self.limit,
            "fill": self.fill,
            "display_fraction": self.display_fraction,
            "status": self.status,
        }


class SessionBudget:
    """Running totals plus optional limits for one calculator session."""

    def __init__(self, approaching_threshold: float = DEFAULT_APPROACHING_THRESHOLD):
        if not 0.0 < approaching_threshold <= 1.0:
            raise ValueError("approaching_threshold must be in (0, 1]")
        self.approaching_threshold = approaching_threshold
        self.totals: dict[str, float] = {r: 0.0 for r in RESOURCES}
        self.limits: dict[str, float | None] = {r: None for r in RESOURCES}
        self.prompt_count = 0

    # -- limits --------------------------------------------------------

    def set_limits(
        self,
        water_ml: float | None = None,
        carbon_g: float | None = None,
        energy_wh: float | None = None,
    ) -> dict[str, ResourceStatus]:
        """Replace all limits at once; None clears a limit.

        Rejects zero or negative limits.  Returns post-change statuses so
        callers can immediately show the effect on existing totals.
        """
        new = {"water": water_ml, "carbon": carbon_g, "energy": energy_wh}
        for resource, value in new.items():
            if value is not None and value <= 0:
                raise ValueError(f"{resource} limit must be > 0")
        self.limits = dict(new)
        return self.statuses()

    # -- status --------------------------------------------------------

    def _status_for(self, resource: str) -> ResourceStatus:
        total = self.totals[resource]
        limit = self.limits[resource]
        if limit is None:
            return ResourceStatus(resource, total, None, 0.0, 0.0, STATUS_NO_LIMIT)
        fill = total / limit
        if fill > 1.0:
            status = STATUS_EXCEEDED
        elif fill >= self.approaching_threshold:
            status = STATUS_APPROACHING
        else:
            status = STATUS_UNDER
        return ResourceStatus(resource, total, limit, fill, min(1.0, fill), status)

    def statuses(self) -> dict[str, ResourceStatus]:
        return {r: self._status_for(r) for r in RESOURCES}

    # -- recording -----------------------------------------------------

    def record(
        self, estimate: FootprintEstimate, prompt_id: str | None = None
    ) -> tuple[str, dict[str, ResourceStatus], list[dict]]:
        """Fold one prompt's estimate into the totals.

        Returns (prompt_id, statuses, transitions); transitions lists each
        resource whose status band changed with this prompt, as
        {"resource", "from", "to"} dicts.  Recording never raises on
        exceeded limits -- limits do not block.
        """
        before = {r: self._status_for(r).status for r in RESOURCES}
        self.prompt_count += 1
        if prompt_id is None:
            prompt_id = f"p{self.prompt_count}"
        for resource, field in _ESTIMATE_FIELDS.items():
            self.totals[resource] += getattr(estimate, field)
        statuses = self.statuses()
        transitions = [
            {"resource": r, "from": before[r], "to": statuses[r].status}
            for r in RESOURCES
            if statuses[r].status != before[r]
        ]
        return prompt_id, statuses, transitions

    # -- persistence ---------------------------------------------------

    def to_dict(self) -> dict:
        return {
            "approaching_threshold": self.approaching_threshold,
            "totals": dict(self.totals),
            "limits": dict(self.limits),
            "prompt_count": self.prompt_count,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "SessionBudget":
        budget = cls(approaching_threshold=float(d["approaching_threshold"]))
        budget.totals = {r: float(d["totals"][r]) for r in RESOURCES}
        budget.limits = {
            r: (None if d["limits"][r] is None else float(d["limits"][r]))
            for r in RESOURCES
        }
        budget.prompt_count = int(d["prompt_count"])
        return budget

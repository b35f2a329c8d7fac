"""HTTP service: calculator sessions and farm games over a JSON API.

The server is the single source of truth.  Browsers only render what
these endpoints return; every rule (footprint math, budget statuses, farm
legality, AI lake costs) is enforced here.  All state changes append to
per-entity JSONL logs, and startup replays whatever logs exist in the
data directory, so a restarted server picks up exactly where it stopped.

Endpoints (all JSON):

    POST /api/sessions                   create a calculator session
    GET  /api/sessions/{id}              totals, limits, statuses
    POST /api/sessions/{id}/prompt       ask the AI, get answer + footprint
    PUT  /api/sessions/{id}/limits       set/clear self-imposed budgets
    POST /api/games                      create a farm game
    GET  /api/games/{id}/state           full game state + score
    GET  /api/games/{id}/almanac         season/crop hints (level 2+)
    POST /api/games/{id}/actions         apply one validated game action
    GET  /api/health                     liveness + provider mode

Error shape: HTTP status + {"detail": {"code", "message"}}.  Farm rule
violations are 409 with the rule's code; provider failures are 502 and
change nothing; unknown ids are 404; malformed bodies are 422.
"""
from __future__ import annotations

import logging
import os
import threading
import uuid
from pathlib import Path
from typing import Any

from fastapi import FastAPI, HTTPException
from fastapi.middleware.cors import CORSMiddleware
from pydantic import BaseModel

from . import __version__
from .budget import SessionBudget
from .config import AppConfig, load_config
from .eventlog import EventLog, EventLogError, scan_logs
from .farm.engine import FarmGame
from .farm.model import FarmConfig, FarmError
from .footprint import (
    ESTIMATE_LABEL,
    FootprintEstimate,
    QueryUsage,
    estimate_footprint,
    to_relatable,
)
from .providers import (
    LiveProvider,
    MockProvider,
    ProviderError,
    ProviderRequest,
    ProviderResult,
)

log = logging.getLogger("ecoprompt.service")

FARMHAND_HINT = (
    "You are a friendly farm hand in a children's farming game. "
    "Give short, practical farming advice."
)


class LimitsBody(BaseModel):
    water_ml: float | None = None
    carbon_g: float | None = None
    energy_wh: float | None = None


class CreateSessionBody(BaseModel):
    limits: LimitsBody | None = None


class PromptBody(BaseModel):
    prompt: str
    system_hint: str | None = None


class CreateGameBody(BaseModel):
    seed: int | None = None


class ActionBody(BaseModel):
    type: str
    payload: dict[str, Any] | None = None
    ack_warning: bool = False


class SessionRecord:
    def __init__(self, session_id: str, budget: SessionBudget, logfile: EventLog):
        self.id = session_id
        self.budget = budget
        self.log = logfile
        self.lock = threading.Lock()


class GameRecord:
    def __init__(self, game_id: str, game: FarmGame, logfile: EventLog):
        self.id = game_id
        self.game = game
        self.log = logfile
        self.lock = threading.Lock()


def _error(status: int, code: str, message: str) -> HTTPException:
    return HTTPException(status_code=status, detail={"code": code, "message": message})


def _limits_payload(budget: SessionBudget) -> dict:
    return {
        "water": budget.limits["water"],
        "carbon": budget.limits["carbon"],
        "energy": budget.limits["energy"],
    }


def _session_view(record: SessionRecord) -> dict:
    budget = record.budget
    return {
        "id": record.id,
        "totals": {
            "water_ml": budget.totals["water"],
            "carbon_g": budget.totals["carbon"],
            "energy_wh": budget.totals["energy"],
        },
        "limits": {
            "water_ml": budget.limits["water"],
            "carbon_g": budget.limits["carbon"],
            "energy_wh": budget.limits["energy"],
        },
        "statuses": {r: s.to_dict() for r, s in budget.statuses().items()},
        "prompt_count": budget.prompt_count,
    }


class ServiceState:
    """Registries, provider, and persistence shared by all endpoints."""

    def __init__(
        self,
        config: AppConfig,
        data_dir: Path,
        provider_mode: str,
        provider: Any | None,
    ):
        self.config = config
        self.data_dir = data_dir
        self.provider_mode = provider_mode
        self.provider = provider
        self.farm_config = FarmConfig.from_dict(config.farm)
        self.sessions: dict[str, SessionRecord] = {}
        self.games: dict[str, GameRecord] = {}
        self.registry_lock = threading.Lock()

    # -- persistence ------------------------------------------------------

    def session_log_path(self, session_id: str) -> Path:
        return self.data_dir / "sessions" / f"{session_id}.jsonl"

    def game_log_path(self, game_id: str) -> Path:
        return self.data_dir / "games" / f"{game_id}.jsonl"

    def maybe_compact_session(self, record: SessionRecord) -> None:
        if record.log.line_count >= self.config.service.snapshot_every:
            record.log.compact({"id": record.id, "budget": record.budget.to_dict()})

    def maybe_compact_game(self, record: GameRecord) -> None:
        if record.log.line_count >= self.config.service.snapshot_every:
            record.log.compact(record.game.snapshot())

    def restore_from_disk(self) -> None:
        for session_id, logfile in scan_logs(self.data_dir / "sessions"):
            try:
                record = self._rebuild_session(session_id, logfile)
            except (EventLogError, KeyError, TypeError, ValueError) as exc:
                log.warning("skipping session log %s: %s", session_id, exc)
                continue
            if record is not None:
                self.sessions[session_id] = record
        for game_id, logfile in scan_logs(self.data_dir / "games"):
            try:
                record = self._rebuild_game(game_id, logfile)
            except (EventLogError, FarmError, KeyError, TypeError, ValueError) as exc:
                log.warning("skipping game log %s: %s", game_id, exc)
                continue
            if record is not None:
                self.games[game_id] = record

    def _rebuild_session(
        self, session_id: str, logfile: EventLog
    ) -> SessionRecord | None:
        budget = None
        for event in logfile.read():
            kind, payload = event["kind"], event["payload"]
            if kind == "created":
                budget = SessionBudget(
                    approaching_threshold=float(payload["approaching_threshold"])
                )
            elif kind == "snapshot":
                budget = SessionBudget.from_dict(payload["budget"])
            elif kind == "footprint" and budget is not None:
                budget.record(
                    FootprintEstimate.from_dict(payload["estimate"]),
                    prompt_id=payload["prompt_id"],
                )
            elif kind == "limit_change" and budget is not None:
                limits = payload["limits"]
                budget.set_limits(
                    water_ml=limits.get("water"),
                    carbon_g=limits.get("carbon"),
                    energy_wh=limits.get("energy"),
                )
        if budget is None:
            return None
        return SessionRecord(session_id, budget, logfile)

    def _rebuild_game(self, game_id: str, logfile: EventLog) -> GameRecord | None:
        game = None
        for event in logfile.read():
            kind, payload = event["kind"], event["payload"]
            if kind == "created":
                game = FarmGame(self.farm_config, int(payload["seed"]))
            elif kind == "snapshot":
                game = FarmGame.replay(self.farm_config, payload)
            elif kind == "game_action" and game is not None:
                game.apply(payload["action"])
        if game is None:
            return None
        return GameRecord(game_id, game, logfile)

    # -- provider ---------------------------------------------------------

    def ask_provider(self, prompt: str, system_hint: str | None) -> ProviderResult:
        if self.provider is None:
            raise _error(
                409,
                "provider_unavailable",
                "live provider selected but no API key is configured",
            )
        try:
            request = ProviderRequest(prompt=prompt, system_hint=system_hint)
        except ValueError as exc:
            raise _error(422, "empty_prompt", str(exc))
        return self.provider.complete(request)


def build_provider(
    config: AppConfig, provider_mode: str, api_key: str | None
) -> Any | None:
    if provider_mode == "mock":
        return MockProvider(seed=config.provider.mock_seed)
    if api_key:
        return LiveProvider(config.provider.live, api_key)
    return None


def create_app(
    config: AppConfig | None = None,
    data_dir: str | Path = "data",
    provider_mode: str | None = None,
    provider: Any | None = None,
) -> FastAPI:
    """Build the API app.

    `provider` overrides construction entirely (tests inject fakes);
    otherwise the mode picks a seeded mock or a live client keyed by the
    environment variable named in the config.
    """
    config = config or load_config()
    data_dir = Path(data_dir)
    (data_dir / "sessions").mkdir(parents=True, exist_ok=True)
    (data_dir / "games").mkdir(parents=True, exist_ok=True)
    mode = provider_mode or config.provider.default_mode
    if mode not in ("mock", "live"):
        raise ValueError(f"unknown provider mode: {mode}")
    if provider is None:
        provider = build_provider(
            config, mode, os.environ.get(config.provider.live.key_env)
        )

    state = ServiceState(config, data_dir, mode, provider)
    state.restore_from_disk()

    app = FastAPI(title="ecoprompt", version=__version__)
    app.state.service = state
    origin = config.service.ui_origin
    app.add_middleware(
        CORSMiddleware,
        allow_origins=["*"] if origin == "*" else [origin],
        allow_methods=["*"],
        allow_headers=["*"],
    )

    def _session_or_404(session_id: str) -> SessionRecord:
        record = state.sessions.get(session_id)
        if record is None:
            raise _error(404, "unknown_session", f"no session {session_id}")
        return record

    def _game_or_404(game_id: str) -> GameRecord:
        record = state.games.get(game_id)
        if record is None:
            raise _error(404, "unknown_game", f"no game {game_id}")
        return record

    # -- calculator sessions -------------------------------------------

    @app.post("/api/sessions", status_code=201)
    def create_session(body: CreateSessionBody | None = None) -> dict:
        if state.provider is None:
            raise _error(
                409,
                "provider_unavailable",
                "live provider selected but no API key is configured",
            )
        session_id = uuid.uuid4().hex[:12]
        budget = SessionBudget(approaching_threshold=config.approaching_threshold)
        record = SessionRecord(
            session_id, budget, EventLog(state.session_log_path(session_id))
        )
        with record.lock:
            record.log.append(
                "created",
                {
                    "id": session_id,
                    "approaching_threshold": budget.approaching_threshold,
                    "provider_mode": state.provider_mode,
                },
            )
            if body is not None and body.limits is not None:
                limits = body.limits
                try:
                    budget.set_limits(limits.water_ml, limits.carbon_g, limits.energy_wh)
                except ValueError as exc:
                    raise _error(422, "invalid_limit", str(exc))
                record.log.append("limit_change", {"limits": _limits_payload(budget)})
            with state.registry_lock:
                state.sessions[session_id] = record
            return _session_view(record)

    @app.get("/api/sessions/{session_id}")
    def get_session(session_id: str) -> dict:
        record = _session_or_404(session_id)
        with record.lock:
            return _session_view(record)

    @app.put("/api/sessions/{session_id}/limits")
    def put_limits(session_id: str, body: LimitsBody) -> dict:
        record = _session_or_404(session_id)
        with record.lock:
            try:
                record.budget.set_limits(body.water_ml, body.carbon_g, body.energy_wh)
            except ValueError as exc:
                raise _error(422, "invalid_limit", str(exc))
            record.log.append(
                "limit_change", {"limits": _limits_payload(record.budget)}
            )
            state.maybe_compact_session(record)
            return _session_view(record)

    @app.post("/api/sessions/{session_id}/prompt")
    def post_prompt(session_id: str, body: PromptBody) -> dict:
        record = _session_or_404(session_id)
        if not body.prompt.strip():
            raise _error(422, "empty_prompt", "prompt must not be empty")
        try:
            result = state.ask_provider(body.prompt, body.system_hint)
        except ProviderError as exc:
            raise _error(502, "provider_failure", str(exc))
        usage = QueryUsage(
            input_tokens=result.input_tokens,
            output_tokens=result.output_tokens,
            measured_latency_s=result.latency_s,
        )
        estimate = estimate_footprint(config.model_profile, config.datacenter, usage)
        relatable = to_relatable(estimate, config.relatable_constants)
        with record.lock:
            prompt_id, statuses, transitions = record.budget.record(estimate)
            record.log.append("prompt", {"prompt_id": prompt_id, "prompt": body.prompt})
            record.log.append(
                "footprint",
                {
                    "prompt_id": prompt_id,
                    "estimate": estimate.to_dict(),
                    "usage": {
                        "input_tokens": result.input_tokens,
                        "output_tokens": result.output_tokens,
                        "latency_s": estimate.latency_s,
                    },
                    "refused": result.refused,
                    "totals": dict(record.budget.totals),
                },
            )
            state.maybe_compact_session(record)
            view = _session_view(record)
        return {
            "prompt_id": prompt_id,
            "response_text": result.text,
            "refused": result.refused,
            "provider": result.provider,
            "usage": {
                "input_tokens": result.input_tokens,
                "output_tokens": result.output_tokens,
                "latency_s": estimate.latency_s,
            },
            "footprint": {**estimate.to_dict(), "label": ESTIMATE_LABEL},
            "relatable": relatable.to_dict(),
            "totals": view["totals"],
            "statuses": view["statuses"],
            "transitions": transitions,
        }

    # -- farm games ------------------------------------------------------

    @app.post("/api/games", status_code=201)
    def create_game(body: CreateGameBody | None = None) -> dict:
        seed = body.seed if body is not None and body.seed is not None else None
        if seed is None:
            seed = int.from_bytes(os.urandom(4), "big")
        game_id = uuid.uuid4().hex[:12]
        game = FarmGame(state.farm_config, seed)
        record = GameRecord(game_id, game, EventLog(state.game_log_path(game_id)))
        with record.lock:
            record.log.append("created", {"id": game_id, "seed": seed})
            with state.registry_lock:
                state.games[game_id] = record
            return {"id": game_id, "state": game.state_dict()}

    @app.get("/api/games/{game_id}/state")
    def get_game_state(game_id: str) -> dict:
        record = _game_or_404(game_id)
        with record.lock:
            return {
                "id": record.id,
                "state": record.game.state_dict(),
                "score": record.game.score(),
                "ai_costs": dict(state.farm_config.ai_costs),
            }

    @app.get("/api/games/{game_id}/almanac")
    def get_almanac(game_id: str, topic: str | None = None) -> dict:
        record = _game_or_404(game_id)
        with record.lock:
            try:
                return record.game.almanac(topic)
            except FarmError as exc:
                raise _error(409, exc.code, exc.message)

    @app.post("/api/games/{game_id}/actions")
    def post_action(game_id: str, body: ActionBody) -> dict:
        record = _game_or_404(game_id)
        payload = dict(body.payload or {})
        if body.type == "farmhand_chat":
            # The engine never talks to the network: fetch the answer
            # first, then hand it in as part of the action payload.
            if not body.ack_warning:
                raise _error(
                    409,
                    "warning_required",
                    "farmhand_chat spends lake water; set ack_warning to confirm",
                )
            question = payload.get("question")
            if not isinstance(question, str) or not question.strip():
                raise _error(409, "invalid_payload", "question must be a non-empty string")
            try:
                result = state.ask_provider(question, FARMHAND_HINT)
            except ProviderError as exc:
                raise _error(502, "provider_failure", str(exc))
            payload["answer"] = result.text
        action = {
            "type": body.type,
            "payload": payload,
            "ack_warning": body.ack_warning,
        }
        with record.lock:
            try:
                events = record.game.apply(action)
            except FarmError as exc:
                raise _error(409, exc.code, exc.message)
            record.log.append("game_action", {"action": action})
            if events:
                record.log.append("game_event", {"events": events})
            state.maybe_compact_game(record)
            return {
                "events": events,
                "state": record.game.state_dict(),
            }

    @app.get("/api/health")
    def health() -> dict:
        return {
            "status": "ok",
            "provider_mode": state.provider_mode,
            "version": __version__,
        }

    return app

"""Command-line interface.

    ecoprompt serve     run the HTTP API
    ecoprompt estimate  one-off footprint math, no server needed
    ecoprompt replay    verify a JSONL log by replaying it
    ecoprompt simulate  headless farm game run with a scripted player

Exit codes: 0 on success, 1 for usage errors (bad flags / arguments),
2 for data problems (bad config, corrupt logs, missing API key).
"""
from __future__ import annotations

import argparse
import csv
import json
import os
import sys
from pathlib import Path

from .config import AppConfig, ConfigError, load_config
from .eventlog import EventLog, EventLogError
from .farm.engine import FarmGame
from .farm.model import FarmConfig, FarmError
from .farm.policies import DEFAULT_MAX_TICKS, PolicySpec, run_policy
from .footprint import QueryUsage, estimate_footprint, to_relatable
from .providers import MockProvider

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_DATA = 2


class _Parser(argparse.ArgumentParser):
    """argparse exits 2 on usage errors; our contract reserves 2 for data."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _fmt(value: float) -> str:
    return f"{value:.6g}"


def _load(config_path: str | None) -> AppConfig:
    return load_config(config_path)


# -- serve ---------------------------------------------------------------


def _cmd_serve(args: argparse.Namespace) -> int:
    import uvicorn

    from .service import create_app
    from .providers import LiveProvider

    config = _load(args.config)
    mode = args.provider or config.provider.default_mode
    provider = None
    if mode == "mock":
        seed = args.mock_seed if args.mock_seed is not None else config.provider.mock_seed
        provider = MockProvider(seed=seed)
    else:
        key = os.environ.get(config.provider.live.key_env)
        if not key:
            print(
                f"error: live provider needs the {config.provider.live.key_env} "
                "environment variable",
                file=sys.stderr,
            )
            return EXIT_DATA
        provider = LiveProvider(config.provider.live, key)
    app = create_app(
        config=config,
        data_dir=args.data_dir,
        provider_mode=mode,
        provider=provider,
    )
    if args.ui:
        from fastapi.staticfiles import StaticFiles

        ui_dir = Path(args.ui)
        if not ui_dir.is_dir():
            print(f"error: UI directory not found: {ui_dir}", file=sys.stderr)
            return EXIT_DATA
        app.mount("/", StaticFiles(directory=ui_dir, html=True), name="ui")
    uvicorn.run(app, host=args.host, port=args.port, log_level="info")
    return EXIT_OK


# -- estimate --------------------------------------------------------------


def _cmd_estimate(args: argparse.Namespace) -> int:
    config = _load(args.config)
    try:
        usage = QueryUsage(
            input_tokens=args.input_tokens,
            output_tokens=args.output_tokens,
            measured_latency_s=args.latency,
        )
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DATA
    estimate = estimate_footprint(config.model_profile, config.datacenter, usage)
    relatable = to_relatable(estimate, config.relatable_constants)
    print(f"latency_s: {_fmt(estimate.latency_s)}")
    print(f"energy_wh: {_fmt(estimate.energy_wh)}")
    print(f"water_ml: {_fmt(estimate.water_ml)}")
    print(f"carbon_g: {_fmt(estimate.carbon_g)}")
    print(f"relatable: {relatable.summary()}")
    print(f"label: {estimate.label}")
    return EXIT_OK


# -- replay -----------------------------------------------------------------


def _replay_session(events: list[dict], path: Path) -> int:
    from .budget import SessionBudget
    from .footprint import FootprintEstimate

    budget = None
    checked = 0
    for index, event in enumerate(events, start=1):
        kind, payload = event["kind"], event.get("payload", {})
        if kind == "created":
            budget = SessionBudget(float(payload["approaching_threshold"]))
        elif kind == "snapshot":
            budget = SessionBudget.from_dict(payload["budget"])
        elif kind == "footprint":
            if budget is None:
                print(
                    f"error: {path.name}: footprint before created (line {index})",
                    file=sys.stderr,
                )
                return EXIT_DATA
            budget.record(
                FootprintEstimate.from_dict(payload["estimate"]),
                prompt_id=payload["prompt_id"],
            )
            logged = payload["totals"]
            for resource, total in budget.totals.items():
                if logged[resource] != total:
                    print(
                        f"error: {path.name}: totals diverge at line {index} "
                        f"({resource}: logged {logged[resource]!r}, "
                        f"replayed {total!r})",
                        file=sys.stderr,
                    )
                    return EXIT_DATA
            checked += 1
        elif kind == "limit_change" and budget is not None:
            limits = payload["limits"]
            budget.set_limits(
                water_ml=limits.get("water"),
                carbon_g=limits.get("carbon"),
                energy_wh=limits.get("energy"),
            )
    if budget is None:
        print(f"error: {path.name}: no session events found", file=sys.stderr)
        return EXIT_DATA
    print(f"replayed {path.name}: {checked} prompts verified")
    for resource, total in sorted(budget.totals.items()):
        print(f"  {resource}: {_fmt(total)}")
    return EXIT_OK


def _replay_game(events: list[dict], path: Path, config: AppConfig) -> int:
    farm_config = FarmConfig.from_dict(config.farm)
    game = None
    logged_events: list[list[dict]] = []
    replayed_events: list[list[dict]] = []
    for index, event in enumerate(events, start=1):
        kind, payload = event["kind"], event.get("payload", {})
        if kind == "created":
            game = FarmGame(farm_config, int(payload["seed"]))
        elif kind == "snapshot":
            game = FarmGame.replay(farm_config, payload)
        elif kind == "game_action":
            if game is None:
                print(
                    f"error: {path.name}: action before created (line {index})",
                    file=sys.stderr,
                )
                return EXIT_DATA
            try:
                produced = game.apply(payload["action"])
            except FarmError as exc:
                print(
                    f"error: {path.name}: logged action rejected on replay "
                    f"(line {index}): {exc.code}",
                    file=sys.stderr,
                )
                return EXIT_DATA
            if produced:
                replayed_events.append(produced)
        elif kind == "game_event":
            logged_events.append(payload["events"])
    if game is None:
        print(f"error: {path.name}: no game events found", file=sys.stderr)
        return EXIT_DATA
    if logged_events and logged_events != replayed_events:
        print(
            f"error: {path.name}: replayed event stream diverges from log",
            file=sys.stderr,
        )
        return EXIT_DATA
    s = game.state
    print(f"replayed {path.name}: {len(game.actions)} actions verified")
    print(f"  tick: {s.tick}  level: {s.level}  xp: {s.xp}")
    print(f"  lake_health: {s.lake_health}  coins: {s.coins}")
    print(f"  outcome: {s.outcome or 'in progress'}")
    return EXIT_OK


def _cmd_replay(args: argparse.Namespace) -> int:
    path = Path(args.log)
    if not path.is_file():
        print(f"error: log file not found: {path}", file=sys.stderr)
        return EXIT_DATA
    try:
        events = EventLog(path).read()
    except EventLogError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DATA
    if not events:
        print(f"error: {path.name}: log is empty", file=sys.stderr)
        return EXIT_DATA
    kinds = {event["kind"] for event in events}
    config = _load(args.config)
    try:
        if kinds & {"game_action", "game_event"} or (
            "created" in kinds
            and any(
                "seed" in e.get("payload", {}) for e in events if e["kind"] == "created"
            )
        ):
            return _replay_game(events, path, config)
        return _replay_session(events, path)
    except (KeyError, TypeError, ValueError) as exc:
        print(f"error: {path.name}: malformed event: {exc}", file=sys.stderr)
        return EXIT_DATA


# -- simulate ----------------------------------------------------------------


def _cmd_simulate(args: argparse.Namespace) -> int:
    config = _load(args.config)
    try:
        policy = PolicySpec.parse(args.policy)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DATA
    farm_config = FarmConfig.from_dict(config.farm)
    summary, rows = run_policy(farm_config, args.seed, policy, args.max_ticks)
    if args.out:
        out = Path(args.out)
        out.parent.mkdir(parents=True, exist_ok=True)
        with out.open("w", newline="", encoding="utf-8") as fh:
            writer = csv.DictWriter(
                fh, fieldnames=["tick", "lake_health", "coins", "xp", "level"]
            )
            writer.writeheader()
            writer.writerows(rows)
    print(json.dumps(summary, indent=2, sort_keys=True))
    return EXIT_OK


# -- wiring -------------------------------------------------------------------


def build_parser() -> _Parser:
    parser = _Parser(
        prog="ecoprompt",
        description="Environmental footprint calculator and farm game service.",
    )
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p_serve = sub.add_parser("serve", help="run the HTTP API server")
    p_serve.add_argument("--host", default="127.0.0.1")
    p_serve.add_argument("--port", type=int, default=8000)
    p_serve.add_argument("--config", help="JSON config file")
    p_serve.add_argument("--data-dir", default="data", help="event log directory")
    p_serve.add_argument("--provider", choices=["mock", "live"])
    p_serve.add_argument("--mock-seed", type=int, help="seed for the mock provider")
    p_serve.add_argument("--ui", help="serve this built UI directory at /")
    p_serve.set_defaults(func=_cmd_serve)

    p_est = sub.add_parser("estimate", help="estimate one query's footprint")
    p_est.add_argument("--input-tokens", type=int, required=True)
    p_est.add_argument("--output-tokens", type=int, required=True)
    p_est.add_argument("--latency", type=float, help="measured seconds (optional)")
    p_est.add_argument("--config", help="JSON config file")
    p_est.set_defaults(func=_cmd_estimate)

    p_replay = sub.add_parser("replay", help="verify a session or game log")
    p_replay.add_argument("log", help="path to a .jsonl event log")
    p_replay.add_argument("--config", help="JSON config file")
    p_replay.set_defaults(func=_cmd_replay)

    p_sim = sub.add_parser("simulate", help="run a scripted farm game")
    p_sim.add_argument("--seed", type=int, default=0)
    p_sim.add_argument(
        "--policy",
        default="never_ai",
        help="never_ai | always_ai | threshold:<lake-level>",
    )
    p_sim.add_argument("--max-ticks", type=int, default=DEFAULT_MAX_TICKS)
    p_sim.add_argument("--out", help="write per-tick CSV here")
    p_sim.add_argument("--config", help="JSON config file")
    p_sim.set_defaults(func=_cmd_simulate)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DATA


if __name__ == "__main__":
    sys.exit(main())

"""Answer providers: a deterministic mock and an OpenAI-compatible client.

The mock is the default.  It needs no network or key, picks a canned
answer from length-classed template pools via a seeded hash of the prompt,
and reports token usage, so the rest of the stack (footprint math, budgets,
the farm game, every test) runs fully offline and reproducibly.

The live client talks to any chat-completions-style HTTP API.  It is never
exercised by the test suite against a real endpoint; tests inject an
httpx.MockTransport.
"""
from __future__ import annotations

import hashlib
import math
import time
from dataclasses import dataclass

import httpx

from .config import LiveProviderConfig


class ProviderError(Exception):
    """Base class for provider failures."""


class ProviderAuthError(ProviderError):
    """The API rejected our credentials (HTTP 401/403)."""


class ProviderTimeoutError(ProviderError):
    """The API did not answer within the configured timeout."""


class ProviderNetworkError(ProviderError):
    """Transport failure or unexpected HTTP status."""


def count_tokens(text: str) -> int:
    """Crude token estimate: one token per 4 characters, rounded up."""
    return math.ceil(len(text) / 4)


@dataclass(frozen=True)
class ProviderRequest:
    prompt: str
    system_hint: str | None = None

    def __post_init__(self) -> None:
        if not self.prompt.strip():
            raise ValueError("prompt must not be empty")


@dataclass(frozen=True)
class ProviderResult:
    """One completed (or refused) answer with its token usage.

    latency_s is a wall-clock measurement when the provider has one (live
    calls); None means downstream should model latency from tokens.
    """

    text: str
    refused: bool
    input_tokens: int
    output_tokens: int
    latency_s: float | None
    provider: str

    def to_dict(self) -> dict:
        return {
            "text": self.text,
            "refused": self.refused,
            "input_tokens": self.input_tokens,
            "output_tokens": self.output_tokens,
            "latency_s": self.latency_s,
            "provider": self.provider,
        }


# --- mock template pools -------------------------------------------------
# Lengths are load-bearing: at the default power profile (455 W effective,
# PUE 1.2, 40 tok/s, 0.5 s ttft) each class lands in a distinct band of
# drops / balloons / LED-minutes, and the bands must not overlap.

# <= 16 chars -> <= 4 tokens -> LED display stays at "0.5 minutes".
_ONE_WORD = ["Yes.", "No.", "Maybe.", "Probably.", "Sometimes."]

# 52-68 chars -> 13-17 tokens -> "~1 drop ... 0.8 minutes".
_MINI = [
    "I do! They make the world brighter and more fun every day.",
    "Definitely! It is one of my favorite things to chat about.",
    "Yes indeed. Lots of people find real joy in that topic too.",
]

# 190-210 chars -> 48-53 tokens -> "2 drops" territory.
_SHORT = [
    "That is a fun one to think about. The short answer: it depends on a "
    "few things, but most people land in about the same place once they "
    "try it. Ask a follow-up question and we can dig into the details.",
    "Good question. There is a simple version and a longer version, and "
    "the simple one goes like this: start small, notice what changes, and "
    "adjust as you learn. Most of the interesting part is in the noticing.",
    "Here is the quick version. It works a little like a recipe: a few "
    "ingredients, a few steps, and a result you can check. If one step "
    "seems odd, try it anyway once, then change it and compare the two.",
    "Short answer: yes, with a small catch. The catch is that it depends "
    "on timing, so the same choice can work great one day and poorly the "
    "next. Watch for the pattern and you will spot the right moment.",
]

# 420-520 chars, always opening with "Imagine" -> the expensive class.
_VERBOSE = [
    "Imagine a library where every book can talk. When you ask a question, "
    "one of the books wakes up, reads everything it remembers, and writes "
    "you a brand new page. That is roughly what happens here: your words "
    "travel to a big computer far away, it thinks very fast using lots of "
    "electricity, and the answer races back to your screen. The longer the "
    "page you ask for, the longer that computer has to think, and the more "
    "energy and cooling water the whole round trip ends up using.",
    "Imagine a kitchen that never closes, with a chef who has read every "
    "cookbook ever written. Each question you send is an order slip, and "
    "the chef starts cooking the moment it arrives, tasting and adjusting "
    "until the dish is ready. Long, winding orders keep the stove running "
    "longer, which uses more power and more cooling water behind the "
    "scenes. Short, clear orders come out quicker and cheaper, and they "
    "are usually just as tasty when you only needed a snack.",
    "Imagine a city of tiny lights, one for every idea you have ever heard "
    "of, all connected by glowing threads. When a question arrives, a "
    "spark runs along those threads, lighting up neighborhoods one after "
    "another until a path of bright ideas spells out an answer. Keeping "
    "all those lights on takes real electricity in a real building, and "
    "fans and water keep the rooms cool while the sparks are flying. "
    "Bigger questions light up more of the city for longer.",
]

# Farm-hand advice pool, used when the caller marks the request as coming
# from the farm game.
_FARM = [
    "Check the almanac first: plant only crops that like this season, "
    "water right after planting, and harvest the moment they are ready.",
    "Watering matters most. Crops only grow while watered, so top them up "
    "before the soil dries out and you will reach harvest sooner.",
    "Save your seeds for crops that fit the season, and sell spare produce "
    "at the market when the suggested price looks good.",
    "Rotate your plots: harvest, replant the same day, and keep one eye on "
    "the lake so you never spend more water than your fields give back.",
]

_REFUSAL_TEXT = (
    "I can't help with that. Let's keep personal details private and pick "
    "a safer question to explore together."
)

_REFUSAL_PATTERNS = (
    "credit card",
    "password",
    "social security",
    "ssn",
    "home address",
    "phone number",
)

_VERBOSE_TRIGGERS = (
    "why",
    "explain",
    "story",
    "describe",
    "history",
    "what happened",
    "imagine",
    "essay",
    "tell me about",
)

# Exact-match answers for a couple of questions kids reliably ask.
# ~200 chars, same cost class as _SHORT.
_CANNED = {
    "do you need water": (
        "Not the way people do. I run on electricity, and the buildings "
        "that host me use water mostly to stay cool while they work. Every "
        "answer I give uses a little of both, so thoughtful questions help "
        "save some."
    ),
}


def _normalize(prompt: str) -> str:
    return prompt.strip().lower().rstrip("?!. ")


class MockProvider:
    """Offline provider with hash-seeded template selection.

    The same (seed, prompt) pair always yields the same answer.  Prompt
    text steers only the length class: asking for one word gets one word,
    open-ended "why/explain/story" prompts get the long "Imagine..."
    class, and requests for sensitive personal data are refused.  Cost
    instructions like "use only 0 drops" are treated as ordinary prose --
    the model cannot actually answer for free, so the mock does not
    pretend to.
    """

    name = "mock"

    def __init__(self, seed: int = 0):
        self.seed = seed

    def _pick(self, pool: list[str], prompt: str) -> str:
        digest = hashlib.sha256(f"{self.seed}:{prompt}".encode()).hexdigest()
        return pool[int(digest, 16) % len(pool)]

    def _classify(self, request: ProviderRequest) -> tuple[str, bool]:
        lowered = request.prompt.lower()
        if any(p in lowered for p in _REFUSAL_PATTERNS):
            return _REFUSAL_TEXT, True
        hint = (request.system_hint or "").lower()
        if "farm" in hint:
            return self._pick(_FARM, request.prompt), False
        if "one word" in lowered:
            return self._pick(_ONE_WORD, request.prompt), False
        canned = _CANNED.get(_normalize(request.prompt))
        if canned is not None:
            return canned, False
        if "do you like" in lowered:
            return self._pick(_MINI, request.prompt), False
        if any(t in lowered for t in _VERBOSE_TRIGGERS) or len(request.prompt) >= 60:
            return self._pick(_VERBOSE, request.prompt), False
        return self._pick(_SHORT, request.prompt), False

    def complete(self, request: ProviderRequest) -> ProviderResult:
        text, refused = self._classify(request)
        return ProviderResult(
            text=text,
            refused=refused,
            input_tokens=count_tokens(request.prompt)
            + count_tokens(request.system_hint or ""),
            output_tokens=count_tokens(text),
            latency_s=None,
            provider=self.name,
        )


class LiveProvider:
    """Chat-completions client (OpenAI-style API shape).

    Reports measured wall-clock latency so the footprint model can use the
    real number instead of the token estimate.  A content_filter finish
    reason is surfaced as a refusal result, not an error.
    """

    name = "live"

    def __init__(
        self,
        config: LiveProviderConfig,
        api_key: str,
        client: httpx.Client | None = None,
    ):
        if not api_key:
            raise ProviderAuthError("live provider requires an API key")
        self._config = config
        self._api_key = api_key
        self._client = client or httpx.Client(timeout=config.timeout_s)

    def complete(self, request: ProviderRequest) -> ProviderResult:
        messages = []
        if request.system_hint:
            messages.append({"role": "system", "content": request.system_hint})
        messages.append({"role": "user", "content": request.prompt})
        url = self._config.base_url.rstrip("/") + "/chat/completions"
        started = time.monotonic()
        try:
            response = self._client.post(
                url,
                json={"model": self._config.model, "messages": messages},
                headers={"Authorization": f"Bearer {self._api_key}"},
                timeout=self._config.timeout_s,
            )
        except httpx.TimeoutException as exc:
            raise ProviderTimeoutError(str(exc)) from exc
        except httpx.HTTPError as exc:
            raise ProviderNetworkError(str(exc)) from exc
        latency_s = time.monotonic() - started
        if response.status_code in (401, 403):
            raise ProviderAuthError(f"API rejected credentials: {response.status_code}")
        if response.status_code >= 400:
            raise ProviderNetworkError(f"API error: HTTP {response.status_code}")
        try:
            payload = response.json()
            choice = payload["choices"][0]
            text = choice["message"]["content"] or ""
            refused = choice.get("finish_reason") == "content_filter"
            usage = payload.get("usage", {})
            input_tokens = int(usage.get("prompt_tokens", count_tokens(request.prompt)))
            output_tokens = int(usage.get("completion_tokens", count_tokens(text)))
        except (KeyError, IndexError, TypeError, ValueError) as exc:
            raise ProviderNetworkError(f"malformed API response: {exc}") from exc
        return ProviderResult(
            text=text,
            refused=refused,
            input_tokens=input_tokens,
            output_tokens=output_tokens,
            latency_s=max(latency_s, 1e-6),
            provider=self.name,
        )

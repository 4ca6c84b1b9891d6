"""Optional client for an external semantic oracle (e.g. an LLM wrapper).

Wire protocol: ``POST <url>/v1/query`` with ``{"kind": ..., "payload": {...}}``;
the reply is ``{"candidates": [{"text": ..., "confidence": 0..1}, ...]}``.
Every failure is soft: callers get no candidates and carry on.
"""

from __future__ import annotations

import json
import logging
import urllib.error
import urllib.request
from dataclasses import dataclass, field
from urllib.parse import urlparse

log = logging.getLogger(__name__)

KINDS = ("expand", "checklist", "synonyms", "interpret")
DEFAULT_TIMEOUT_MS = 5000
DEFAULT_MAX_CALLS = 50
DEFAULT_MIN_CONFIDENCE = 0.5


class OracleUnavailable(Exception):
    pass


class ConfigError(ValueError):
    pass


@dataclass(frozen=True)
class OracleRequest:
    kind: str
    payload: dict

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown oracle request kind {self.kind!r}")
        if not self.payload:
            raise ValueError("oracle request payload must not be empty")


@dataclass(frozen=True)
class OracleResponse:
    candidates: tuple[tuple[str, float], ...] = ()


def check_url(url: str) -> str:
    parsed = urlparse(url)
    if parsed.scheme not in ("http", "https") or not parsed.netloc:
        raise ConfigError(f"malformed oracle URL {url!r}")
    return url.rstrip("/")


def parse_response(body: bytes) -> OracleResponse:
    try:
        data = json.loads(body)
        items = data["candidates"]
        if not isinstance(items, list):
            raise TypeError("candidates is not a list")
        out = []
        for item in items:
            text, conf = item["text"], item["confidence"]
            if not isinstance(text, str) or isinstance(conf, bool) or not isinstance(conf, (int, float)):
                raise TypeError("bad candidate")
            if not 0.0 <= conf <= 1.0:
                raise ValueError(f"confidence {conf} out of range")
            out.append((text, float(conf)))
    except (ValueError, TypeError, KeyError) as exc:
        raise OracleUnavailable(f"malformed oracle response: {exc}") from exc
    return OracleResponse(tuple(out))


def query(url: str, req: OracleRequest, timeout_ms: int = DEFAULT_TIMEOUT_MS) -> OracleResponse:
    """One POST; raises OracleUnavailable on timeout, non-2xx or a bad body."""
    endpoint = check_url(url) + "/v1/query"
    body = json.dumps({"kind": req.kind, "payload": req.payload}, sort_keys=True).encode()
    request = urllib.request.Request(endpoint, data=body, method="POST",
                                     headers={"Content-Type": "application/json"})
    try:
        with urllib.request.urlopen(request, timeout=timeout_ms / 1000) as resp:
            if not 200 <= resp.status < 300:
                raise OracleUnavailable(f"HTTP {resp.status}")
            raw = resp.read()
    except (urllib.error.URLError, OSError, ValueError) as exc:
        raise OracleUnavailable(str(exc)) from exc
    return parse_response(raw)


@dataclass
class OracleClient:
    """Caps the number of calls per run and stops after the first outage."""
    url: str
    timeout_ms: int = DEFAULT_TIMEOUT_MS
    max_calls: int = DEFAULT_MAX_CALLS
    min_confidence: float = DEFAULT_MIN_CONFIDENCE
    calls: int = 0
    dead: bool = False
    log: list = field(default_factory=list)

    def __post_init__(self):
        self.url = check_url(self.url)

    def ask(self, kind: str, payload: dict) -> OracleResponse:
        if self.dead or self.calls >= self.max_calls:
            return OracleResponse()
        self.calls += 1
        try:
            resp = query(self.url, OracleRequest(kind, payload), self.timeout_ms)
        except OracleUnavailable as exc:
            log.warning("oracle unavailable: %s", exc)
            self.dead = True
            return OracleResponse()
        self.log.append((kind, payload, resp))
        return resp

    def confident(self, resp: OracleResponse) -> list[tuple[str, float]]:
        return [(t, c) for t, c in resp.candidates if c >= self.min_confidence]

    def expand(self, identifier: str, tokens, domain: str = "") -> list[tuple[str, float]]:
        payload = {"tokens": [identifier], "parts": list(tokens)}
        if domain:
            payload["domain"] = domain
        return self.confident(self.ask("expand", payload))

    def synonyms(self, term: str, domain: str = "") -> list[tuple[str, float]]:
        payload = {"term": term}
        if domain:
            payload["domain"] = domain
        return self.confident(self.ask("synonyms", payload))

"""Model backends: deterministic scripted replay and an HTTP chat client."""

from __future__ import annotations

import json
import os
import threading
import time
from dataclasses import dataclass
from typing import Iterable, Protocol

import requests

from .errors import NonOkStatus, ReplayExhausted, TransportError
from .replay import ReplayEntry, load_replay


@dataclass(frozen=True)
class ChatRequest:
    role: str  # policy | judge | cleaner | inducer
    prompt: str
    temperature: float = 0.0
    max_tokens: int = 2048


@dataclass(frozen=True)
class ChatResponse:
    text: str
    latency_s: float
    backend_id: str


class Backend(Protocol):
    backend_id: str

    def complete(self, request: ChatRequest) -> ChatResponse: ...


class ScriptedBackend:
    """Replays stored responses positionally per role."""

    backend_id = "scripted"

    def __init__(self, entries: Iterable[ReplayEntry]):
        self._by_role: dict[str, list[str]] = {}
        for e in entries:
            self._by_role.setdefault(e.role, []).append(e.response)
        self._cursor: dict[str, int] = {}
        self._lock = threading.Lock()

    @classmethod
    def from_file(cls, path) -> "ScriptedBackend":
        return cls(load_replay(path))

    def complete(self, request: ChatRequest) -> ChatResponse:
        with self._lock:
            i = self._cursor.get(request.role, 0)
            responses = self._by_role.get(request.role, [])
            if i >= len(responses):
                raise ReplayExhausted(
                    f"no scripted response for role '{request.role}' occurrence {i} "
                    f"({len(responses)} recorded)"
                )
            self._cursor[request.role] = i + 1
        return ChatResponse(responses[i], 0.0, self.backend_id)

    def remaining(self) -> dict[str, int]:
        with self._lock:
            return {
                role: len(responses) - self._cursor.get(role, 0)
                for role, responses in self._by_role.items()
            }


class HttpBackend:
    """Chat-completion client: POST {model, messages, ...}, read first choice.

    Transient transport failures and 5xx responses are retried with
    exponential backoff (3 attempts total). Setting NO_NETWORK=1 blocks all
    use, so test suites cannot accidentally call out.
    """

    backend_id = "http"

    def __init__(self, url: str, model: str = "", key_env: str = "LLM_API_KEY",
                 timeout: float = 60.0, max_attempts: int = 3):
        self.url = url
        self.model = model or os.environ.get("LLM_MODEL", "default")
        self.key_env = key_env
        self.timeout = timeout
        self.max_attempts = max_attempts

    def complete(self, request: ChatRequest) -> ChatResponse:
        if os.environ.get("NO_NETWORK") == "1":
            raise TransportError("NO_NETWORK=1 is set; the HTTP backend is disabled")
        headers = {"Content-Type": "application/json"}
        key = os.environ.get(self.key_env)
        if key:
            headers["Authorization"] = f"Bearer {key}"
        body = {
            "model": self.model,
            "messages": [{"role": "user", "content": request.prompt}],
            "temperature": request.temperature,
            "max_tokens": request.max_tokens,
        }
        start = time.monotonic()
        last_exc: Exception | None = None
        for attempt in range(self.max_attempts):
            if attempt:
                time.sleep(0.5 * 2 ** (attempt - 1))
            try:
                resp = requests.post(self.url, headers=headers, data=json.dumps(body),
                                     timeout=self.timeout)
            except requests.RequestException as exc:
                last_exc = exc
                continue
            if resp.status_code >= 500:
                last_exc = NonOkStatus(resp.status_code, resp.text)
                continue
            if resp.status_code >= 400:
                raise NonOkStatus(resp.status_code, resp.text)
            return ChatResponse(
                self._extract_text(resp), time.monotonic() - start, self.backend_id
            )
        raise TransportError(
            f"backend unreachable after {self.max_attempts} attempts: {last_exc}"
        )

    @staticmethod
    def _extract_text(resp) -> str:
        try:
            doc = resp.json()
            return doc["choices"][0]["message"]["content"]
        except (ValueError, KeyError, IndexError, TypeError) as exc:
            raise NonOkStatus(resp.status_code, f"unexpected response shape: {exc}") from exc


class RecordingBackend:
    """Pass-through wrapper that records every response for later replay."""

    def __init__(self, inner: Backend):
        self.inner = inner
        self.backend_id = inner.backend_id
        self._by_role: dict[str, list[str]] = {}
        self._lock = threading.Lock()

    def complete(self, request: ChatRequest) -> ChatResponse:
        response = self.inner.complete(request)
        with self._lock:
            self._by_role.setdefault(request.role, []).append(response.text)
        return response

    def entries(self) -> list:
        with self._lock:
            return [
                ReplayEntry(role, i, text)
                for role in sorted(self._by_role)
                for i, text in enumerate(self._by_role[role])
            ]


def make_backend(descriptor: str) -> Backend:
    """Build a backend from a CLI descriptor: scripted:FILE or http:URL."""
    kind, sep, rest = descriptor.partition(":")
    if not sep or not rest:
        raise ValueError(f"backend descriptor must be scripted:FILE or http:URL, got {descriptor!r}")
    if kind == "scripted":
        return ScriptedBackend.from_file(rest)
    if kind == "http":
        return HttpBackend(rest)
    raise ValueError(f"unknown backend kind '{kind}'")

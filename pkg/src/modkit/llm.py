"""LLM provider abstraction: a chat-completion exchange of one system and
one user message returning raw text.

The HTTP client speaks the common chat-completions wire shape and is
configured from :class:`LLMProviderConfig`; tests use the function-backed
doubles at the bottom instead of the network.
"""

from __future__ import annotations

import json
import os
import time
from dataclasses import dataclass
from typing import Callable, Mapping, Optional, Protocol

import httpx

from .errors import ProviderError


class LLMProvider(Protocol):
    def complete(self, system: str, user: str) -> str:
        """Send one system+user exchange, return the completion text."""
        ...


@dataclass(frozen=True)
class LLMProviderConfig:
    endpoint: str = ""
    model: str = "gpt-4-1106-preview"
    api_key_env: str = "MODKIT_LLM_API_KEY"
    timeout: float = 30.0
    max_retries: int = 2
    batch_size: int = 10
    max_parallel: int = 4
    seed: Optional[int] = 0

    def __post_init__(self):
        if self.batch_size < 1:
            raise ValueError("batch_size must be >= 1")
        if self.max_retries < 0:
            raise ValueError("max_retries must be >= 0")

    @classmethod
    def from_json(cls, record: Mapping) -> "LLMProviderConfig":
        known = {
            "endpoint", "model", "api_key_env", "timeout",
            "max_retries", "batch_size", "max_parallel", "seed",
        }
        return cls(**{k: v for k, v in record.items() if k in known})


class HttpChatProvider:
    """Chat-completions HTTP client with bounded retries.

    Temperature is pinned to 0, and the configured seed is forwarded so
    repeated runs stay as stable as the backing model allows.
    """

    def __init__(self, config: LLMProviderConfig, client: Optional[httpx.Client] = None):
        self.config = config
        self._client = client or httpx.Client(timeout=config.timeout)

    def complete(self, system: str, user: str) -> str:
        payload: dict = {
            "model": self.config.model,
            "messages": [
                {"role": "system", "content": system},
                {"role": "user", "content": user},
            ],
            "temperature": 0,
        }
        if self.config.seed is not None:
            payload["seed"] = self.config.seed
        headers = {}
        api_key = os.environ.get(self.config.api_key_env, "")
        if api_key:
            headers["Authorization"] = f"Bearer {api_key}"

        last_error: Optional[Exception] = None
        for attempt in range(self.config.max_retries + 1):
            try:
                response = self._client.post(
                    self.config.endpoint, json=payload, headers=headers
                )
                if response.status_code >= 500:
                    raise ProviderError(f"server error {response.status_code}")
                response.raise_for_status()
                return _extract_text(response.json())
            except (httpx.HTTPError, ProviderError, KeyError, ValueError) as exc:
                last_error = exc
                if attempt < self.config.max_retries:
                    time.sleep(min(2.0 ** attempt * 0.25, 4.0))
        raise ProviderError(f"LLM request failed after retries: {last_error}")


def _extract_text(body: dict) -> str:
    choices = body.get("choices")
    if isinstance(choices, list) and choices:
        message = choices[0].get("message", {})
        content = message.get("content")
        if isinstance(content, str):
            return content
    # some servers return a bare completion field
    if isinstance(body.get("completion"), str):
        return body["completion"]
    raise ProviderError("no completion text in provider response", details={"body": body})


class FunctionProvider:
    """Test double that answers with a user-supplied function."""

    def __init__(self, fn: Callable[[str, str], str]):
        self._fn = fn
        self.calls: list[tuple[str, str]] = []

    def complete(self, system: str, user: str) -> str:
        self.calls.append((system, user))
        return self._fn(system, user)


class FailingProvider:
    """Test double that always raises, for degradation paths."""

    def __init__(self, message: str = "simulated provider timeout"):
        self.message = message
        self.calls = 0

    def complete(self, system: str, user: str) -> str:
        self.calls += 1
        raise ProviderError(self.message)

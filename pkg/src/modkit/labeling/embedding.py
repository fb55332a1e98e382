"""Text embedding behind a provider abstraction.

Production deployments point the HTTP provider at a sentence-embedding
service; the bundled hashed bag-of-words fallback keeps everything
deterministic and offline for tests and replay.
"""

from __future__ import annotations

import hashlib
import re
from dataclasses import dataclass, field
from typing import Mapping, Optional, Protocol, Sequence

import httpx
import numpy as np

from ..errors import ProviderError, ValidationError

_TOKEN_RE = re.compile(r"[A-Za-z0-9]+")


@dataclass
class Embedding:
    vector: np.ndarray
    empty: bool = False

    @property
    def dim(self) -> int:
        return int(self.vector.shape[0])

    def to_json(self) -> dict:
        return {"vector": self.vector.tolist(), "empty": self.empty}


class EmbeddingProvider(Protocol):
    provider_id: str
    dim: int

    def embed_texts(self, texts: Sequence[str]) -> list[Embedding]:
        ...


class HashedBowProvider:
    """Hashed bag-of-words: tokenize on non-alphanumerics, lowercase, hash
    each token into a fixed number of buckets, count, L2-normalize."""

    provider_id = "hashed-bow"

    def __init__(self, dim: int = 256):
        self.dim = dim

    def _bucket(self, token: str) -> int:
        digest = hashlib.blake2b(token.encode("utf-8"), digest_size=8).digest()
        return int.from_bytes(digest, "big") % self.dim

    def embed_one(self, text: str) -> Embedding:
        counts = np.zeros(self.dim, dtype=np.float64)
        for token in _TOKEN_RE.findall(text.lower()):
            counts[self._bucket(token)] += 1.0
        norm = float(np.linalg.norm(counts))
        if norm == 0.0:
            return Embedding(vector=counts, empty=True)
        return Embedding(vector=counts / norm)

    def embed_texts(self, texts: Sequence[str]) -> list[Embedding]:
        return [self.embed_one(t) for t in texts]


class HttpEmbeddingProvider:
    """POST {"texts": [...]} -> {"vectors": [[...], ...]}."""

    def __init__(
        self,
        endpoint: str,
        provider_id: str = "http",
        dim: Optional[int] = None,
        timeout: float = 30.0,
        client: Optional[httpx.Client] = None,
    ):
        self.endpoint = endpoint
        self.provider_id = provider_id
        self.dim = dim or 0
        self._client = client or httpx.Client(timeout=timeout)

    def embed_texts(self, texts: Sequence[str]) -> list[Embedding]:
        try:
            response = self._client.post(self.endpoint, json={"texts": list(texts)})
            response.raise_for_status()
            vectors = response.json()["vectors"]
        except (httpx.HTTPError, KeyError, ValueError) as exc:
            raise ProviderError(f"embedding request failed: {exc}") from exc
        if len(vectors) != len(texts):
            raise ProviderError(
                f"embedding count mismatch: sent {len(texts)}, got {len(vectors)}"
            )
        out = []
        for vec in vectors:
            arr = np.asarray(vec, dtype=np.float64)
            if not np.all(np.isfinite(arr)):
                raise ProviderError("non-finite embedding entries")
            if self.dim == 0:
                self.dim = arr.shape[0]
            out.append(Embedding(vector=arr, empty=bool(not arr.any())))
        return out


class CachingEmbedder:
    """Memoizes embeddings per text on top of any provider."""

    def __init__(self, provider: EmbeddingProvider):
        self.provider = provider
        self._cache: dict[str, Embedding] = {}

    @property
    def provider_id(self) -> str:
        return self.provider.provider_id

    @property
    def dim(self) -> int:
        return self.provider.dim

    def embed_texts(self, texts: Sequence[str]) -> list[Embedding]:
        missing = [t for t in texts if t not in self._cache]
        if missing:
            for text, emb in zip(missing, self.provider.embed_texts(missing)):
                self._cache[text] = emb
        return [self._cache[t] for t in texts]

    def embed_one(self, text: str) -> Embedding:
        return self.embed_texts([text])[0]


def make_embedding_provider(config: Mapping) -> EmbeddingProvider:
    """Build a provider from a config mapping ({"provider": "hashed-bow"} or
    {"provider": "http", "endpoint": ...})."""
    kind = config.get("provider", "hashed-bow")
    if kind == "hashed-bow":
        return HashedBowProvider(dim=int(config.get("dim", 256)))
    if kind == "http":
        if not config.get("endpoint"):
            raise ValidationError("http embedding provider needs an endpoint")
        return HttpEmbeddingProvider(
            endpoint=config["endpoint"],
            provider_id=config.get("id", "http"),
            dim=config.get("dim"),
            timeout=float(config.get("timeout", 30.0)),
        )
    raise ValidationError(f"unknown embedding provider: {kind}")

"""Error hierarchy with stable machine-readable codes.

Every error carries a ``code`` that survives serialization into API
responses, so clients can branch on it without parsing messages.
"""

from __future__ import annotations

from typing import Any, Optional


class ModkitError(Exception):
    code = "error"

    def __init__(self, message: str, *, details: Optional[dict] = None):
        super().__init__(message)
        self.message = message
        self.details: dict[str, Any] = details or {}

    def to_json(self) -> dict:
        return {"code": self.code, "message": self.message, "details": self.details}


class ValidationError(ModkitError):
    code = "invalid"


class NotFoundError(ModkitError):
    code = "not_found"


class ConflictError(ModkitError):
    code = "conflict"


class ProviderError(ModkitError):
    """A remote provider (LLM or embedding service) failed."""

    code = "provider_error"

from .evaluate import DEFAULT_BATCH_SIZE, evaluate, improve_description
from .mock import KeywordMockProvider, mock_provider
from .model import Prompt, PromptVerdictCache
from .render import (
    BatchParseError,
    escape_comment_text,
    parse_data_lines,
    parse_response,
    render_system_prompt,
    render_user_message,
    unescape_comment_text,
)

__all__ = [
    "BatchParseError",
    "DEFAULT_BATCH_SIZE",
    "KeywordMockProvider",
    "Prompt",
    "PromptVerdictCache",
    "escape_comment_text",
    "evaluate",
    "improve_description",
    "mock_provider",
    "parse_data_lines",
    "parse_response",
    "render_system_prompt",
    "render_user_message",
    "unescape_comment_text",
]

"""Per-prompt batched evaluation with verdict caching and union aggregation.

Each prompt is queried independently so the final explanation can name the
prompts responsible for a removal. Only (prompt version, comment) pairs
absent from the cache are sent; a failed batch is retried once and then its
unresolved comments degrade to Keep with a marker rather than failing the
whole evaluation.
"""

from __future__ import annotations

import logging
from concurrent.futures import ThreadPoolExecutor
from typing import Optional, Sequence

from ..errors import ModkitError
from ..llm import LLMProvider
from ..types import Comment, Label, Prediction
from .model import Prompt, PromptVerdictCache
from .render import parse_response, render_system_prompt, render_user_message

logger = logging.getLogger(__name__)

DEFAULT_BATCH_SIZE = 10

IMPROVE_SYSTEM_PROMPT = (
    "The user wrote a rubric describing texts they want removed by a "
    "content filter. Rephrase the rubric so that a language model can "
    "apply it precisely: keep the meaning, resolve vague wording, and "
    "answer with the rephrased rubric only."
)


def _chunks(items: Sequence, size: int):
    for i in range(0, len(items), size):
        yield items[i : i + size]


def _run_batch(
    prompt: Prompt, batch: Sequence[Comment], provider: LLMProvider
) -> dict[str, Label]:
    """Query one batch, retrying the whole batch once on failure.

    Returns whatever verdicts were recovered; absent entries mean the
    batch (or part of it) failed both attempts.
    """
    system = render_system_prompt()
    user = render_user_message(prompt, [c.text for c in batch])
    verdicts: dict[int, Label] = {}
    for attempt in (1, 2):
        try:
            raw = provider.complete(system, user)
            verdicts = parse_response(raw, expected_n=len(batch))
        except (ModkitError, OSError) as exc:
            logger.warning(
                "batch for prompt %s failed (attempt %d): %s", prompt.id, attempt, exc
            )
            verdicts = {}
            continue
        if len(verdicts) == len(batch):
            break
        logger.warning(
            "batch for prompt %s returned %d of %d verdicts (attempt %d)",
            prompt.id, len(verdicts), len(batch), attempt,
        )
    return {batch[i - 1].id: label for i, label in verdicts.items()}


def evaluate(
    prompts: Sequence[Prompt],
    comments: Sequence[Comment],
    cache: PromptVerdictCache,
    provider: Optional[LLMProvider],
    *,
    batch_size: int = DEFAULT_BATCH_SIZE,
    max_parallel: int = 1,
) -> dict[str, Prediction]:
    """Evaluate every prompt over the comments; Remove wins by union.

    With provider=None the evaluation is cache-only: pairs missing from the
    cache simply stay unresolved and degrade to Keep.
    """
    jobs = []
    for prompt in prompts:
        version = prompt.version
        pending = [c for c in comments if (version, c.id) not in cache]
        if provider is not None:
            for batch in _chunks(pending, batch_size):
                jobs.append((prompt, batch))

    def execute(job):
        prompt, batch = job
        return prompt, _run_batch(prompt, batch, provider)

    if jobs:
        if max_parallel > 1:
            with ThreadPoolExecutor(max_workers=max_parallel) as pool:
                outcomes = list(pool.map(execute, jobs))
        else:
            outcomes = [execute(job) for job in jobs]
        for prompt, verdicts in outcomes:
            version = prompt.version
            for comment_id, verdict in verdicts.items():
                cache.put(version, comment_id, verdict)

    predictions: dict[str, Prediction] = {}
    for comment in comments:
        removing: list[str] = []
        unresolved = False
        for prompt in prompts:
            verdict = cache.get(prompt.version, comment.id)
            if verdict is None:
                unresolved = True
            elif verdict is Label.REMOVE:
                removing.append(prompt.id)
        if removing:
            predictions[comment.id] = Prediction(
                decision=Label.REMOVE, explanation={"prompts": removing}
            )
        else:
            explanation = {"degraded": True} if unresolved else {}
            predictions[comment.id] = Prediction(
                decision=Label.KEEP, explanation=explanation
            )
    return predictions


def improve_description(description: str, provider: LLMProvider) -> str:
    """Provider-backed rephrasing, returned as a suggestion.

    Falls back to the original text (with a warning) on any failure; the
    caller decides whether to apply it.
    """
    if not description.strip():
        raise ValueError("description must be non-empty")
    try:
        improved = provider.complete(IMPROVE_SYSTEM_PROMPT, description).strip()
    except (ModkitError, OSError) as exc:
        logger.warning("improve_description degraded to original text: %s", exc)
        return description
    return improved or description

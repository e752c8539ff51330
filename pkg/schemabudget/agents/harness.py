"""
Episode harness: one question x format x window x client run of the agent loop.
"""

import hashlib
import logging
from typing import List, Optional

from ..core.evaluator import score_episode
from ..core.exceptions import ModelClientError
from ..models.benchmark import Benchmark, Question
from ..models.budget import DEFAULT_PROFILE, BudgetConfig, TokenCountProfile
from ..models.episode import (
    MAX_ITERATIONS,
    EpisodeError,
    EpisodeRecord,
    EpisodeStatus,
    FinalAnswer,
    HistoryTurn,
    TranscriptStep,
)
from ..models.schema import SchemaFormat, ToolCatalog
from ..services.tool_runtime import execute_tool
from .base import BaseModelClient
from .context_builder import assemble_context, trim_history

logger = logging.getLogger(__name__)


def episode_key(
    benchmark_hash: str,
    question_id: str,
    schema_format: SchemaFormat,
    window: int,
    model_id: str,
    seed: int,
    tool_count: Optional[int] = None,
) -> str:
    """Record key; unique per episode of a run grid."""
    parts = [benchmark_hash, question_id, schema_format.value, str(window), model_id, str(seed)]
    if tool_count is not None:
        parts.append(f"n{tool_count}")
    return "|".join(parts)


async def run_episode(
    benchmark: Benchmark,
    question: Question,
    schema_format: SchemaFormat,
    config: BudgetConfig,
    client: BaseModelClient,
    max_iters: int = MAX_ITERATIONS,
    profile: TokenCountProfile = DEFAULT_PROFILE,
    seed: int = 0,
    benchmark_hash: str = "",
    catalog: Optional[ToolCatalog] = None,
) -> EpisodeRecord:
    """Run the agent loop for one question.

    Overflowing contexts are recorded without calling the client. Otherwise the
    client is asked for a decision up to ``max_iters`` times; tool calls are
    executed against the benchmark and their results join the history, which is
    trimmed oldest-first to the history reservation. Client failures end the
    episode as errored.

    Args:
        benchmark: Benchmark the question belongs to
        question: Question to answer
        schema_format: Schema presentation
        config: Window and fixed reservations
        client: Model client
        max_iters: Iteration cap, at most 3
        profile: Token counter
        seed: Run seed stored in the record
        benchmark_hash: Benchmark fingerprint stored in the record key
        catalog: Catalog to present instead of the benchmark's own

    Returns:
        The scored episode record
    """
    if not 1 <= max_iters <= MAX_ITERATIONS:
        raise ValueError(f"max_iters must be between 1 and {MAX_ITERATIONS}")

    catalog = catalog or benchmark.catalog
    context = assemble_context(benchmark, question, schema_format, config, profile, catalog=catalog)
    allocation = context.allocation
    tool_count = len(catalog)
    key = episode_key(
        benchmark_hash,
        question.id,
        schema_format,
        config.window,
        client.model_id,
        seed,
        tool_count if catalog is not benchmark.catalog else None,
    )

    def finish(status: EpisodeStatus, **fields) -> EpisodeRecord:
        truncated = context.chunks[-1].text if allocation.truncated_last else None
        record = EpisodeRecord(
            key=key,
            run_id=hashlib.sha1(key.encode("utf-8")).hexdigest(),
            benchmark_hash=benchmark_hash,
            question_id=question.id,
            qtype=question.qtype,
            format=schema_format,
            window=config.window,
            model_id=client.model_id,
            seed=seed,
            tool_count=tool_count,
            allocation=allocation,
            truncated_chunk_text=truncated,
            status=status,
            **fields,
        )
        metrics = score_episode(record, question, benchmark.chunk_map())
        return record.model_copy(update={"metrics": metrics})

    if allocation.overflow:
        logger.debug(f"{question.id} {schema_format.value}@{config.window}: overflow, no model call")
        return finish(EpisodeStatus.OVERFLOW)

    history: List[HistoryTurn] = []
    transcript: List[TranscriptStep] = []
    for iteration in range(1, max_iters + 1):
        step_context = context.model_copy(update={"history": tuple(history)})
        try:
            decision = await client.decide(step_context, question)
        except ModelClientError as e:
            logger.warning(
                f"{question.id} {schema_format.value}@{config.window}: "
                f"{e.kind} error after {e.retries} retries: {e}",
                extra={"question_id": question.id, "error_kind": e.kind, "retries": e.retries},
            )
            return finish(
                EpisodeStatus.ERRORED,
                transcript=tuple(transcript),
                iterations=iteration,
                error=EpisodeError(kind=e.kind, message=str(e), retries=e.retries),
            )

        if isinstance(decision, FinalAnswer):
            transcript.append(TranscriptStep(iteration=iteration, decision=decision))
            return finish(
                EpisodeStatus.OK,
                transcript=tuple(transcript),
                final_answer=decision.text,
                iterations=iteration,
            )

        result = execute_tool(benchmark, decision)
        transcript.append(TranscriptStep(iteration=iteration, decision=decision, tool_result=result))
        history.append(
            HistoryTurn(tool_name=decision.tool_name, arguments=decision.arguments, result=result)
        )
        history = list(trim_history(history, config.history_tokens, profile))

    return finish(EpisodeStatus.ITERATION_CAP, transcript=tuple(transcript), iterations=max_iters)

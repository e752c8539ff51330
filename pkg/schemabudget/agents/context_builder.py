"""
Context assembly for one agent iteration.

For a fixed question, window and client the json and compressed contexts differ
only in the schema text and the allocation that follows from its size.
"""

from typing import Dict, List, Optional, Sequence, Tuple

from ..core.budget_planner import allocate
from ..core.compressor import render_catalog
from ..core.token_counter import count_message, count_tokens, truncate_to_tokens
from ..models.benchmark import Benchmark, Question
from ..models.budget import DEFAULT_PROFILE, BudgetConfig, TokenCountProfile
from ..models.episode import AssembledContext, HistoryTurn, PackedChunk
from ..models.schema import SchemaFormat, ToolCatalog
from ..prompts import AgentPrompts


_SCHEMA_CACHE: Dict[Tuple[int, SchemaFormat, TokenCountProfile], Tuple[ToolCatalog, str, int]] = {}
_SCHEMA_CACHE_SIZE = 32


def render_schema_block(
    catalog: ToolCatalog, schema_format: SchemaFormat, profile: TokenCountProfile = DEFAULT_PROFILE
) -> Tuple[str, int]:
    """Schema text for a format and its token count, cached per catalog object."""
    key = (id(catalog), schema_format, profile)
    cached = _SCHEMA_CACHE.get(key)
    if cached is not None and cached[0] is catalog:
        return cached[1], cached[2]

    text = render_catalog(catalog, schema_format)
    tokens = count_tokens(text, profile)
    if len(_SCHEMA_CACHE) >= _SCHEMA_CACHE_SIZE:
        _SCHEMA_CACHE.pop(next(iter(_SCHEMA_CACHE)))
    _SCHEMA_CACHE[key] = (catalog, text, tokens)
    return text, tokens


def trim_history(
    turns: Sequence[HistoryTurn], budget: int, profile: TokenCountProfile = DEFAULT_PROFILE
) -> Tuple[HistoryTurn, ...]:
    """Drop the oldest turns until the rendered history fits ``budget`` tokens."""
    kept = list(turns)
    while kept and count_message([turn.render() for turn in kept], profile) > budget:
        kept.pop(0)
    return tuple(kept)


def _chunk_cost(text: str, stored_cost: int, profile: TokenCountProfile) -> int:
    if profile == DEFAULT_PROFILE:
        return stored_cost
    return count_tokens(text, profile)


def assemble_context(
    benchmark: Benchmark,
    question: Question,
    schema_format: SchemaFormat,
    config: BudgetConfig,
    profile: TokenCountProfile = DEFAULT_PROFILE,
    history: Sequence[HistoryTurn] = (),
    catalog: Optional[ToolCatalog] = None,
) -> AssembledContext:
    """Build the context one model call sees.

    Args:
        benchmark: Source of the corpus and rankings
        question: Question being answered
        schema_format: How the catalog is presented
        config: Window and fixed reservations
        profile: Token counter
        history: Tool turns so far, already trimmed to the history reservation
        catalog: Catalog to present instead of the benchmark's own

    Returns:
        The assembled context; overflow is a valid state with no chunks
    """
    catalog = catalog or benchmark.catalog
    schema_text, schema_tokens = render_schema_block(catalog, schema_format, profile)
    query_tokens = count_tokens(question.text, profile)

    chunk_map = benchmark.chunk_map()
    ranked = [
        (chunk_id, _chunk_cost(chunk_map[chunk_id].text, chunk_map[chunk_id].token_cost, profile))
        for chunk_id in benchmark.retrieval_rank[question.id]
    ]
    allocation = allocate(config.with_query(query_tokens), schema_tokens, ranked)

    packed: List[PackedChunk] = []
    costs = dict(ranked)
    for chunk_id in allocation.packed_chunk_ids:
        text = chunk_map[chunk_id].text
        if allocation.truncated_last:
            packed.append(
                PackedChunk(
                    id=chunk_id,
                    text=truncate_to_tokens(text, allocation.packed_tokens, profile),
                    token_cost=allocation.packed_tokens,
                    truncated=True,
                )
            )
        else:
            packed.append(PackedChunk(id=chunk_id, text=text, token_cost=costs[chunk_id]))

    return AssembledContext(
        format=schema_format,
        system_text=AgentPrompts.SYSTEM_PROMPT,
        schema_text=schema_text,
        schema_tokens=schema_tokens,
        tool_names=catalog.tool_names,
        chunks=tuple(packed),
        history=tuple(history),
        question_text=question.text,
        allocation=allocation,
    )


def render_documents(context: AssembledContext) -> str:
    """Packed chunks as ``[chunk_id] text`` blocks."""
    return "\n\n".join(
        AgentPrompts.CHUNK_TEMPLATE.format(chunk_id=chunk.id, text=chunk.text)
        for chunk in context.chunks
    )

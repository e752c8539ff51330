"""Context-window allocation between fixed reservations, schemas and retrieval chunks."""

from typing import List, Sequence, Tuple

from ..models.budget import BudgetAllocation, BudgetConfig


def rag_budget(config: BudgetConfig, schema_tokens: int) -> int:
    """Signed retrieval budget: window minus system, schema, history and output."""
    return config.window - config.fixed_reservation - schema_tokens


def allocate(
    config: BudgetConfig,
    schema_tokens: int,
    chunks: Sequence[Tuple[str, int]],
) -> BudgetAllocation:
    """Pack ranked chunks into what is left of the window.

    Chunks are taken in rank order until the first one that does not fit. When
    not even the top-ranked chunk fits but some slack remains, that chunk is
    tail-truncated to the slack.

    Args:
        config: Window and reservations, including the query length
        schema_tokens: Token cost of the rendered tool schemas
        chunks: (chunk id, token cost) pairs, best rank first

    Returns:
        The allocation; overflow when no slack remains after the query
    """
    budget = rag_budget(config, schema_tokens)
    slack = budget - config.query_tokens
    if slack <= 0:
        return BudgetAllocation(
            window=config.window,
            schema_tokens=schema_tokens,
            rag_budget=budget,
            slack=slack,
            k=0,
            overflow=True,
        )

    packed: List[str] = []
    used = 0
    for chunk_id, cost in chunks:
        if cost <= 0:
            raise ValueError(f"chunk {chunk_id} has non-positive token cost {cost}")
        if used + cost > slack:
            break
        packed.append(chunk_id)
        used += cost

    truncated = False
    if not packed and chunks:
        packed = [chunks[0][0]]
        used = slack
        truncated = True

    return BudgetAllocation(
        window=config.window,
        schema_tokens=schema_tokens,
        rag_budget=budget,
        slack=slack,
        k=len(packed),
        packed_chunk_ids=tuple(packed),
        packed_tokens=used,
        truncated_last=truncated,
        overflow=False,
    )


def chunk_capacity(config: BudgetConfig, schema_tokens: int, mean_chunk: float) -> int:
    """Estimated chunk count floor(max(slack, 0) / mean chunk cost)."""
    if mean_chunk <= 0:
        raise ValueError("mean chunk cost must be positive")
    slack = rag_budget(config, schema_tokens) - config.query_tokens
    return int(max(slack, 0) // mean_chunk)

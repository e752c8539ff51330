"""
Frontier sweeps: where growing tool catalogs start to cost retrieval chunks and
where they overflow the window, plus harness runs at fixed catalog sizes.
"""

import asyncio
import logging
import math
from abc import ABC, abstractmethod
from itertools import accumulate
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field

from ..agents.base import BaseModelClient
from ..agents.harness import run_episode
from ..core.budget_planner import allocate
from ..core.compressor import compress_tool
from ..core.schema_model import serialize_tool
from ..core.token_counter import byte_length, tokens_for_bytes
from ..models.analysis import FrontierRow, ThresholdReport
from ..models.benchmark import Benchmark
from ..models.budget import DEFAULT_PROFILE, BudgetConfig, TokenCountProfile
from ..models.episode import EpisodeRecord
from ..models.schema import CompressionProfile, SchemaFormat, ToolCatalog
from .benchmark_generator import generate_frontier_catalog

logger = logging.getLogger(__name__)

FRONTIER_WINDOW = 200_000
FRONTIER_TOOL_COUNTS = (50, 100, 200, 300, 500, 800)


class FrontierCorpusSpec(BaseModel):
    """Uniform retrieval corpus used by threshold sweeps."""

    model_config = ConfigDict(frozen=True)

    n_chunks: int = Field(default=500, ge=1)
    chunk_tokens: int = Field(default=350, ge=1)

    def ranked(self) -> List[Tuple[str, int]]:
        return [(f"f{i:04d}", self.chunk_tokens) for i in range(self.n_chunks)]


class ToolCostModel(ABC):
    """Schema token cost of the first n tools of a catalog family."""

    @abstractmethod
    def schema_tokens(self, n: int, schema_format: SchemaFormat) -> int:
        """Tokens of the rendered schema for the first ``n`` tools."""

    @abstractmethod
    def per_tool_stats(self, n: int, schema_format: SchemaFormat) -> Tuple[float, float, float]:
        """(mean, min, max) per-tool tokens over the first ``n`` tools."""

    def savings(self, n: int, schema_format: SchemaFormat) -> float:
        if schema_format == SchemaFormat.JSON:
            return 0.0
        json_tokens = self.schema_tokens(n, SchemaFormat.JSON)
        return (json_tokens - self.schema_tokens(n, schema_format)) / json_tokens


class ConstantCostModel(ToolCostModel):
    """Every tool costs the same; compressed formats remove a fixed fraction."""

    def __init__(self, json_per_tool: float = 405.0, compressed_savings: float = 0.5):
        if json_per_tool <= 0:
            raise ValueError("per-tool cost must be positive")
        if not 0 <= compressed_savings < 1:
            raise ValueError("savings must be in [0, 1)")
        self.json_per_tool = json_per_tool
        self.compressed_savings = compressed_savings

    def _per_tool(self, schema_format: SchemaFormat) -> float:
        if schema_format == SchemaFormat.JSON:
            return self.json_per_tool
        return self.json_per_tool * (1 - self.compressed_savings)

    def schema_tokens(self, n: int, schema_format: SchemaFormat) -> int:
        return math.ceil(n * self._per_tool(schema_format) - 1e-9)

    def per_tool_stats(self, n: int, schema_format: SchemaFormat) -> Tuple[float, float, float]:
        cost = self._per_tool(schema_format)
        return cost, cost, cost


class CatalogCostModel(ToolCostModel):
    """Costs measured on a generated frontier catalog via byte prefix sums."""

    def __init__(
        self, n_max: int, seed: int = 0, counter: TokenCountProfile = DEFAULT_PROFILE,
        catalog: Optional[ToolCatalog] = None,
    ):
        self.catalog = catalog or generate_frontier_catalog(n_max, seed)
        self.counter = counter
        self._bytes: Dict[SchemaFormat, List[int]] = {}
        self._prefix: Dict[SchemaFormat, List[int]] = {}
        for schema_format in SchemaFormat:
            if schema_format == SchemaFormat.JSON:
                sizes = [byte_length(serialize_tool(t)) for t in self.catalog.tools]
            else:
                profile = CompressionProfile.for_format(schema_format)
                sizes = [byte_length(compress_tool(t, profile)) for t in self.catalog.tools]
            self._bytes[schema_format] = sizes
            self._prefix[schema_format] = [0, *accumulate(sizes)]

    def _check(self, n: int) -> None:
        if not 1 <= n <= len(self.catalog):
            raise ValueError(f"n must be in [1, {len(self.catalog)}], got {n}")

    def schema_tokens(self, n: int, schema_format: SchemaFormat) -> int:
        self._check(n)
        # one "\n" joiner between consecutive tools
        return tokens_for_bytes(self._prefix[schema_format][n] + n - 1, self.counter)

    def per_tool_stats(self, n: int, schema_format: SchemaFormat) -> Tuple[float, float, float]:
        self._check(n)
        tokens = [tokens_for_bytes(b, self.counter) for b in self._bytes[schema_format][:n]]
        return float(np.mean(tokens)), float(min(tokens)), float(max(tokens))


def sweep_thresholds(
    window: int,
    schema_format: SchemaFormat,
    cost_model: ToolCostModel,
    corpus: FrontierCorpusSpec = FrontierCorpusSpec(),
    n_max: int = 1000,
    granularity: int = 1,
    config: Optional[BudgetConfig] = None,
) -> ThresholdReport:
    """Find the first tool counts that lose a chunk and that overflow.

    Args:
        window: Context window in tokens
        schema_format: Format whose schema cost is swept
        cost_model: Schema cost of the first n tools
        corpus: Retrieval corpus competing for the window
        n_max: Largest tool count examined
        granularity: Step between examined tool counts
        config: Reservations; defaults to the standard ones for ``window``

    Returns:
        Thresholds, absent when not reached by ``n_max``
    """
    if n_max < 1:
        raise ValueError("n_max must be at least 1")
    if granularity < 1:
        raise ValueError("granularity must be at least 1")
    config = config or BudgetConfig(window=window)
    ranked = corpus.ranked()

    first_loss: Optional[int] = None
    overflow: Optional[int] = None
    for n in range(1, n_max + 1, granularity):
        allocation = allocate(config, cost_model.schema_tokens(n, schema_format), ranked)
        if first_loss is None and allocation.k < corpus.n_chunks:
            first_loss = n
        if allocation.overflow:
            overflow = n
            break

    mean, low, high = cost_model.per_tool_stats(n_max, schema_format)
    report = ThresholdReport(
        window=window,
        format=schema_format,
        first_chunk_loss_n=first_loss,
        complete_overflow_n=overflow,
        per_tool_mean=mean,
        per_tool_min=low,
        per_tool_max=high,
        savings=cost_model.savings(n_max, schema_format),
        n_max=n_max,
    )
    logger.info(
        f"Sweep {schema_format.value}@{window}: first loss n={first_loss}, overflow n={overflow}"
    )
    return report


def frontier_catalog(benchmark: Benchmark, n: int, distractors: ToolCatalog) -> ToolCatalog:
    """The benchmark's own tools followed by distractor tools, ``n`` in total."""
    own = benchmark.catalog.tools
    if n <= len(own):
        return ToolCatalog(tools=own[:n])
    extra = n - len(own)
    if extra > len(distractors):
        raise ValueError(f"need {extra} distractor tools, only {len(distractors)} generated")
    return ToolCatalog(tools=own + distractors.tools[:extra])


def _frontier_row(n: int, schema_format: SchemaFormat, records: Sequence[EpisodeRecord]) -> FrontierRow:
    metrics = [r.metrics for r in records if r.metrics is not None]
    return FrontierRow(
        tool_count=n,
        format=schema_format,
        n=len(metrics),
        em_pct=100.0 * float(np.mean([m.em for m in metrics])) if metrics else 0.0,
        mean_f1=float(np.mean([m.f1 for m in metrics])) if metrics else 0.0,
        mean_k=float(np.mean([m.k for m in metrics])) if metrics else 0.0,
        overflow_rate=float(np.mean([m.overflow for m in metrics])) if metrics else 0.0,
    )


async def frontier_run(
    benchmark: Benchmark,
    client: BaseModelClient,
    tool_counts: Sequence[int] = FRONTIER_TOOL_COUNTS,
    formats: Sequence[SchemaFormat] = (SchemaFormat.JSON, SchemaFormat.TSCG_CONSERVATIVE),
    window: int = FRONTIER_WINDOW,
    seed: int = 0,
    profile: TokenCountProfile = DEFAULT_PROFILE,
    benchmark_hash: str = "",
    concurrency: int = 8,
) -> Tuple[List[FrontierRow], List[EpisodeRecord]]:
    """Run every benchmark question at each catalog size and format.

    Distractor tools are generated once for the largest size and sliced, so the
    catalog at n is a prefix of the catalog at any larger n.

    Returns:
        One row per (tool count, format) and every episode record
    """
    if not tool_counts:
        raise ValueError("at least one tool count is required")
    extra = max(tool_counts) - len(benchmark.catalog)
    distractors = generate_frontier_catalog(extra, seed) if extra > 0 else ToolCatalog(tools=())
    config = BudgetConfig(window=window)
    semaphore = asyncio.Semaphore(concurrency if client.concurrency_safe else 1)

    async def one(question, schema_format, catalog) -> EpisodeRecord:
        async with semaphore:
            return await run_episode(
                benchmark,
                question,
                schema_format,
                config,
                client,
                profile=profile,
                seed=seed,
                benchmark_hash=benchmark_hash,
                catalog=catalog,
            )

    rows: List[FrontierRow] = []
    all_records: List[EpisodeRecord] = []
    for n in sorted(tool_counts):
        catalog = frontier_catalog(benchmark, n, distractors)
        for schema_format in formats:
            records = await asyncio.gather(
                *(one(q, schema_format, catalog) for q in benchmark.questions)
            )
            rows.append(_frontier_row(n, schema_format, records))
            all_records.extend(records)
            logger.info(
                f"Frontier n={n} {schema_format.value}: EM {rows[-1].em_pct:.1f}%, "
                f"overflow {rows[-1].overflow_rate:.0%}"
            )
    return rows, all_records

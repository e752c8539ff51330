"""
Experiment orchestration: fan a question x format x window grid out to a
bounded worker pool and persist every episode.
"""

import asyncio
import logging
from collections import Counter
from pathlib import Path
from typing import Dict, Optional

from pydantic import BaseModel

from ..agents.base import BaseModelClient
from ..agents.harness import episode_key, run_episode
from ..agents.oracle import OracleClient
from ..client.chat_client import http_chat_client
from ..config.settings import ClientKind, ExperimentConfig
from ..core.exceptions import ClientTransportError
from ..core.token_counter import calibrate, load_calibration_samples
from ..models.benchmark import Benchmark
from ..models.budget import TokenCountProfile
from ..models.episode import EpisodeRecord, EpisodeStatus
from .benchmark_generator import benchmark_fingerprint, generate_novatech, load_benchmark
from .record_store import RecordStore

logger = logging.getLogger(__name__)

RECORDS_FILE = "records.jsonl"


class RunSummary(BaseModel):
    """Counts of one run_experiment call."""

    records_path: str
    planned: int
    written: int
    skipped: int
    errored: int
    by_status: Dict[str, int]

    @property
    def error_rate(self) -> float:
        return self.errored / self.written if self.written else 0.0


def build_client(config: ExperimentConfig) -> BaseModelClient:
    if config.client == ClientKind.HTTP:
        return http_chat_client(base_url=config.endpoint, model=config.model)
    return OracleClient(epsilon=config.epsilon, seed=config.client_seed)


def resolve_profile(config: ExperimentConfig) -> TokenCountProfile:
    """Counter profile from a calibration file if given, else from the config."""
    profile = config.counter_profile()
    if config.calibration:
        return calibrate(load_calibration_samples(config.calibration), base=profile)
    return profile


def resolve_benchmark(config: ExperimentConfig) -> Benchmark:
    if config.benchmark:
        return load_benchmark(config.benchmark)
    logger.info(f"No benchmark file given; generating NovaTech with seed {config.seed}")
    return generate_novatech(config.seed, config.gold_rank_bound)


async def run_experiment_async(
    config: ExperimentConfig,
    client: Optional[BaseModelClient] = None,
    benchmark: Optional[Benchmark] = None,
) -> RunSummary:
    """Run every missing episode of the grid and append it to the records file.

    Existing records (same key) are skipped, so an interrupted run resumes
    where it stopped.

    Raises:
        BenchmarkValidationError: The benchmark cannot be loaded
        ClientTransportError: Every new episode failed with a transport error
    """
    benchmark = benchmark or resolve_benchmark(config)
    profile = resolve_profile(config)
    owns_client = client is None
    client = client or build_client(config)
    benchmark_hash = benchmark_fingerprint(benchmark)
    store = RecordStore(Path(config.out) / RECORDS_FILE)
    semaphore = asyncio.Semaphore(config.concurrency if client.concurrency_safe else 1)

    async def one(question, schema_format, window) -> EpisodeRecord:
        async with semaphore:
            record = await run_episode(
                benchmark,
                question,
                schema_format,
                config.budget_config(window),
                client,
                max_iters=config.max_iters,
                profile=profile,
                seed=config.seed,
                benchmark_hash=benchmark_hash,
            )
        await store.append(record)
        return record

    tasks = []
    planned = skipped = 0
    for window in config.windows:
        for schema_format in config.formats:
            for question in benchmark.questions:
                planned += 1
                key = episode_key(
                    benchmark_hash, question.id, schema_format, window, client.model_id, config.seed
                )
                if key in store:
                    skipped += 1
                    continue
                tasks.append(one(question, schema_format, window))

    logger.info(
        f"Run started: {planned} episodes planned, {skipped} already recorded, "
        f"client {client.model_id}"
    )
    try:
        records = await asyncio.gather(*tasks)
    finally:
        if owns_client:
            await client.close()

    statuses = Counter(record.status.value for record in records)
    errored = statuses.get(EpisodeStatus.ERRORED.value, 0)
    summary = RunSummary(
        records_path=str(store.path),
        planned=planned,
        written=len(records),
        skipped=skipped,
        errored=errored,
        by_status=dict(statuses),
    )
    logger.info(
        f"Run finished: {summary.written} written, {summary.skipped} skipped, "
        f"error rate {summary.error_rate:.1%}"
    )

    called = [r for r in records if r.status != EpisodeStatus.OVERFLOW]
    if called and all(r.error is not None and r.error.kind != "malformed" for r in called):
        raise ClientTransportError(f"all {len(called)} model calls failed to reach the endpoint")
    return summary


def run_experiment(config: ExperimentConfig, client: Optional[BaseModelClient] = None) -> RunSummary:
    """Synchronous wrapper around ``run_experiment_async``."""
    return asyncio.run(run_experiment_async(config, client))

import asyncio

import numpy as np
import pytest

from schemabudget.agents.base import BaseModelClient
from schemabudget.agents.harness import run_episode
from schemabudget.agents.oracle import OracleClient
from schemabudget.config.settings import ExperimentConfig
from schemabudget.core.curvefit import fit_ck, marginal_gain, points_from_records
from schemabudget.core.exceptions import ClientTransportError
from schemabudget.core.stats import paired_comparison, pearson_r
from schemabudget.models.budget import BudgetConfig
from schemabudget.models.episode import EpisodeStatus
from schemabudget.models.schema import SchemaFormat
from schemabudget.services.experiment_runner import RECORDS_FILE, run_experiment_async
from schemabudget.services.record_store import load_records
from schemabudget.services.reports import build_report

JSON = SchemaFormat.JSON
CONSERVATIVE = SchemaFormat.TSCG_CONSERVATIVE


class UnreachableClient(BaseModelClient):
    def __init__(self):
        super().__init__("unreachable")

    async def decide(self, context, question):
        raise ClientTransportError("connection refused", retries=3)


@pytest.fixture(scope="module")
def oracle_run(novatech, tmp_path_factory):
    out = tmp_path_factory.mktemp("oracle-run")
    config = ExperimentConfig(out=str(out))
    summary = asyncio.run(run_experiment_async(config, benchmark=novatech))
    return config, summary, load_records(out / RECORDS_FILE)


def select(records, window, schema_format):
    chosen = [r for r in records if r.window == window and r.format == schema_format]
    return sorted(chosen, key=lambda r: r.question_id)


def em_values(records):
    return [r.metrics.em for r in records]


def test_run_writes_the_whole_grid(oracle_run):
    _, summary, records = oracle_run
    assert summary.planned == summary.written == 600
    assert summary.errored == 0
    assert len(records) == 600
    assert len({r.key for r in records}) == 600


@pytest.mark.asyncio
async def test_rerun_skips_recorded_episodes(oracle_run, novatech):
    config, _, _ = oracle_run
    summary = await run_experiment_async(config, benchmark=novatech)
    assert summary.written == 0
    assert summary.skipped == 600


def test_binary_enablement_at_8k(oracle_run):
    _, _, records = oracle_run
    json_records = select(records, 8192, JSON)
    tscg_records = select(records, 8192, CONSERVATIVE)

    assert all(r.status == EpisodeStatus.OVERFLOW for r in json_records)
    assert sum(em_values(json_records)) == 0
    assert np.mean(em_values(tscg_records)) >= 0.25
    comparison = paired_comparison(em_values(json_records), em_values(tscg_records))
    assert comparison.p_value < 0.01

    table = build_report("enablement", records)
    (row,) = table.rows
    assert row[table.columns.index("json_em")] == 0
    assert row[table.columns.index("p")] < 0.01


@pytest.mark.parametrize("window", [16384, 32768])
def test_no_difference_once_gold_is_covered(oracle_run, window):
    _, _, records = oracle_run
    json_em = em_values(select(records, window, JSON))
    assert json_em == em_values(select(records, window, CONSERVATIVE))


def test_first_chunk_dominates_the_fitted_curve(oracle_run):
    _, _, records = oracle_run
    fit = fit_ck(points_from_records(records))
    assert fit.lam >= 5
    assert marginal_gain(fit, 1) > 5 * marginal_gain(fit, 2)


@pytest.mark.asyncio
async def test_distractors_dilute_oracle_answers(novatech):
    async def em_and_k(client, window, schema_format):
        config = BudgetConfig(window=window)
        records = await asyncio.gather(
            *(run_episode(novatech, q, schema_format, config, client) for q in novatech.questions)
        )
        return np.mean([r.metrics.em for r in records]), np.mean([r.allocation.k for r in records])

    chunk_deltas, em_deltas = [], []
    for seed in range(10):
        client = OracleClient(epsilon=0.02, seed=seed)
        for window in (16384, 32768):
            em_json, k_json = await em_and_k(client, window, JSON)
            em_tscg, k_tscg = await em_and_k(client, window, CONSERVATIVE)
            chunk_deltas.append(k_tscg - k_json)
            em_deltas.append(em_tscg - em_json)
            if seed == 0 and window == 16384:
                assert k_json < k_tscg
                assert em_tscg < em_json

    assert pearson_r(chunk_deltas, em_deltas) < 0


@pytest.mark.asyncio
async def test_unreachable_endpoint_fails_the_run(novatech, tmp_path):
    config = ExperimentConfig(out=str(tmp_path), windows=[8192, 16384], formats=[JSON])
    with pytest.raises(ClientTransportError):
        await run_experiment_async(config, client=UnreachableClient(), benchmark=novatech)
    records = load_records(tmp_path / RECORDS_FILE)
    assert len(records) == 200
    assert all(r.status == EpisodeStatus.ERRORED for r in records if r.window == 16384)
    assert all(r.status == EpisodeStatus.OVERFLOW for r in records if r.window == 8192)


@pytest.mark.asyncio
async def test_dilution_seeds_share_an_output_directory(novatech, tmp_path):
    def config(client_seed):
        return ExperimentConfig(
            out=str(tmp_path), windows=[16384], formats=[JSON], epsilon=0.02, client_seed=client_seed
        )

    first = await run_experiment_async(config(0), benchmark=novatech)
    second = await run_experiment_async(config(1), benchmark=novatech)
    again = await run_experiment_async(config(1), benchmark=novatech)

    assert first.written == second.written == 100
    assert again.written == 0 and again.skipped == 100
    records = load_records(tmp_path / RECORDS_FILE)
    assert sorted({r.model_id for r in records}) == ["oracle-eps0.02-s0", "oracle-eps0.02-s1"]

import pytest

from schemabudget.agents.oracle import OracleClient
from schemabudget.models.schema import SchemaFormat, ToolCatalog
from schemabudget.services.sweeps import (
    FRONTIER_WINDOW,
    CatalogCostModel,
    ConstantCostModel,
    FrontierCorpusSpec,
    frontier_catalog,
    frontier_run,
    sweep_thresholds,
)

JSON = SchemaFormat.JSON
CONSERVATIVE = SchemaFormat.TSCG_CONSERVATIVE


@pytest.fixture(scope="module")
def measured(frontier_1000):
    return CatalogCostModel(1000, catalog=frontier_1000)


def test_constant_cost_thresholds():
    model = ConstantCostModel(405, 0.5)
    json_report = sweep_thresholds(FRONTIER_WINDOW, JSON, model)
    tscg_report = sweep_thresholds(FRONTIER_WINDOW, CONSERVATIVE, model)

    assert json_report.complete_overflow_n == 488
    assert json_report.first_chunk_loss_n == 56
    assert tscg_report.complete_overflow_n == 976
    assert tscg_report.first_chunk_loss_n == 112
    assert tscg_report.savings == pytest.approx(0.5)
    assert tscg_report.per_tool_mean == pytest.approx(202.5)


def test_unreached_thresholds_are_absent():
    report = sweep_thresholds(FRONTIER_WINDOW, JSON, ConstantCostModel(405, 0.5), n_max=40)
    assert report.first_chunk_loss_n is None
    assert report.complete_overflow_n is None


def test_coarse_granularity_never_reports_earlier():
    model = ConstantCostModel(405, 0.5)
    fine = sweep_thresholds(FRONTIER_WINDOW, JSON, model)
    coarse = sweep_thresholds(FRONTIER_WINDOW, JSON, model, granularity=10)
    assert coarse.complete_overflow_n >= fine.complete_overflow_n
    assert coarse.complete_overflow_n - fine.complete_overflow_n < 10


def test_small_corpus_is_lost_later():
    model = ConstantCostModel(405, 0.5)
    report = sweep_thresholds(FRONTIER_WINDOW, JSON, model, FrontierCorpusSpec(n_chunks=40))
    assert report.first_chunk_loss_n > 56
    assert report.first_chunk_loss_n <= report.complete_overflow_n


def test_measured_thresholds_scale_with_savings(measured):
    json_report = sweep_thresholds(FRONTIER_WINDOW, JSON, measured)
    tscg_report = sweep_thresholds(FRONTIER_WINDOW, CONSERVATIVE, measured)
    savings = tscg_report.savings

    assert 0.44 <= savings <= 0.52
    assert tscg_report.complete_overflow_n >= 800
    ratio = tscg_report.complete_overflow_n / json_report.complete_overflow_n
    assert ratio == pytest.approx(1 / (1 - savings), rel=0.02)


def test_measured_per_tool_costs(measured):
    mean, low, high = measured.per_tool_stats(1000, JSON)
    assert low >= 375
    assert 390 <= mean <= 430
    assert high <= 500
    with pytest.raises(ValueError):
        measured.schema_tokens(0, JSON)


def test_frontier_catalog_starts_with_benchmark_tools(novatech, frontier_1000):
    catalog = frontier_catalog(novatech, 50, frontier_1000)
    assert len(catalog) == 50
    assert catalog.tools[:28] == novatech.catalog.tools
    assert frontier_catalog(novatech, 10, frontier_1000).tools == novatech.catalog.tools[:10]
    with pytest.raises(ValueError):
        frontier_catalog(novatech, 100, ToolCatalog(tools=frontier_1000.tools[:5]))


@pytest.mark.asyncio
async def test_oracle_frontier_run(novatech):
    rows, records = await frontier_run(novatech, OracleClient(), tool_counts=(50, 300, 500, 800))
    em = {(row.tool_count, row.format): row.em_pct for row in rows}

    assert len(records) == 4 * 2 * 100
    for n in (500, 800):
        assert em[(n, JSON)] == 0
        assert em[(n, CONSERVATIVE)] > 0
    for n in (50, 300):
        assert em[(n, JSON)] == em[(n, CONSERVATIVE)]
    assert all(r.key.endswith(f"|n{r.tool_count}") for r in records)

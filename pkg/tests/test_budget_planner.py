import numpy as np
import pytest

from schemabudget.core.budget_planner import allocate, chunk_capacity, rag_budget
from schemabudget.models.budget import BudgetConfig

CORPUS = [(f"doc-{i:03d}", 350) for i in range(1, 41)]


def test_fixed_reservation_defaults():
    config = BudgetConfig(window=8192)
    assert config.fixed_reservation == 2362
    assert rag_budget(config, 5500) == 330


def test_json_catalog_overflows_small_window():
    allocation = allocate(BudgetConfig(window=8192, query_tokens=30), 11_000, CORPUS)
    assert allocation.overflow
    assert allocation.k == 0
    assert allocation.packed_chunk_ids == ()
    assert allocation.rag_budget == -5170
    assert allocation.slack == -5200


def test_top_chunk_is_truncated_to_the_slack():
    allocation = allocate(BudgetConfig(window=8192), 5500, CORPUS)
    assert not allocation.overflow
    assert allocation.k == 1
    assert allocation.packed_chunk_ids == ("doc-001",)
    assert allocation.truncated_last
    assert allocation.packed_tokens == 330


def test_large_window_packs_the_whole_corpus():
    allocation = allocate(BudgetConfig(window=32768), 11_295, CORPUS)
    assert allocation.k == 40
    assert allocation.packed_tokens == 14_000
    assert not allocation.truncated_last


def test_packing_stops_at_first_misfit():
    config = BudgetConfig(window=1000, system_tokens=0, history_tokens=0, output_tokens=0)
    allocation = allocate(config, 800, [("a", 100), ("b", 300), ("c", 50)])
    assert allocation.packed_chunk_ids == ("a",)
    assert allocation.packed_tokens == 100


def test_empty_corpus_is_not_overflow():
    allocation = allocate(BudgetConfig(window=8192), 1000, [])
    assert not allocation.overflow
    assert allocation.k == 0


def test_exact_fit_is_overflow():
    allocation = allocate(BudgetConfig(window=8192, query_tokens=30), 8192 - 2362 - 30, CORPUS)
    assert allocation.overflow
    assert allocation.slack == 0


def test_non_positive_chunk_cost_is_rejected():
    with pytest.raises(ValueError):
        allocate(BudgetConfig(window=8192), 100, [("a", 0)])


def test_budget_is_zero_sum():
    rng = np.random.default_rng(3)
    for _ in range(200):
        window = int(rng.integers(4000, 40_000))
        schema = int(rng.integers(0, 20_000))
        config = BudgetConfig(window=window, query_tokens=int(rng.integers(0, 80)))
        allocation = allocate(config, schema, CORPUS)
        assert (
            config.fixed_reservation + allocation.schema_tokens + allocation.rag_budget
            == config.window
        )
        assert allocation.overflow == (allocation.rag_budget - config.query_tokens <= 0)


def test_fewer_schema_tokens_never_pack_fewer_chunks():
    config = BudgetConfig(window=16_384, query_tokens=20)
    ks = [allocate(config, schema, CORPUS).k for schema in range(15_000, 0, -250)]
    assert ks == sorted(ks)


@pytest.mark.parametrize(
    "schema_tokens,expected",
    [(5670, 26), (11_295, 8), (16_384 - 2362, 0), (20_000, 0)],
)
def test_chunk_capacity(schema_tokens, expected):
    assert chunk_capacity(BudgetConfig(window=16_384), schema_tokens, 315) == expected

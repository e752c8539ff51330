import asyncio
import json

import pytest

from schemabudget.agents.harness import run_episode
from schemabudget.agents.oracle import OracleClient
from schemabudget.core.exceptions import BenchmarkValidationError
from schemabudget.models.budget import BudgetConfig
from schemabudget.models.schema import SchemaFormat
from schemabudget.services.record_store import RecordStore, load_records


@pytest.fixture(scope="module")
def two_records(novatech):
    async def run():
        client = OracleClient()
        config = BudgetConfig(window=16384)
        return await asyncio.gather(
            *(run_episode(novatech, q, SchemaFormat.JSON, config, client)
              for q in novatech.questions[:2])
        )

    return asyncio.run(run())


@pytest.mark.asyncio
async def test_append_skips_known_keys(tmp_path, two_records):
    store = RecordStore(tmp_path / "records.jsonl")
    first, second = two_records

    assert await store.append(first)
    assert not await store.append(first)
    assert await store.append(second)
    assert len(store) == 2
    assert first.key in store

    reopened = RecordStore(tmp_path / "records.jsonl")
    assert len(reopened) == 2
    assert not await reopened.append(second)
    assert load_records(tmp_path / "records.jsonl") == list(two_records)


@pytest.mark.asyncio
async def test_concurrent_appends_write_each_record_once(tmp_path, two_records):
    store = RecordStore(tmp_path / "records.jsonl")
    results = await asyncio.gather(*(store.append(r) for r in two_records * 5))
    assert sum(results) == 2
    assert len((tmp_path / "records.jsonl").read_text(encoding="utf-8").splitlines()) == 2


def test_missing_records_file(tmp_path):
    with pytest.raises(BenchmarkValidationError, match="not found"):
        load_records(tmp_path / "absent.jsonl")


def test_malformed_line(tmp_path, two_records):
    path = tmp_path / "records.jsonl"
    path.write_text(two_records[0].model_dump_json() + "\n{broken\n", encoding="utf-8")
    with pytest.raises(BenchmarkValidationError, match=":2: malformed"):
        load_records(path)


def test_unknown_schema_version(tmp_path, two_records):
    data = json.loads(two_records[0].model_dump_json())
    data["schema_version"] = 99
    path = tmp_path / "records.jsonl"
    path.write_text(json.dumps(data) + "\n", encoding="utf-8")
    with pytest.raises(BenchmarkValidationError, match="schema version 99"):
        load_records(path)


def test_blank_lines_are_ignored(tmp_path, two_records):
    path = tmp_path / "records.jsonl"
    path.write_text("\n" + two_records[0].model_dump_json() + "\n\n", encoding="utf-8")
    assert load_records(path) == [two_records[0]]


@pytest.mark.asyncio
async def test_reopen_drops_a_partial_final_line(tmp_path, two_records, caplog):
    first, second = two_records
    path = tmp_path / "records.jsonl"
    path.write_text(first.model_dump_json() + "\n" + second.model_dump_json()[:40], encoding="utf-8")
    with pytest.raises(BenchmarkValidationError, match=":2: malformed"):
        load_records(path)

    store = RecordStore(path)
    assert len(store) == 1
    assert "partial record" in caplog.text
    assert path.read_text(encoding="utf-8") == first.model_dump_json() + "\n"
    assert await store.append(second)
    assert load_records(path) == [first, second]


@pytest.mark.asyncio
async def test_reopen_terminates_a_complete_final_line(tmp_path, two_records):
    first, second = two_records
    path = tmp_path / "records.jsonl"
    path.write_text(first.model_dump_json(), encoding="utf-8")

    store = RecordStore(path)
    assert len(store) == 1
    assert await store.append(second)
    assert load_records(path) == [first, second]

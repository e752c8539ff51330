import json
from collections import Counter

import numpy as np
import pytest

from schemabudget.core.exceptions import BenchmarkValidationError, SchemaValidationError
from schemabudget.core.schema_model import serialize_tool
from schemabudget.core.token_counter import count_tokens
from schemabudget.models.benchmark import NOT_ANSWERABLE, QUESTION_TYPE_COUNTS, QuestionType
from schemabudget.services.benchmark_generator import (
    benchmark_document,
    benchmark_fingerprint,
    generate_frontier_catalog,
    generate_novatech,
    load_benchmark,
    save_benchmark,
)


def test_question_mix(novatech):
    counts = Counter(q.qtype for q in novatech.questions)
    assert counts == QUESTION_TYPE_COUNTS
    assert [q.id for q in novatech.questions][:2] == ["q001", "q002"]
    assert novatech.questions[-1].qtype == QuestionType.UNANSWERABLE
    unanswerable = [q for q in novatech.questions if q.qtype == QuestionType.UNANSWERABLE]
    assert all(q.gold_answer == NOT_ANSWERABLE for q in unanswerable)


def test_corpus_shape(novatech):
    assert len(novatech.chunks) == 40
    assert novatech.chunks[0].id == "doc-001"
    costs = [c.token_cost for c in novatech.chunks]
    assert all(150 <= cost <= 360 for cost in costs)
    assert sum(1 for cost in costs if cost >= 340) >= 30
    assert all(count_tokens(c.text) == c.token_cost for c in novatech.chunks)


def test_spans_live_in_their_chunks(novatech):
    chunks = novatech.chunk_map()
    for question in novatech.questions:
        for chunk_id in question.gold_chunk_ids:
            chunk = chunks[chunk_id]
            assert any(span.question_id == question.id for span in chunk.spans)
        if question.qtype == QuestionType.MULTI_HOP:
            assert 2 <= len(question.supporting_spans) <= 3


def test_gold_chunks_rank_first(novatech):
    for question in novatech.questions:
        ranking = novatech.retrieval_rank[question.id]
        assert sorted(ranking) == sorted(novatech.chunk_map())
        for chunk_id in question.gold_chunk_ids:
            assert ranking.index(chunk_id) < novatech.gold_rank_bound


def test_gold_tool_calls_fit_the_catalog(novatech):
    tools = {tool.name: tool for tool in novatech.catalog.tools}
    calls = set()
    for question in novatech.questions:
        if question.gold_tool is None:
            continue
        tool = tools[question.gold_tool.name]
        assert set(tool.required) <= set(question.gold_tool.arguments)
        calls.add((tool.name, json.dumps(question.gold_tool.arguments, sort_keys=True)))
    tool_questions = [q for q in novatech.questions if q.gold_tool]
    assert len(calls) == len(tool_questions)


def test_catalog_json_sizes(novatech):
    per_tool = [count_tokens(serialize_tool(tool)) for tool in novatech.catalog.tools]
    assert 350 <= np.mean(per_tool) <= 440


def test_same_seed_same_bytes(novatech):
    assert benchmark_document(generate_novatech(0)) == benchmark_document(novatech)


def test_different_seed_differs(novatech):
    assert benchmark_fingerprint(generate_novatech(1)) != benchmark_fingerprint(novatech)


def test_save_and_load(tmp_path, novatech):
    path = tmp_path / "benchmark.json"
    save_benchmark(novatech, path)
    loaded = load_benchmark(path)
    assert benchmark_fingerprint(loaded) == benchmark_fingerprint(novatech)


def test_load_rejects_broken_question_structure(tmp_path, novatech):
    document = json.loads(benchmark_document(novatech))
    doc_question = next(q for q in document["questions"] if q["qtype"] == "single_hop_doc")
    doc_question["gold_chunk_ids"] = []
    path = tmp_path / "broken.json"
    path.write_text(json.dumps(document), encoding="utf-8")

    with pytest.raises(BenchmarkValidationError, match="single_hop_doc"):
        load_benchmark(path)


def test_load_rejects_wrong_type_counts(tmp_path, novatech):
    document = json.loads(benchmark_document(novatech))
    document["questions"] = document["questions"][1:]
    path = tmp_path / "short.json"
    path.write_text(json.dumps(document), encoding="utf-8")

    with pytest.raises(BenchmarkValidationError, match="single_hop_doc"):
        load_benchmark(path)


def test_load_rejects_malformed_files(tmp_path):
    path = tmp_path / "bad.json"
    path.write_text("{", encoding="utf-8")
    with pytest.raises(BenchmarkValidationError, match="malformed"):
        load_benchmark(path)
    with pytest.raises(BenchmarkValidationError, match="cannot read"):
        load_benchmark(tmp_path / "absent.json")


def test_frontier_catalog_sizes(frontier_1000):
    assert len(frontier_1000) == 1000
    assert len(set(frontier_1000.tool_names)) == 1000
    per_tool = [count_tokens(serialize_tool(tool)) for tool in frontier_1000.tools[:200]]
    assert min(per_tool) >= 375
    assert 390 <= np.mean(per_tool) <= 430


def test_frontier_catalog_rejects_empty():
    with pytest.raises(SchemaValidationError):
        generate_frontier_catalog(0, 0)

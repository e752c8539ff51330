import json

import pytest

from schemabudget.agents.base import BaseModelClient
from schemabudget.agents.context_builder import assemble_context, render_documents, trim_history
from schemabudget.agents.harness import episode_key, run_episode
from schemabudget.agents.oracle import UNKNOWN_ANSWER, OracleClient, oracle_decide
from schemabudget.core.exceptions import ClientTimeoutError
from schemabudget.core.token_counter import count_tokens
from schemabudget.models.benchmark import NOT_ANSWERABLE, QuestionType
from schemabudget.models.budget import BudgetConfig
from schemabudget.models.episode import (
    EpisodeStatus,
    FinalAnswer,
    HistoryTurn,
    ToolCall,
)
from schemabudget.models.schema import SchemaFormat
from schemabudget.prompts import AgentPrompts
from schemabudget.services.tool_runtime import execute_tool

JSON = SchemaFormat.JSON
CONSERVATIVE = SchemaFormat.TSCG_CONSERVATIVE


class ScriptedClient(BaseModelClient):
    """Replays a fixed list of decisions; exceptions in the list are raised."""

    def __init__(self, script):
        super().__init__("scripted")
        self.script = list(script)
        self.calls = 0

    async def decide(self, context, question):
        self.calls += 1
        step = self.script.pop(0)
        if isinstance(step, Exception):
            raise step
        return step


def first_of(benchmark, qtype):
    return next(q for q in benchmark.questions if q.qtype == qtype)


def test_prompts_fit_the_system_reservation():
    assert count_tokens(AgentPrompts.system_message("x")) <= 350


def test_execute_tool_outcomes(novatech):
    question = first_of(novatech, QuestionType.SINGLE_HOP_DB)
    gold = question.gold_tool

    assert execute_tool(novatech, ToolCall(tool_name=gold.name, arguments=gold.arguments)) == (
        question.gold_evidence
    )
    missing = json.loads(execute_tool(novatech, ToolCall(tool_name=gold.name, arguments={})))
    assert missing["rows"] == []
    unknown = json.loads(execute_tool(novatech, ToolCall(tool_name="launch_rocket")))
    assert unknown == {"error": "unknown_tool", "tool": "launch_rocket"}


def test_context_overflows_with_json_at_8k(novatech):
    question = first_of(novatech, QuestionType.SINGLE_HOP_DOC)
    context = assemble_context(novatech, question, JSON, BudgetConfig(window=8192))
    assert context.allocation.overflow
    assert context.chunks == ()


def test_conservative_context_packs_truncated_top_chunk(novatech):
    chunks = novatech.chunk_map()
    question = next(
        q
        for q in novatech.questions
        if q.qtype == QuestionType.SINGLE_HOP_DOC and chunks[q.gold_chunk_ids[0]].token_cost >= 340
    )
    context = assemble_context(novatech, question, CONSERVATIVE, BudgetConfig(window=8192))
    allocation = context.allocation

    assert 265 <= allocation.rag_budget <= 330
    assert allocation.k == 1
    assert allocation.truncated_last
    (chunk,) = context.chunks
    assert chunk.id == question.gold_chunk_ids[0]
    assert chunk.truncated
    assert count_tokens(chunk.text) <= allocation.packed_tokens
    assert render_documents(context).startswith(f"[{chunk.id}] ")


def test_formats_differ_only_in_schema_when_nothing_is_cut(novatech):
    question = first_of(novatech, QuestionType.MULTI_HOP)
    config = BudgetConfig(window=32768)
    json_context = assemble_context(novatech, question, JSON, config)
    tscg_context = assemble_context(novatech, question, CONSERVATIVE, config)

    assert json_context.chunks == tscg_context.chunks
    assert json_context.allocation.k == 40
    assert json_context.schema_tokens > tscg_context.schema_tokens
    assert json_context.system_text == tscg_context.system_text


def test_trim_history_drops_oldest():
    turns = [HistoryTurn(tool_name=f"t{i}", result="r" * 400) for i in range(5)]
    kept = trim_history(turns, 250)
    assert [t.tool_name for t in kept] == ["t3", "t4"]
    assert trim_history(turns, 10) == ()


def test_oracle_calls_offered_gold_tool_first(novatech):
    question = first_of(novatech, QuestionType.SINGLE_HOP_DB)
    context = assemble_context(novatech, question, CONSERVATIVE, BudgetConfig(window=16384))
    decision = oracle_decide(context, question)
    gold = question.gold_tool
    assert decision == ToolCall(tool_name=gold.name, arguments=gold.arguments)


def test_oracle_answers_from_history(novatech):
    question = first_of(novatech, QuestionType.SINGLE_HOP_DB)
    context = assemble_context(
        novatech,
        question,
        CONSERVATIVE,
        BudgetConfig(window=16384),
        history=[HistoryTurn(tool_name=question.gold_tool.name, result=question.gold_evidence)],
    )
    assert oracle_decide(context, question) == FinalAnswer(text=question.gold_answer)


def test_oracle_unanswerable_and_unknown(novatech):
    config = BudgetConfig(window=16384)
    question = first_of(novatech, QuestionType.UNANSWERABLE)
    context = assemble_context(novatech, question, CONSERVATIVE, config)
    assert oracle_decide(context, question) == FinalAnswer(text=NOT_ANSWERABLE)

    db_question = first_of(novatech, QuestionType.SINGLE_HOP_DB)
    context = assemble_context(novatech, db_question, CONSERVATIVE, config)
    stale = context.model_copy(update={"history": (HistoryTurn(tool_name="x", result="none"),)})
    assert oracle_decide(stale, db_question) == FinalAnswer(text=UNKNOWN_ANSWER)


def test_oracle_dilution_is_seeded(novatech):
    question = first_of(novatech, QuestionType.SINGLE_HOP_DOC)
    context = assemble_context(novatech, question, CONSERVATIVE, BudgetConfig(window=32768))
    assert oracle_decide(context, question, epsilon=1.0) == FinalAnswer(text=UNKNOWN_ANSWER)
    assert oracle_decide(context, question, epsilon=0.3, seed=5) == oracle_decide(
        context, question, epsilon=0.3, seed=5
    )
    with pytest.raises(ValueError):
        oracle_decide(context, question, epsilon=1.5)


def test_oracle_client_ids():
    assert OracleClient().model_id == "oracle"
    assert OracleClient(seed=4).model_id == "oracle"
    assert OracleClient(epsilon=0.02).model_id == "oracle-eps0.02-s0"
    assert OracleClient(epsilon=0.02, seed=7).model_id == "oracle-eps0.02-s7"


def test_episode_key_shape():
    key = episode_key("abc", "q001", CONSERVATIVE, 8192, "oracle", 0)
    assert key == "abc|q001|tscg_conservative|8192|oracle|0"
    assert episode_key("abc", "q001", JSON, 200000, "oracle", 0, 50).endswith("|n50")


@pytest.mark.asyncio
async def test_overflow_episode_never_calls_the_model(novatech):
    question = first_of(novatech, QuestionType.SINGLE_HOP_DOC)
    client = ScriptedClient([])
    record = await run_episode(novatech, question, JSON, BudgetConfig(window=8192), client)

    assert client.calls == 0
    assert record.status == EpisodeStatus.OVERFLOW
    assert record.iterations == 0
    assert record.final_answer is None
    assert record.metrics.em == 0
    assert record.metrics.overflow == 1


@pytest.mark.asyncio
async def test_doc_question_answers_in_one_iteration(novatech):
    question = first_of(novatech, QuestionType.SINGLE_HOP_DOC)
    config = BudgetConfig(window=16384)
    record = await run_episode(novatech, question, CONSERVATIVE, config, OracleClient())

    assert record.status == EpisodeStatus.OK
    assert record.iterations == 1
    assert record.metrics.em == 1
    assert record.metrics.rag_coverage == 1.0
    assert record.metrics.tool_ok is None


@pytest.mark.asyncio
async def test_db_question_calls_the_tool_then_answers(novatech):
    question = first_of(novatech, QuestionType.SINGLE_HOP_DB)
    config = BudgetConfig(window=16384)
    record = await run_episode(novatech, question, CONSERVATIVE, config, OracleClient())

    assert record.status == EpisodeStatus.OK
    assert record.iterations == 2
    assert record.tool_calls[0].tool_name == question.gold_tool.name
    assert record.transcript[0].tool_result == question.gold_evidence
    assert record.metrics.em == 1
    assert record.metrics.tool_ok == 1


@pytest.mark.asyncio
async def test_iteration_cap(novatech):
    question = first_of(novatech, QuestionType.SINGLE_HOP_DOC)
    client = ScriptedClient([ToolCall(tool_name="launch_rocket")] * 3)
    record = await run_episode(novatech, question, CONSERVATIVE, BudgetConfig(window=16384), client)

    assert record.status == EpisodeStatus.ITERATION_CAP
    assert record.iterations == 3
    assert record.final_answer is None
    assert json.loads(record.transcript[0].tool_result)["error"] == "unknown_tool"


@pytest.mark.asyncio
async def test_client_failure_is_recorded(novatech):
    question = first_of(novatech, QuestionType.SINGLE_HOP_DOC)
    client = ScriptedClient([ClientTimeoutError("read timed out", retries=3)])
    record = await run_episode(novatech, question, CONSERVATIVE, BudgetConfig(window=16384), client)

    assert record.status == EpisodeStatus.ERRORED
    assert record.error.kind == "timeout"
    assert record.error.retries == 3
    assert record.metrics.em == 0


@pytest.mark.asyncio
async def test_max_iters_is_bounded(novatech):
    question = first_of(novatech, QuestionType.SINGLE_HOP_DOC)
    with pytest.raises(ValueError):
        await run_episode(
            novatech, question, JSON, BudgetConfig(window=8192), OracleClient(), max_iters=4
        )


@pytest.mark.asyncio
async def test_episodes_are_deterministic(novatech):
    question = first_of(novatech, QuestionType.MULTI_HOP)
    config = BudgetConfig(window=16384)
    first = await run_episode(novatech, question, JSON, config, OracleClient(), benchmark_hash="h")
    second = await run_episode(novatech, question, JSON, config, OracleClient(), benchmark_hash="h")
    assert first.model_dump_json() == second.model_dump_json()

"""Benchmark data models: corpus chunks, questions and the benchmark document."""

from enum import Enum
from typing import Any, Dict, List, Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field, model_validator

from .schema import ToolCatalog

BENCHMARK_FORMAT_VERSION = 1
NOT_ANSWERABLE = "not answerable"


class ChunkCategory(str, Enum):
    """Corpus chunk category."""

    POLICY = "policy"
    FINANCIAL = "financial"
    ORG = "org"
    PRODUCT = "product"


class QuestionType(str, Enum):
    """Question type enumeration."""

    SINGLE_HOP_DOC = "single_hop_doc"
    SINGLE_HOP_DB = "single_hop_db"
    MULTI_HOP = "multi_hop"
    TOOL_REQUIRING = "tool_requiring"
    UNANSWERABLE = "unanswerable"


QUESTION_TYPE_COUNTS: Dict[QuestionType, int] = {
    QuestionType.SINGLE_HOP_DOC: 25,
    QuestionType.SINGLE_HOP_DB: 25,
    QuestionType.MULTI_HOP: 20,
    QuestionType.TOOL_REQUIRING: 20,
    QuestionType.UNANSWERABLE: 10,
}


class SpanRef(BaseModel):
    """A supporting substring of a chunk and the question it supports."""

    model_config = ConfigDict(frozen=True)

    question_id: str
    text: str


class Chunk(BaseModel):
    """One retrieval unit."""

    model_config = ConfigDict(frozen=True)

    id: str
    text: str
    token_cost: int = Field(..., gt=0)
    category: ChunkCategory
    spans: Tuple[SpanRef, ...] = ()


class GoldTool(BaseModel):
    """The tool call that answers a question."""

    model_config = ConfigDict(frozen=True)

    name: str
    arguments: Dict[str, Any] = Field(default_factory=dict)


class Question(BaseModel):
    """One benchmark question with its gold structure."""

    model_config = ConfigDict(frozen=True)

    id: str
    qtype: QuestionType
    text: str
    gold_answer: str
    aliases: Tuple[str, ...] = ()
    gold_chunk_ids: Tuple[str, ...] = ()
    gold_tool: Optional[GoldTool] = None
    supporting_spans: Tuple[str, ...] = ()
    gold_evidence: Optional[str] = Field(
        default=None, description="Tool result record returned for the gold call"
    )

    @property
    def evidence_requirements(self) -> int:
        return len(self.gold_chunk_ids) + (1 if self.gold_tool else 0)

    @model_validator(mode="after")
    def _check_gold_structure(self) -> "Question":
        if len(self.gold_chunk_ids) > 3:
            raise ValueError(f"question {self.id}: at most 3 gold chunks")
        if self.gold_tool is not None and not self.gold_evidence:
            raise ValueError(f"question {self.id}: gold tool without evidence record")

        qtype = self.qtype
        if qtype == QuestionType.SINGLE_HOP_DOC and len(self.gold_chunk_ids) != 1:
            raise ValueError(f"question {self.id}: {qtype.value} needs exactly one gold chunk")
        if qtype in (QuestionType.SINGLE_HOP_DB, QuestionType.TOOL_REQUIRING) and not self.gold_tool:
            raise ValueError(f"question {self.id}: {qtype.value} needs a gold tool")
        if qtype == QuestionType.MULTI_HOP and not 2 <= len(self.supporting_spans) <= 3:
            raise ValueError(f"question {self.id}: {qtype.value} needs 2-3 evidence spans")
        if qtype == QuestionType.UNANSWERABLE:
            if self.gold_chunk_ids or self.gold_tool:
                raise ValueError(f"question {self.id}: unanswerable questions carry no gold")
            if self.gold_answer != NOT_ANSWERABLE:
                raise ValueError(f"question {self.id}: gold answer must be {NOT_ANSWERABLE!r}")
        return self


class Benchmark(BaseModel):
    """Tools, corpus and questions generated from one seed."""

    model_config = ConfigDict(frozen=True)

    format_version: int = BENCHMARK_FORMAT_VERSION
    seed: int
    gold_rank_bound: int = Field(default=6, ge=1)
    catalog: ToolCatalog
    chunks: Tuple[Chunk, ...]
    questions: Tuple[Question, ...]
    retrieval_rank: Dict[str, List[str]] = Field(
        ..., description="Per-question chunk ids, best rank first"
    )

    def chunk_map(self) -> Dict[str, Chunk]:
        return {chunk.id: chunk for chunk in self.chunks}

    def question(self, question_id: str) -> Question:
        for question in self.questions:
            if question.id == question_id:
                return question
        raise KeyError(question_id)

"""Agent episode models: decisions, assembled context, run records and metrics."""

from enum import Enum
from typing import Annotated, Any, Dict, Literal, Optional, Tuple, Union

from pydantic import BaseModel, ConfigDict, Field, model_validator

from .benchmark import QuestionType
from .budget import BudgetAllocation
from .schema import SchemaFormat

RECORD_SCHEMA_VERSION = 1
MAX_ITERATIONS = 3


class ToolCall(BaseModel):
    """Model asks to run a tool."""

    model_config = ConfigDict(frozen=True)

    kind: Literal["tool_call"] = "tool_call"
    tool_name: str
    arguments: Dict[str, Any] = Field(default_factory=dict)


class FinalAnswer(BaseModel):
    """Model answers the question."""

    model_config = ConfigDict(frozen=True)

    kind: Literal["final_answer"] = "final_answer"
    text: str


ModelDecision = Annotated[Union[ToolCall, FinalAnswer], Field(discriminator="kind")]


class PackedChunk(BaseModel):
    """A chunk as it appears in the prompt."""

    model_config = ConfigDict(frozen=True)

    id: str
    text: str
    token_cost: int
    truncated: bool = False


class HistoryTurn(BaseModel):
    """One tool call and its result kept in the conversation history."""

    model_config = ConfigDict(frozen=True)

    tool_name: str
    arguments: Dict[str, Any] = Field(default_factory=dict)
    result: str

    def render(self) -> str:
        return f"{self.tool_name} -> {self.result}"


class AssembledContext(BaseModel):
    """Everything one model call sees."""

    model_config = ConfigDict(frozen=True)

    format: SchemaFormat
    system_text: str
    schema_text: str
    schema_tokens: int
    tool_names: Tuple[str, ...] = ()
    chunks: Tuple[PackedChunk, ...] = ()
    history: Tuple[HistoryTurn, ...] = ()
    question_text: str
    allocation: BudgetAllocation

    @property
    def chunk_text(self) -> str:
        return "\n\n".join(chunk.text for chunk in self.chunks)

    @property
    def history_text(self) -> str:
        return "\n".join(turn.render() for turn in self.history)


class TranscriptStep(BaseModel):
    """One loop iteration: the decision and, for tool calls, the tool result."""

    model_config = ConfigDict(frozen=True)

    iteration: int = Field(..., ge=1)
    decision: ModelDecision
    tool_result: Optional[str] = None


class EpisodeStatus(str, Enum):
    """Episode outcome."""

    OK = "ok"
    OVERFLOW = "overflow"
    ITERATION_CAP = "iteration_cap"
    ERRORED = "errored"


class EpisodeError(BaseModel):
    """Client failure recorded on an episode."""

    model_config = ConfigDict(frozen=True)

    kind: Literal["transport", "timeout", "malformed"]
    message: str
    retries: int = 0


class MetricRow(BaseModel):
    """Per-episode scores."""

    model_config = ConfigDict(frozen=True)

    question_id: str
    em: int = Field(..., ge=0, le=1)
    f1: float = Field(..., ge=0.0, le=1.0)
    tool_ok: Optional[int] = Field(default=None, ge=0, le=1)
    rag_coverage: float = Field(..., ge=0.0, le=1.0)
    overflow: int = Field(..., ge=0, le=1)
    k: int = Field(..., ge=0)


class EpisodeRecord(BaseModel):
    """One question x format x window x client run."""

    model_config = ConfigDict(frozen=True)

    schema_version: int = RECORD_SCHEMA_VERSION
    key: str
    run_id: str
    benchmark_hash: str
    question_id: str
    qtype: QuestionType
    format: SchemaFormat
    window: int
    model_id: str
    seed: int
    tool_count: int
    allocation: BudgetAllocation
    truncated_chunk_text: Optional[str] = None
    transcript: Tuple[TranscriptStep, ...] = ()
    final_answer: Optional[str] = None
    iterations: int = Field(default=0, ge=0, le=MAX_ITERATIONS)
    status: EpisodeStatus
    error: Optional[EpisodeError] = None
    metrics: Optional[MetricRow] = None

    @model_validator(mode="after")
    def _check_answer_state(self) -> "EpisodeRecord":
        answered = self.status == EpisodeStatus.OK
        if answered != (self.final_answer is not None):
            raise ValueError("final answer must be present exactly for completed episodes")
        if self.status == EpisodeStatus.OVERFLOW and self.iterations != 0:
            raise ValueError("overflow episodes never call the model")
        if (self.status == EpisodeStatus.ERRORED) != (self.error is not None):
            raise ValueError("errored episodes carry an error and only they do")
        return self

    @property
    def tool_calls(self) -> Tuple[ToolCall, ...]:
        return tuple(
            step.decision for step in self.transcript if isinstance(step.decision, ToolCall)
        )

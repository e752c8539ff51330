"""Token counting and context budget models."""

from typing import Tuple

from pydantic import BaseModel, ConfigDict, Field, model_validator


class TokenCountProfile(BaseModel):
    """Byte-ratio token counter settings."""

    model_config = ConfigDict(frozen=True)

    bytes_per_token: float = Field(default=4.0, gt=0, description="UTF-8 bytes per token")
    per_message_overhead: int = Field(
        default=4, ge=0, description="Tokens added per message segment"
    )


DEFAULT_PROFILE = TokenCountProfile()


class BudgetConfig(BaseModel):
    """Fixed reservations of one context window."""

    model_config = ConfigDict(frozen=True)

    window: int = Field(..., gt=0, description="Total context window in tokens")
    system_tokens: int = Field(default=350, ge=0, description="System prompt reservation")
    history_tokens: int = Field(default=1500, ge=0, description="Conversation history reservation")
    output_tokens: int = Field(default=512, ge=0, description="Output reservation")
    query_tokens: int = Field(default=0, ge=0, description="Tokens of the user question")

    @property
    def fixed_reservation(self) -> int:
        return self.system_tokens + self.history_tokens + self.output_tokens

    def with_query(self, query_tokens: int) -> "BudgetConfig":
        return self.model_copy(update={"query_tokens": query_tokens})


class BudgetAllocation(BaseModel):
    """Outcome of splitting one window between schemas and retrieval."""

    model_config = ConfigDict(frozen=True)

    window: int
    schema_tokens: int = Field(..., ge=0)
    rag_budget: int = Field(..., description="Signed retrieval budget before the query")
    slack: int = Field(..., description="rag_budget minus query tokens")
    k: int = Field(..., ge=0, description="Number of packed chunks")
    packed_chunk_ids: Tuple[str, ...] = ()
    packed_tokens: int = Field(default=0, ge=0)
    truncated_last: bool = False
    overflow: bool = False

    @model_validator(mode="after")
    def _check_consistency(self) -> "BudgetAllocation":
        if self.k != len(self.packed_chunk_ids):
            raise ValueError("k must equal the number of packed chunk ids")
        if self.overflow != (self.slack <= 0):
            raise ValueError("overflow must hold exactly when slack is not positive")
        if self.packed_tokens > max(self.slack, 0):
            raise ValueError("packed chunks exceed the available slack")
        return self

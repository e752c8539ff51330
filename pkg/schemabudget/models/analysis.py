"""Result models for statistics, curve fits and threshold sweeps."""

from typing import Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field, model_validator

from .schema import SchemaFormat


class PairedSample(BaseModel):
    """Values of two conditions matched by question; differences are b - a."""

    model_config = ConfigDict(frozen=True)

    pairs: Tuple[Tuple[float, float], ...] = Field(..., min_length=1)

    @property
    def differences(self) -> Tuple[float, ...]:
        return tuple(b - a for a, b in self.pairs)

    @classmethod
    def from_differences(cls, differences) -> "PairedSample":
        return cls(pairs=tuple((0.0, float(d)) for d in differences))


class WilcoxonResult(BaseModel):
    model_config = ConfigDict(frozen=True)

    statistic: float
    p_value: float = Field(..., ge=0.0, le=1.0)
    n_effective: int
    method: str


class PairedComparison(BaseModel):
    """Everything a report row needs about one paired contrast."""

    model_config = ConfigDict(frozen=True)

    n: int
    mean_a: float
    mean_b: float
    delta: float
    statistic: Optional[float] = None
    p_value: Optional[float] = None
    stars: str = ""
    cohens_d: Optional[float] = None
    effect_label: Optional[str] = None
    ci_low: Optional[float] = None
    ci_high: Optional[float] = None


class SaturationFit(BaseModel):
    """Fitted C(k) = c_max * (1 - exp(-lambda * k)) + c0."""

    model_config = ConfigDict(frozen=True, populate_by_name=True)

    c_max: float = Field(..., ge=0.0, le=2.0)
    lam: float = Field(..., alias="lambda", ge=0.005, le=31.0)
    c0: float = Field(..., ge=0.0, le=0.5)
    r_squared: float = Field(..., le=1.0)
    n_points: int = Field(..., ge=0)


class ThresholdReport(BaseModel):
    """Tool counts where a format first loses chunks and where it overflows."""

    model_config = ConfigDict(frozen=True)

    window: int
    format: SchemaFormat
    first_chunk_loss_n: Optional[int] = None
    complete_overflow_n: Optional[int] = None
    per_tool_mean: float
    per_tool_min: float
    per_tool_max: float
    savings: float
    n_max: int

    @model_validator(mode="after")
    def _check_order(self) -> "ThresholdReport":
        if (
            self.first_chunk_loss_n is not None
            and self.complete_overflow_n is not None
            and self.first_chunk_loss_n > self.complete_overflow_n
        ):
            raise ValueError("first chunk loss cannot come after complete overflow")
        return self


class FrontierRow(BaseModel):
    """One (tool count, format) cell of a frontier run."""

    model_config = ConfigDict(frozen=True)

    tool_count: int
    format: SchemaFormat
    n: int
    em_pct: float
    mean_f1: float
    mean_k: float
    overflow_rate: float


class AggregateRow(BaseModel):
    """Mean metrics of one group of episodes."""

    model_config = ConfigDict(frozen=True)

    group: Tuple[str, ...]
    n: int = Field(..., ge=1)
    em_pct: float
    mean_f1: float
    tool_accuracy: Optional[float] = Field(
        default=None, description="Mean over episodes whose question has a gold tool"
    )
    coverage: float
    overflow_rate: float
    mean_k: float

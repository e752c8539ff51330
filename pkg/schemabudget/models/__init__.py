"""Data models shared across modules."""

from .analysis import (
    AggregateRow,
    FrontierRow,
    PairedComparison,
    PairedSample,
    SaturationFit,
    ThresholdReport,
    WilcoxonResult,
)
from .benchmark import (
    NOT_ANSWERABLE,
    QUESTION_TYPE_COUNTS,
    Benchmark,
    Chunk,
    ChunkCategory,
    GoldTool,
    Question,
    QuestionType,
    SpanRef,
)
from .budget import DEFAULT_PROFILE, BudgetAllocation, BudgetConfig, TokenCountProfile
from .episode import (
    MAX_ITERATIONS,
    AssembledContext,
    EpisodeError,
    EpisodeRecord,
    EpisodeStatus,
    FinalAnswer,
    HistoryTurn,
    MetricRow,
    ModelDecision,
    PackedChunk,
    ToolCall,
    TranscriptStep,
)
from .schema import (
    SCALAR_KINDS,
    CompressedCatalog,
    CompressionProfile,
    CompressionVariant,
    CoreEntry,
    ParameterSpec,
    ParamKind,
    SchemaFormat,
    StructuralCore,
    ToolCatalog,
    ToolDefinition,
)

__all__ = [
    "AggregateRow",
    "AssembledContext",
    "Benchmark",
    "BudgetAllocation",
    "BudgetConfig",
    "Chunk",
    "ChunkCategory",
    "CompressedCatalog",
    "CompressionProfile",
    "CompressionVariant",
    "CoreEntry",
    "DEFAULT_PROFILE",
    "EpisodeError",
    "EpisodeRecord",
    "EpisodeStatus",
    "FinalAnswer",
    "FrontierRow",
    "GoldTool",
    "HistoryTurn",
    "MAX_ITERATIONS",
    "MetricRow",
    "ModelDecision",
    "NOT_ANSWERABLE",
    "PackedChunk",
    "PairedComparison",
    "PairedSample",
    "ParamKind",
    "ParameterSpec",
    "QUESTION_TYPE_COUNTS",
    "Question",
    "QuestionType",
    "SCALAR_KINDS",
    "SaturationFit",
    "SchemaFormat",
    "SpanRef",
    "StructuralCore",
    "ThresholdReport",
    "TokenCountProfile",
    "ToolCall",
    "ToolCatalog",
    "ToolDefinition",
    "TranscriptStep",
    "WilcoxonResult",
]

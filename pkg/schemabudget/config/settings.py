"""Configuration settings for schema-budget-lab."""

from enum import Enum
from pathlib import Path
from typing import Any, Dict, List, Mapping, Optional

from dotenv import dotenv_values
from pydantic import BaseModel, Field, ValidationError, field_validator
from pydantic_settings import BaseSettings, SettingsConfigDict

from ..core.exceptions import ConfigError
from ..models.budget import BudgetConfig, TokenCountProfile
from ..models.episode import MAX_ITERATIONS
from ..models.schema import SchemaFormat

DEFAULT_WINDOWS = (8192, 16384, 32768)
DEFAULT_FORMATS = (SchemaFormat.JSON, SchemaFormat.TSCG_CONSERVATIVE)


class Settings(BaseSettings):
    """Environment-level defaults, read from SCHEMABUDGET_* variables and .env."""

    model_config = SettingsConfigDict(
        env_file=".env", env_prefix="SCHEMABUDGET_", case_sensitive=False, extra="ignore"
    )

    # Logging
    log_level: str = "INFO"

    # Chat-completions endpoint
    base_url: str = "http://localhost:8000/v1"
    model: str = "gpt-4o-mini"
    api_key_env: str = "OPENAI_API_KEY"
    request_timeout_seconds: float = 60.0
    max_retries: int = 3
    initial_backoff_seconds: float = 1.0

    # Runner
    concurrency: int = 8

    # Token counter
    bytes_per_token: float = 4.0
    per_message_overhead: int = 4

    # Fixed context reservations (tokens)
    system_tokens: int = 350
    history_tokens: int = 1500
    output_tokens: int = 512


settings = Settings()


class ClientKind(str, Enum):
    ORACLE = "oracle"
    HTTP = "http"


class ExperimentConfig(BaseModel):
    """One run grid: benchmark x formats x windows x one model client."""

    benchmark: Optional[str] = Field(default=None, description="Benchmark file path")
    formats: List[SchemaFormat] = Field(default_factory=lambda: list(DEFAULT_FORMATS))
    windows: List[int] = Field(default_factory=lambda: list(DEFAULT_WINDOWS))
    client: ClientKind = ClientKind.ORACLE
    epsilon: float = Field(default=0.0, ge=0.0, le=1.0, description="Oracle dilution noise")
    client_seed: int = Field(default=0, ge=0)
    endpoint: str = Field(default_factory=lambda: settings.base_url)
    model: str = Field(default_factory=lambda: settings.model)
    bytes_per_token: float = Field(default_factory=lambda: settings.bytes_per_token, gt=0)
    per_message_overhead: int = Field(default_factory=lambda: settings.per_message_overhead, ge=0)
    calibration: Optional[str] = Field(default=None, description="Calibration CSV path")
    out: str = "runs"
    seed: int = Field(default=0, ge=0)
    concurrency: int = Field(default_factory=lambda: settings.concurrency, ge=1)
    max_iters: int = Field(default=MAX_ITERATIONS, ge=1, le=MAX_ITERATIONS)
    gold_rank_bound: int = Field(default=6, ge=1)

    @field_validator("formats", "windows", mode="before")
    @classmethod
    def _split_list(cls, value: Any) -> Any:
        if isinstance(value, str):
            return [item.strip() for item in value.split(",") if item.strip()]
        return value

    @field_validator("windows")
    @classmethod
    def _positive_windows(cls, value: List[int]) -> List[int]:
        if not value or any(w <= 0 for w in value):
            raise ValueError("windows must be a non-empty list of positive integers")
        return value

    @field_validator("formats")
    @classmethod
    def _non_empty_formats(cls, value: List[SchemaFormat]) -> List[SchemaFormat]:
        if not value:
            raise ValueError("at least one format is required")
        return value

    def counter_profile(self) -> TokenCountProfile:
        return TokenCountProfile(
            bytes_per_token=self.bytes_per_token, per_message_overhead=self.per_message_overhead
        )

    def budget_config(self, window: int) -> BudgetConfig:
        return BudgetConfig(
            window=window,
            system_tokens=settings.system_tokens,
            history_tokens=settings.history_tokens,
            output_tokens=settings.output_tokens,
        )


def load_experiment_config(
    path: Optional[str] = None, overrides: Optional[Mapping[str, Any]] = None
) -> ExperimentConfig:
    """Build an ExperimentConfig from a KEY=value file and command-line overrides.

    Precedence: overrides > file > Settings defaults. ``None`` overrides are ignored.

    Raises:
        ConfigError: Missing file, unknown key or invalid value
    """
    values: Dict[str, Any] = {}
    if path:
        file_path = Path(path)
        if not file_path.exists():
            raise ConfigError(f"config file not found: {path}")
        for key, value in dotenv_values(file_path).items():
            name = key.strip().lower()
            if name not in ExperimentConfig.model_fields:
                raise ConfigError(f"{path}: unknown config key {key!r}")
            if value is not None:
                values[name] = value

    for key, value in (overrides or {}).items():
        if key not in ExperimentConfig.model_fields:
            raise ConfigError(f"unknown config key {key!r}")
        if value is not None:
            values[key] = value

    try:
        return ExperimentConfig(**values)
    except ValidationError as e:
        error = e.errors()[0]
        field = ".".join(str(p) for p in error["loc"])
        raise ConfigError(f"invalid config value for {field}: {error['msg']}") from e

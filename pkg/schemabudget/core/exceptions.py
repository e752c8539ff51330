"""
Exception hierarchy shared by every module.

CLI exit codes are derived from the class: validation-type errors exit with 2,
transport errors with 3.
"""

from typing import Optional


class SchemaBudgetError(Exception):
    """Base class for all toolkit errors."""

    exit_code: int = 2


class SchemaValidationError(SchemaBudgetError):
    """A tool definition or catalog violates the supported schema subset."""


class GrammarError(SchemaBudgetError):
    """A compressed schema line does not follow the signature grammar."""


class BenchmarkValidationError(SchemaBudgetError):
    """A benchmark document is unreadable or breaks a benchmark invariant."""


class ConfigError(SchemaBudgetError):
    """Experiment configuration is invalid."""


class StatisticsError(SchemaBudgetError):
    """Degenerate input to a statistical procedure."""


class FitError(SchemaBudgetError):
    """The saturation curve cannot be fitted to the given points."""


class PairingError(SchemaBudgetError):
    """Run records cannot be paired across formats."""


class UsageError(SchemaBudgetError):
    """Command-line usage error."""

    exit_code = 1


class ModelClientError(SchemaBudgetError):
    """Base class for model client failures recorded on an episode."""

    kind: str = "transport"
    exit_code = 3

    def __init__(self, message: str, retries: int = 0, status_code: Optional[int] = None):
        super().__init__(message)
        self.retries = retries
        self.status_code = status_code


class ClientTransportError(ModelClientError):
    """Endpoint unreachable or kept failing after all retries."""

    kind = "transport"


class ClientTimeoutError(ModelClientError):
    """Every attempt timed out."""

    kind = "timeout"


class MalformedResponseError(ModelClientError):
    """The endpoint answered with a body that is not a chat completion."""

    kind = "malformed"

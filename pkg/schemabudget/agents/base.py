"""
Base class for model clients driven by the episode harness.
"""

import logging
from abc import ABC, abstractmethod

from ..models.benchmark import Question
from ..models.episode import AssembledContext, ModelDecision


class BaseModelClient(ABC):
    """A model that turns an assembled context into one decision."""

    def __init__(self, model_id: str):
        """Initialize the client.

        Args:
            model_id: Identifier stored in run records and report rows
        """
        self.model_id = model_id
        self.logger = logging.getLogger(f"{self.__class__.__module__}.{self.__class__.__name__}")

    @abstractmethod
    async def decide(self, context: AssembledContext, question: Question) -> ModelDecision:
        """Return the next decision for a context.

        Args:
            context: Everything the model sees this iteration
            question: The benchmark question; external models must not read its gold fields

        Raises:
            ModelClientError: The model could not produce a decision
        """

    @property
    def concurrency_safe(self) -> bool:
        return True

    async def close(self) -> None:
        """Release resources held by the client."""
        return None

    async def __aenter__(self) -> "BaseModelClient":
        return self

    async def __aexit__(self, *exc_info) -> None:
        await self.close()

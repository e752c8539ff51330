"""
Chat-completions client for real model endpoints.

JSON catalogs are sent in the ``tools`` field. Compressed catalogs cannot be
expressed there, so they travel in the system message behind the grammar
legend, and the model calls a tool by replying ``CALL <name> <json>``.
"""

import asyncio
import json
import logging
import os
import re
from typing import Any, Dict, List, Optional

import httpx

from ..agents.base import BaseModelClient
from ..agents.context_builder import render_documents
from ..config.settings import settings
from ..core.exceptions import ClientTimeoutError, ClientTransportError, MalformedResponseError
from ..core.schema_model import parse_tool, tool_to_dict
from ..models.benchmark import Question
from ..models.episode import AssembledContext, FinalAnswer, ModelDecision, ToolCall
from ..models.schema import SchemaFormat
from ..prompts import AgentPrompts

logger = logging.getLogger(__name__)

_CALL_LINE = re.compile(r"^\s*CALL\s+([A-Za-z_][A-Za-z0-9_]*)(?:\s*(\S.*?))?\s*$", re.DOTALL)


def build_messages(context: AssembledContext) -> List[Dict[str, str]]:
    """System and user messages for one context."""
    compressed = context.format != SchemaFormat.JSON
    system = AgentPrompts.system_message(context.schema_text if compressed else "")
    user = AgentPrompts.user_message(
        render_documents(context), context.history_text, context.question_text
    )
    return [{"role": "system", "content": system}, {"role": "user", "content": user}]


def build_tools(context: AssembledContext) -> Optional[List[Dict[str, Any]]]:
    """``tools`` payload for JSON contexts; None for compressed formats."""
    if context.format != SchemaFormat.JSON or not context.schema_text:
        return None
    return [
        {"type": "function", "function": tool_to_dict(parse_tool(line))}
        for line in context.schema_text.split("\n")
    ]


def _parse_arguments(raw: Any) -> Dict[str, Any]:
    if isinstance(raw, dict):
        return raw
    if raw in (None, ""):
        return {}
    try:
        value = json.loads(raw)
    except (TypeError, json.JSONDecodeError) as e:
        raise MalformedResponseError(f"tool arguments are not valid JSON: {e}") from e
    if not isinstance(value, dict):
        raise MalformedResponseError("tool arguments must be a JSON object")
    return value


def parse_completion(body: Any) -> ModelDecision:
    """Map a chat-completions response body to a decision.

    Raises:
        MalformedResponseError: The body is not a chat completion
    """
    try:
        message = body["choices"][0]["message"]
    except (KeyError, IndexError, TypeError) as e:
        raise MalformedResponseError(f"response has no choices[0].message: {e}") from e
    if not isinstance(message, dict):
        raise MalformedResponseError("choices[0].message is not an object")

    tool_calls = message.get("tool_calls") or []
    if tool_calls:
        try:
            function = tool_calls[0]["function"]
            name = function["name"]
        except (KeyError, IndexError, TypeError) as e:
            raise MalformedResponseError(f"tool call without a function name: {e}") from e
        return ToolCall(tool_name=name, arguments=_parse_arguments(function.get("arguments")))

    content = message.get("content")
    if not isinstance(content, str):
        raise MalformedResponseError("message has neither tool calls nor text content")
    match = _CALL_LINE.match(content)
    if match:
        return ToolCall(tool_name=match.group(1), arguments=_parse_arguments(match.group(2)))
    return FinalAnswer(text=content.strip())


class HttpChatClient(BaseModelClient):
    """Model client for an OpenAI-compatible chat-completions endpoint."""

    def __init__(
        self,
        base_url: str,
        model: str,
        api_key: Optional[str] = None,
        timeout: float = 60.0,
        max_retries: int = 3,
        initial_backoff: float = 1.0,
        transport: Optional[httpx.AsyncBaseTransport] = None,
    ):
        """Initialize the client.

        Args:
            base_url: Endpoint root, e.g. http://localhost:8000/v1
            model: Model name sent with every request
            api_key: Bearer token; omitted from requests when empty
            timeout: Per-call timeout in seconds
            max_retries: Retries after the first attempt
            initial_backoff: Delay before the first retry; doubles per retry
            transport: Custom httpx transport (tests)
        """
        super().__init__(model)
        self.base_url = base_url.rstrip("/")
        self.model = model
        self.max_retries = max_retries
        self.initial_backoff = initial_backoff
        headers = {"Authorization": f"Bearer {api_key}"} if api_key else {}
        self._http_client = httpx.AsyncClient(timeout=timeout, headers=headers, transport=transport)

    async def decide(self, context: AssembledContext, question: Question) -> ModelDecision:
        payload: Dict[str, Any] = {"model": self.model, "messages": build_messages(context)}
        tools = build_tools(context)
        if tools:
            payload["tools"] = tools
        body = await self._post(payload)
        return parse_completion(body)

    async def _post(self, payload: Dict[str, Any]) -> Any:
        url = f"{self.base_url}/chat/completions"
        last_error: Exception = ClientTransportError("no attempt made")
        for attempt in range(self.max_retries + 1):
            if attempt:
                delay = self.initial_backoff * 2 ** (attempt - 1)
                logger.warning(f"Retrying chat completion in {delay:.2f}s ({last_error})")
                await asyncio.sleep(delay)
            try:
                response = await self._http_client.post(url, json=payload)
            except httpx.TimeoutException as e:
                last_error = ClientTimeoutError(f"request timed out: {e}", retries=attempt)
                continue
            except httpx.TransportError as e:
                last_error = ClientTransportError(f"transport failure: {e}", retries=attempt)
                continue

            if response.status_code == 429 or response.status_code >= 500:
                last_error = ClientTransportError(
                    f"HTTP {response.status_code} from {url}",
                    retries=attempt,
                    status_code=response.status_code,
                )
                continue
            if response.status_code >= 400:
                raise ClientTransportError(
                    f"HTTP {response.status_code} from {url}: {response.text[:200]}",
                    retries=attempt,
                    status_code=response.status_code,
                )
            try:
                return response.json()
            except ValueError as e:
                raise MalformedResponseError(f"response is not JSON: {e}", retries=attempt) from e
        raise last_error

    async def close(self) -> None:
        await self._http_client.aclose()


def http_chat_client(
    base_url: Optional[str] = None,
    model: Optional[str] = None,
    transport: Optional[httpx.AsyncBaseTransport] = None,
) -> HttpChatClient:
    """Client configured from settings; arguments override them."""
    return HttpChatClient(
        base_url=base_url or settings.base_url,
        model=model or settings.model,
        api_key=os.getenv(settings.api_key_env, ""),
        timeout=settings.request_timeout_seconds,
        max_retries=settings.max_retries,
        initial_backoff=settings.initial_backoff_seconds,
        transport=transport,
    )

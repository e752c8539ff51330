"""
Stub chat-completions server.

Serves ``POST /v1/chat/completions`` from a responder callable so the HTTP
client can be exercised end to end without a real model. Run standalone with
``python -m schemabudget.api.stub_server``.
"""

import json
import time
import uuid
from typing import Callable

import uvicorn
from fastapi import FastAPI

from ..config.settings import settings
from ..core.logging import get_logger, setup_logging
from ..models.episode import FinalAnswer, ModelDecision, ToolCall
from ..prompts import AgentPrompts
from .schemas import (
    ChatCompletionRequest,
    ChatCompletionResponse,
    Choice,
    FunctionCall,
    ResponseMessage,
    ResponseToolCall,
)

logger = get_logger(__name__)

Responder = Callable[[ChatCompletionRequest], ModelDecision]


def not_answerable_responder(request: ChatCompletionRequest) -> ModelDecision:
    """Default responder: always declines."""
    return FinalAnswer(text="not answerable")


def to_response(request: ChatCompletionRequest, decision: ModelDecision) -> ChatCompletionResponse:
    """Wrap a decision in the chat-completions response shape."""
    compressed = request.tools is None and AgentPrompts.GRAMMAR_LEGEND in (
        request.messages[0].content or ""
    )
    if isinstance(decision, ToolCall) and not compressed:
        message = ResponseMessage(
            tool_calls=[
                ResponseToolCall(
                    id=f"call_{uuid.uuid4().hex[:12]}",
                    function=FunctionCall(
                        name=decision.tool_name, arguments=json.dumps(decision.arguments)
                    ),
                )
            ]
        )
        finish = "tool_calls"
    elif isinstance(decision, ToolCall):
        message = ResponseMessage(
            content=f"CALL {decision.tool_name} {json.dumps(decision.arguments)}"
        )
        finish = "stop"
    else:
        message = ResponseMessage(content=decision.text)
        finish = "stop"

    return ChatCompletionResponse(
        id=f"chatcmpl-{uuid.uuid4().hex[:12]}",
        created=int(time.time()),
        model=request.model,
        choices=[Choice(message=message, finish_reason=finish)],
    )


def create_stub_app(responder: Responder = not_answerable_responder) -> FastAPI:
    """Build the stub FastAPI app around a responder."""
    app = FastAPI(
        title="schema-budget-lab stub",
        description="Chat-completions stub for offline client tests",
    )

    @app.get("/health")
    async def health():
        return {"status": "healthy"}

    @app.post("/v1/chat/completions", response_model=ChatCompletionResponse)
    async def chat_completions(request: ChatCompletionRequest) -> ChatCompletionResponse:
        decision = responder(request)
        logger.debug(f"Stub replied with {decision.kind} for model {request.model}")
        return to_response(request, decision)

    return app


app = create_stub_app()


if __name__ == "__main__":
    setup_logging(settings.log_level)
    logger.info("🚀 Starting chat-completions stub on port 8000")
    uvicorn.run(app, host="0.0.0.0", port=8000, log_level=settings.log_level.lower())

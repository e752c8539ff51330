"""
Pydantic schemas for the chat-completions wire format.

Only the fields the toolkit sends and reads are modeled; unknown request
fields are accepted and ignored.
"""

from typing import Any, Dict, List, Literal, Optional

from pydantic import BaseModel, ConfigDict, Field


class ChatMessage(BaseModel):
    """One message of a chat request."""

    model_config = ConfigDict(extra="allow")

    role: str = Field(..., description="system, user, assistant or tool")
    content: Optional[str] = Field(default=None, description="Message text")


class ChatCompletionRequest(BaseModel):
    """Schema for chat completion requests."""

    model_config = ConfigDict(extra="allow")

    model: str = Field(..., description="Model name")
    messages: List[ChatMessage] = Field(..., min_length=1)
    tools: Optional[List[Dict[str, Any]]] = Field(
        default=None, description="Function tools, each {type: function, function: schema}"
    )


class FunctionCall(BaseModel):
    name: str
    arguments: str = Field(..., description="JSON-encoded argument object")


class ResponseToolCall(BaseModel):
    id: str
    type: Literal["function"] = "function"
    function: FunctionCall


class ResponseMessage(BaseModel):
    role: Literal["assistant"] = "assistant"
    content: Optional[str] = None
    tool_calls: Optional[List[ResponseToolCall]] = None


class Choice(BaseModel):
    index: int = 0
    message: ResponseMessage
    finish_reason: str = "stop"


class ChatCompletionResponse(BaseModel):
    """Schema for chat completion responses."""

    id: str
    object: Literal["chat.completion"] = "chat.completion"
    created: int
    model: str
    choices: List[Choice]

"""Outbound clients."""

from .chat_client import HttpChatClient, http_chat_client

__all__ = ["HttpChatClient", "http_chat_client"]

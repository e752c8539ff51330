"""Prompt templates for the agent loop."""

from .system_prompts import AgentPrompts

__all__ = ["AgentPrompts"]

"""Tool-schema compression and context-budget toolkit for agentic RAG experiments."""

__version__ = "0.1.0"

"""Simulated tool runtime backed by the benchmark's gold evidence records."""

import json
import logging
from typing import Any, Dict

from ..models.benchmark import Benchmark
from ..models.episode import ToolCall

logger = logging.getLogger(__name__)


def _same_value(expected: Any, actual: Any) -> bool:
    if isinstance(expected, bool) or isinstance(actual, bool):
        return expected is actual
    if isinstance(expected, (int, float)) and isinstance(actual, (int, float)):
        return float(expected) == float(actual)
    return str(expected).strip().lower() == str(actual).strip().lower()


def _arguments_match(gold: Dict[str, Any], arguments: Dict[str, Any]) -> bool:
    return all(key in arguments and _same_value(value, arguments[key]) for key, value in gold.items())


def execute_tool(benchmark: Benchmark, call: ToolCall) -> str:
    """Run a tool call against the benchmark.

    Args:
        benchmark: Benchmark whose questions define the tool data
        call: Tool name and arguments chosen by the model

    Returns:
        The gold evidence record of the matching question, a no-rows record
        when the tool exists but nothing matches, or an error record for an
        unknown tool. Errors are returned in-band, never raised.
    """
    if call.tool_name not in benchmark.catalog.tool_names:
        logger.debug(f"Unknown tool requested: {call.tool_name}")
        return json.dumps({"error": "unknown_tool", "tool": call.tool_name})

    for question in benchmark.questions:
        gold = question.gold_tool
        if gold is None or gold.name != call.tool_name:
            continue
        if _arguments_match(gold.arguments, call.arguments):
            return question.gold_evidence or ""

    return json.dumps({"tool": call.tool_name, "rows": [], "message": "no rows"})

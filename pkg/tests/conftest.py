import copy
import logging

import pytest

from schemabudget.services.benchmark_generator import generate_frontier_catalog, generate_novatech

TICKETS_TOOL = {
    "name": "get_tickets",
    "description": "List support tickets. Filters by status and tag.",
    "parameters": {
        "type": "object",
        "properties": {
            "status": {
                "type": "string",
                "enum": ["open", "closed"],
                "description": "Ticket status",
            },
            "limit": {"type": "integer", "default": 10},
            "tags": {"type": "array", "items": {"type": "string"}},
            "window": {
                "type": "object",
                "properties": {"start": {"type": "string"}, "end": {"type": "string"}},
            },
        },
        "required": ["status"],
    },
}


@pytest.fixture(scope="session")
def novatech():
    return generate_novatech(0)


@pytest.fixture(scope="session")
def frontier_1000():
    return generate_frontier_catalog(1000, 0)


@pytest.fixture
def tickets_tool():
    return copy.deepcopy(TICKETS_TOOL)


@pytest.fixture(autouse=True)
def restore_root_logger():
    root = logging.getLogger()
    handlers, level = root.handlers[:], root.level
    yield
    root.handlers[:] = handlers
    root.setLevel(level)

import json

import pytest

from schemabudget.core.exceptions import SchemaValidationError
from schemabudget.core.schema_model import (
    catalog_from_data,
    catalog_json_text,
    load_catalog,
    parse_tool,
    save_catalog,
    serialize_tool,
    tool_from_dict,
)
from schemabudget.models.schema import ParamKind, ToolCatalog


def test_parse_tool_reads_every_supported_kind(tickets_tool):
    tool = parse_tool(json.dumps(tickets_tool))

    assert tool.name == "get_tickets"
    assert [p.name for p in tool.parameters] == ["status", "limit", "tags", "window"]
    status, limit, tags, window = tool.parameters
    assert status.kind == ParamKind.ENUM
    assert status.enum_values == ("open", "closed")
    assert status.description == "Ticket status"
    assert limit.kind == ParamKind.INTEGER
    assert limit.default_value == "10"
    assert tags.kind == ParamKind.ARRAY and tags.item_kind == ParamKind.STRING
    assert window.kind == ParamKind.OBJECT
    assert [c.name for c in window.children] == ["start", "end"]
    assert tool.required == ("status",)


def test_function_wrapper_is_unwrapped(tickets_tool):
    wrapped = {"type": "function", "function": tickets_tool}
    assert tool_from_dict(wrapped) == tool_from_dict(tickets_tool)


def test_required_follows_parameter_order(tickets_tool):
    tickets_tool["parameters"]["required"] = ["limit", "status"]
    assert tool_from_dict(tickets_tool).required == ("status", "limit")


def test_serialization_is_canonical(tickets_tool):
    tool = tool_from_dict(tickets_tool)
    text = serialize_tool(tool)
    decoded = json.loads(text)

    assert list(decoded) == ["name", "description", "parameters"]
    assert list(decoded["parameters"]) == ["type", "properties", "required"]
    assert list(decoded["parameters"]["properties"]["status"]) == ["type", "enum", "description"]
    assert '"name": "get_tickets", "description"' in text
    assert serialize_tool(parse_tool(text)) == text


def test_metadata_keywords_are_dropped():
    tool = tool_from_dict(
        {
            "name": "lookup",
            "parameters": {
                "type": "object",
                "properties": {"day": {"type": "string", "format": "date", "title": "Day"}},
            },
        }
    )
    assert json.loads(serialize_tool(tool))["parameters"]["properties"]["day"] == {"type": "string"}


def test_tool_without_parameters():
    tool = tool_from_dict({"name": "ping"})
    assert tool.parameters == ()
    assert json.loads(serialize_tool(tool))["parameters"] == {
        "type": "object",
        "properties": {},
        "required": [],
    }


@pytest.mark.parametrize(
    "properties,required",
    [
        ({"a": {"anyOf": [{"type": "string"}, {"type": "integer"}]}}, []),
        ({"a": {"$ref": "#/defs/a"}}, []),
        ({"a": {"type": "object", "properties": {"b": {"type": "object", "properties": {}}}}}, []),
        ({"a": {"type": "integer", "enum": [1, 2]}}, []),
        ({"a": {"type": "array", "items": {"type": "object"}}}, []),
        ({"a": {"type": "integer", "default": "ten"}}, []),
        ({"a": {"type": "string", "enum": ["x", "y"], "default": "z"}}, []),
        ({"a": {"type": "string"}}, ["b"]),
        ({"bad name": {"type": "string"}}, []),
    ],
)
def test_unsupported_definitions_are_rejected(properties, required):
    parameters = {"type": "object", "properties": properties, "required": required}
    data = {"name": "t", "parameters": parameters}
    with pytest.raises(SchemaValidationError):
        tool_from_dict(data)


def test_malformed_json_is_rejected():
    with pytest.raises(SchemaValidationError, match="malformed JSON"):
        parse_tool('{"name": "ping"')


def test_invalid_tool_name_is_rejected():
    with pytest.raises(SchemaValidationError):
        tool_from_dict({"name": "get tickets"})


def test_duplicate_tool_names_are_rejected():
    with pytest.raises(SchemaValidationError, match="duplicate"):
        catalog_from_data([{"name": "ping"}, {"name": "ping"}])


def test_catalog_file_round_trip(tmp_path, tickets_tool):
    catalog = catalog_from_data([tickets_tool, {"name": "ping"}])
    path = tmp_path / "catalog.json"
    save_catalog(catalog, path)

    loaded = load_catalog(path)
    assert loaded == catalog
    assert catalog_json_text(loaded).count("\n") == 1


def test_single_tool_file_loads_as_catalog(tmp_path, tickets_tool):
    path = tmp_path / "tool.json"
    path.write_text(json.dumps(tickets_tool), encoding="utf-8")
    assert load_catalog(path).tool_names == ("get_tickets",)


def test_missing_catalog_file(tmp_path):
    with pytest.raises(SchemaValidationError, match="not found"):
        load_catalog(tmp_path / "absent.json")


def test_empty_catalog_renders_empty():
    assert catalog_json_text(ToolCatalog()) == ""

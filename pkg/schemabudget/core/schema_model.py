"""
Parsing, validation and canonical serialization of function-calling tool schemas.

Supported subset: an object of typed properties with a required list, string
enums, arrays of scalars and one level of nested objects.
"""

import json
import logging
from pathlib import Path
from typing import Any, Dict, List, Union

from pydantic import ValidationError

from ..models.schema import (
    SCALAR_KINDS,
    ParameterSpec,
    ParamKind,
    ToolCatalog,
    ToolDefinition,
)
from .exceptions import SchemaValidationError

logger = logging.getLogger(__name__)

UNSUPPORTED_KEYWORDS = ("anyOf", "oneOf", "allOf", "$ref", "not")
_SCALAR_TYPES = {kind.value: kind for kind in SCALAR_KINDS}


def _dumps(value: Any) -> str:
    return json.dumps(value, ensure_ascii=False, separators=(", ", ": "))


def _render_default(kind: ParamKind, value: Any, where: str) -> str:
    if kind in (ParamKind.STRING, ParamKind.ENUM):
        if not isinstance(value, str):
            raise SchemaValidationError(f"{where}: default must be a string")
        return value
    return _dumps(value)


def _parse_property(name: str, spec: Any, tool_name: str, nested: bool) -> ParameterSpec:
    where = f"tool {tool_name!r}, parameter {name!r}"
    if not isinstance(spec, dict):
        raise SchemaValidationError(f"{where}: property schema must be an object")
    for keyword in UNSUPPORTED_KEYWORDS:
        if keyword in spec:
            raise SchemaValidationError(f"{where}: unsupported kind keyword {keyword!r}")

    type_name = spec.get("type")
    fields: Dict[str, Any] = {"name": name}

    if "enum" in spec:
        values = spec["enum"]
        if type_name not in (None, "string"):
            raise SchemaValidationError(f"{where}: enums must be string-typed")
        if not isinstance(values, list) or not all(isinstance(v, str) for v in values):
            raise SchemaValidationError(f"{where}: enum values must be a list of strings")
        fields.update(kind=ParamKind.ENUM, enum_values=tuple(values))
    elif type_name in _SCALAR_TYPES:
        fields["kind"] = _SCALAR_TYPES[type_name]
    elif type_name == "array":
        items = spec.get("items")
        item_type = items.get("type") if isinstance(items, dict) else None
        if item_type not in _SCALAR_TYPES:
            raise SchemaValidationError(f"{where}: arrays must declare scalar item types")
        fields.update(kind=ParamKind.ARRAY, item_kind=_SCALAR_TYPES[item_type])
    elif type_name == "object":
        if nested:
            raise SchemaValidationError(f"{where}: objects nest at most one level")
        properties = spec.get("properties", {})
        if not isinstance(properties, dict):
            raise SchemaValidationError(f"{where}: properties must be an object")
        children = tuple(
            _parse_property(child, child_spec, tool_name, nested=True)
            for child, child_spec in properties.items()
        )
        fields.update(kind=ParamKind.OBJECT, children=children)
    else:
        raise SchemaValidationError(f"{where}: unsupported kind keyword type={type_name!r}")

    if "default" in spec:
        fields["default_value"] = _render_default(fields["kind"], spec["default"], where)
    if "description" in spec:
        if not isinstance(spec["description"], str):
            raise SchemaValidationError(f"{where}: description must be a string")
        fields["description"] = spec["description"]

    try:
        return ParameterSpec(**fields)
    except ValidationError as e:
        raise SchemaValidationError(f"{where}: {e.errors()[0]['msg']}") from e


def tool_from_dict(data: Any) -> ToolDefinition:
    """Build a validated ToolDefinition from a decoded function-calling schema."""
    if not isinstance(data, dict):
        raise SchemaValidationError("tool definition must be a JSON object")
    if "function" in data and isinstance(data["function"], dict):
        data = data["function"]

    name = data.get("name")
    if not isinstance(name, str) or not name:
        raise SchemaValidationError("tool definition is missing a name")
    description = data.get("description", "")
    if not isinstance(description, str):
        raise SchemaValidationError(f"tool {name!r}: description must be a string")

    parameters = data.get("parameters", {"type": "object", "properties": {}})
    if not isinstance(parameters, dict) or parameters.get("type", "object") != "object":
        raise SchemaValidationError(f"tool {name!r}: parameters must be an object schema")
    properties = parameters.get("properties", {})
    if not isinstance(properties, dict):
        raise SchemaValidationError(f"tool {name!r}: properties must be an object")
    required = parameters.get("required", [])
    if not isinstance(required, list) or not all(isinstance(r, str) for r in required):
        raise SchemaValidationError(f"tool {name!r}: required must be a list of names")

    params = tuple(
        _parse_property(param_name, spec, name, nested=False)
        for param_name, spec in properties.items()
    )
    try:
        return ToolDefinition(
            name=name, description=description, parameters=params, required=tuple(required)
        )
    except ValidationError as e:
        raise SchemaValidationError(f"tool {name!r}: {e.errors()[0]['msg']}") from e


def parse_tool(json_text: str) -> ToolDefinition:
    """Parse one tool definition from JSON text.

    Raises:
        SchemaValidationError: Malformed JSON or a definition outside the supported subset
    """
    try:
        data = json.loads(json_text)
    except json.JSONDecodeError as e:
        raise SchemaValidationError(f"malformed JSON: {e}") from e
    return tool_from_dict(data)


def _property_dict(param: ParameterSpec) -> Dict[str, Any]:
    if param.kind == ParamKind.ENUM:
        out: Dict[str, Any] = {"type": "string", "enum": list(param.enum_values)}
    elif param.kind == ParamKind.ARRAY:
        out = {"type": "array", "items": {"type": param.item_kind.value}}
    elif param.kind == ParamKind.OBJECT:
        out = {
            "type": "object",
            "properties": {child.name: _property_dict(child) for child in param.children},
        }
    else:
        out = {"type": param.kind.value}

    if param.default_value is not None:
        if param.kind in (ParamKind.STRING, ParamKind.ENUM):
            out["default"] = param.default_value
        else:
            out["default"] = json.loads(param.default_value)
    if param.description is not None:
        out["description"] = param.description
    return out


def tool_to_dict(tool: ToolDefinition) -> Dict[str, Any]:
    """Canonical dict form; key order is part of the canonical serialization."""
    return {
        "name": tool.name,
        "description": tool.description,
        "parameters": {
            "type": "object",
            "properties": {param.name: _property_dict(param) for param in tool.parameters},
            "required": list(tool.required),
        },
    }


def serialize_tool(tool: ToolDefinition) -> str:
    """Canonical JSON text of one tool; equal tools give identical bytes."""
    return _dumps(tool_to_dict(tool))


def catalog_json_text(catalog: ToolCatalog) -> str:
    """Canonical JSON rendering of a whole catalog, one tool per line."""
    return "\n".join(serialize_tool(tool) for tool in catalog.tools)


def catalog_from_data(data: Any) -> ToolCatalog:
    """Catalog from a decoded file: one tool object or an array of tools."""
    items = data if isinstance(data, list) else [data]
    tools = [tool_from_dict(item) for item in items]
    try:
        return ToolCatalog(tools=tuple(tools))
    except ValidationError as e:
        raise SchemaValidationError(f"invalid catalog: {e.errors()[0]['msg']}") from e


def load_catalog(path: Union[str, Path]) -> ToolCatalog:
    """Read a tool file or catalog file."""
    file_path = Path(path)
    if not file_path.exists():
        raise SchemaValidationError(f"catalog file not found: {path}")
    try:
        data = json.loads(file_path.read_text(encoding="utf-8"))
    except json.JSONDecodeError as e:
        raise SchemaValidationError(f"malformed JSON in {path}: {e}") from e
    catalog = catalog_from_data(data)
    logger.debug(f"Loaded {len(catalog)} tools from {path}")
    return catalog


def save_catalog(catalog: ToolCatalog, path: Union[str, Path]) -> None:
    """Write a catalog file as a JSON array of canonical tools."""
    lines: List[str] = [serialize_tool(tool) for tool in catalog.tools]
    body = "[\n" + ",\n".join(lines) + "\n]\n" if lines else "[]\n"
    Path(path).write_text(body, encoding="utf-8")

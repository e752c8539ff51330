"""Data models for tool definitions and their compressed form."""

import json
import re
from enum import Enum
from typing import Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field, ValidationInfo, field_validator, model_validator

TOOL_NAME_PATTERN = re.compile(r"^[A-Za-z_][A-Za-z0-9_]*$")
PARAM_NAME_PATTERN = re.compile(r"^[A-Za-z_][A-Za-z0-9_-]*$")


class ParamKind(str, Enum):
    """Parameter kind enumeration."""

    STRING = "string"
    NUMBER = "number"
    INTEGER = "integer"
    BOOLEAN = "boolean"
    ARRAY = "array"
    OBJECT = "object"
    ENUM = "enum"


SCALAR_KINDS = (ParamKind.STRING, ParamKind.NUMBER, ParamKind.INTEGER, ParamKind.BOOLEAN)


class SchemaFormat(str, Enum):
    """How a catalog is presented to the model."""

    JSON = "json"
    TSCG_CONSERVATIVE = "tscg_conservative"
    TSCG_BALANCED = "tscg_balanced"


class CompressionVariant(str, Enum):
    """Compression profile variant."""

    CONSERVATIVE = "conservative"
    BALANCED = "balanced"


def _default_matches_kind(kind: ParamKind, text: str) -> bool:
    if kind in (ParamKind.STRING, ParamKind.ENUM):
        return True
    try:
        value = json.loads(text)
    except json.JSONDecodeError:
        return False
    if kind == ParamKind.BOOLEAN:
        return isinstance(value, bool)
    if kind == ParamKind.INTEGER:
        return isinstance(value, int) and not isinstance(value, bool)
    if kind == ParamKind.NUMBER:
        return isinstance(value, (int, float)) and not isinstance(value, bool)
    if kind == ParamKind.ARRAY:
        return isinstance(value, list)
    return False


class ParameterSpec(BaseModel):
    """One typed tool parameter."""

    model_config = ConfigDict(frozen=True)

    name: str = Field(..., description="Parameter name, unique among siblings")
    kind: ParamKind = Field(..., description="Parameter kind")
    enum_values: Optional[Tuple[str, ...]] = Field(
        default=None, description="Allowed values in source order (enum kind only)"
    )
    default_value: Optional[str] = Field(
        default=None,
        description="Default as text: raw for string/enum kinds, compact JSON otherwise",
    )
    description: Optional[str] = Field(default=None, description="Free-text description")
    item_kind: Optional[ParamKind] = Field(
        default=None, description="Scalar kind of array items (array kind only)"
    )
    children: Optional[Tuple["ParameterSpec", ...]] = Field(
        default=None, description="Nested parameters (object kind only)"
    )

    @model_validator(mode="after")
    def _check_shape(self) -> "ParameterSpec":
        if not PARAM_NAME_PATTERN.match(self.name):
            raise ValueError(f"invalid parameter name {self.name!r}")

        if self.kind == ParamKind.ENUM:
            if not self.enum_values:
                raise ValueError(f"enum parameter {self.name!r} has no values")
            if len(set(self.enum_values)) != len(self.enum_values):
                raise ValueError(f"enum parameter {self.name!r} has duplicate values")
        elif self.enum_values is not None:
            raise ValueError(f"parameter {self.name!r} lists enum values but is {self.kind.value}")

        if self.kind == ParamKind.ARRAY:
            if self.item_kind not in SCALAR_KINDS:
                raise ValueError(f"array parameter {self.name!r} needs a scalar item kind")
        elif self.item_kind is not None:
            raise ValueError(f"parameter {self.name!r} has item kind but is {self.kind.value}")

        if self.kind == ParamKind.OBJECT:
            if self.children is None:
                raise ValueError(f"object parameter {self.name!r} has no properties")
            names = [child.name for child in self.children]
            if len(set(names)) != len(names):
                raise ValueError(f"object parameter {self.name!r} has duplicate properties")
            if any(child.kind == ParamKind.OBJECT for child in self.children):
                raise ValueError(f"object parameter {self.name!r} nests deeper than one level")
            if self.default_value is not None:
                raise ValueError(f"object parameter {self.name!r} cannot carry a default")
        elif self.children is not None:
            raise ValueError(f"parameter {self.name!r} has properties but is {self.kind.value}")

        if self.default_value is not None:
            if not _default_matches_kind(self.kind, self.default_value):
                raise ValueError(f"default of {self.name!r} does not match kind {self.kind.value}")
            if self.kind == ParamKind.ENUM and self.default_value not in self.enum_values:
                raise ValueError(f"default of {self.name!r} is not one of its enum values")
        return self


class ToolDefinition(BaseModel):
    """One tool: the unit of compression."""

    model_config = ConfigDict(frozen=True)

    name: str = Field(..., description="Tool name (identifier)")
    description: str = Field(default="", description="Tool description")
    parameters: Tuple[ParameterSpec, ...] = Field(
        default=(), description="Top-level parameters in source order"
    )
    required: Tuple[str, ...] = Field(
        default=(), description="Required parameter names, kept in parameter order"
    )

    @field_validator("name")
    @classmethod
    def _check_name(cls, value: str) -> str:
        if not TOOL_NAME_PATTERN.match(value):
            raise ValueError(f"tool name {value!r} is not an identifier")
        return value

    @field_validator("required")
    @classmethod
    def _normalize_required(cls, value: Tuple[str, ...], info: ValidationInfo) -> Tuple[str, ...]:
        parameters = info.data.get("parameters")
        if parameters is None:
            return value
        names = [param.name for param in parameters]
        unknown = [name for name in value if name not in names]
        if unknown:
            raise ValueError(f"required references unknown parameter(s): {', '.join(unknown)}")
        wanted = set(value)
        return tuple(name for name in names if name in wanted)

    @model_validator(mode="after")
    def _check_unique_parameters(self) -> "ToolDefinition":
        names = [param.name for param in self.parameters]
        if len(set(names)) != len(names):
            raise ValueError(f"tool {self.name!r} has duplicate parameter names")
        return self

    def parameter(self, name: str) -> Optional[ParameterSpec]:
        """Look up a top-level parameter by name."""
        for param in self.parameters:
            if param.name == name:
                return param
        return None


class ToolCatalog(BaseModel):
    """Ordered set of tools offered to the model."""

    model_config = ConfigDict(frozen=True)

    tools: Tuple[ToolDefinition, ...] = Field(default=(), description="Tools in catalog order")

    @model_validator(mode="after")
    def _check_unique_names(self) -> "ToolCatalog":
        seen = set()
        for tool in self.tools:
            if tool.name in seen:
                raise ValueError(f"duplicate tool name {tool.name!r}")
            seen.add(tool.name)
        return self

    @property
    def tool_names(self) -> Tuple[str, ...]:
        return tuple(tool.name for tool in self.tools)

    def __len__(self) -> int:
        return len(self.tools)


class CoreEntry(BaseModel):
    """One flattened parameter of a structural core; dotted paths for object children."""

    model_config = ConfigDict(frozen=True)

    path: str
    kind: ParamKind
    required: bool = False
    item_kind: Optional[ParamKind] = None
    enum_values: Optional[Tuple[str, ...]] = None
    default_value: Optional[str] = None


class StructuralCore(BaseModel):
    """What compression must preserve losslessly for one tool."""

    model_config = ConfigDict(frozen=True)

    name: str
    entries: Tuple[CoreEntry, ...] = ()


class CompressionProfile(BaseModel):
    """Compression profile: conservative keeps descriptions, balanced strips them."""

    model_config = ConfigDict(frozen=True)

    variant: CompressionVariant = CompressionVariant.CONSERVATIVE

    @property
    def keeps_descriptions(self) -> bool:
        return self.variant == CompressionVariant.CONSERVATIVE

    @classmethod
    def for_format(cls, schema_format: SchemaFormat) -> "CompressionProfile":
        """Profile that renders a compressed format."""
        if schema_format == SchemaFormat.TSCG_CONSERVATIVE:
            return cls(variant=CompressionVariant.CONSERVATIVE)
        if schema_format == SchemaFormat.TSCG_BALANCED:
            return cls(variant=CompressionVariant.BALANCED)
        raise ValueError(f"format {schema_format.value} is not a compressed format")


class CompressedCatalog(BaseModel):
    """A catalog rendered one signature line per tool."""

    model_config = ConfigDict(frozen=True)

    lines: Tuple[str, ...] = ()
    format_tag: str = "sig/1"
    token_count: int = Field(default=0, ge=0)

    @property
    def text(self) -> str:
        return "\n".join(self.lines)

"""
Rule-based compression of tool catalogs into one signature line per tool.

Line grammar (format tag ``sig/1``)::

    line  := NAME "(" [entry (", " entry)*] ")" [" # " text]
    entry := PATH ":" type ["!"] ["=" value]
    type  := KIND | KIND "[]" | "{" value ("|" value)* "}"
    PATH  := PARAM ["." PARAM]

``!`` marks a required parameter, ``{...}`` lists enum values, ``[]`` marks an
array of the given scalar kind and dotted paths flatten one nested object.
Values are written raw when they match ``[A-Za-z0-9_.+-/@]+`` and as JSON
string literals otherwise. The ``# ...`` suffix is only written by the
conservative profile.
"""

import json
import re
from typing import Iterator, List, Optional, Tuple

from ..models.budget import DEFAULT_PROFILE, TokenCountProfile
from ..models.schema import (
    SCALAR_KINDS,
    CompressedCatalog,
    CompressionProfile,
    CoreEntry,
    ParamKind,
    SchemaFormat,
    StructuralCore,
    ToolCatalog,
    ToolDefinition,
)
from .exceptions import GrammarError, SchemaValidationError
from .schema_model import catalog_json_text
from .token_counter import count_tokens

FORMAT_TAG = "sig/1"
DESCRIPTION_WORD_LIMIT = 12
CLIP_MARKER = "…"
SUFFIX_SEPARATOR = " # "
NOTES_SEPARATOR = " — "

_RAW_VALUE = re.compile(r"[A-Za-z0-9_.+\-/@]+")
_TOOL_NAME = re.compile(r"[A-Za-z_][A-Za-z0-9_]*")
_PARAM_NAME = re.compile(r"[A-Za-z_][A-Za-z0-9_-]*")
_KIND_WORD = re.compile(r"[a-z]+")
_SENTENCE_END = re.compile(r"(?<=[.!?])\s")
_KINDS_BY_WORD = {kind.value: kind for kind in ParamKind if kind != ParamKind.ENUM}


def _value_token(value: str) -> str:
    if _RAW_VALUE.fullmatch(value):
        return value
    return json.dumps(value, ensure_ascii=False)


def _clip(text: str) -> str:
    words = text.split()
    if len(words) > DESCRIPTION_WORD_LIMIT:
        return " ".join(words[:DESCRIPTION_WORD_LIMIT]) + CLIP_MARKER
    return " ".join(words)


def first_sentence(text: str) -> str:
    """Leading sentence of a description, whitespace collapsed."""
    collapsed = " ".join(text.split())
    return _SENTENCE_END.split(collapsed, maxsplit=1)[0] if collapsed else ""


def _flatten(tool: ToolDefinition) -> Iterator[CoreEntry]:
    required = set(tool.required)
    for param in tool.parameters:
        is_required = param.name in required
        if param.kind == ParamKind.OBJECT and param.children:
            for child in param.children:
                yield CoreEntry(
                    path=f"{param.name}.{child.name}",
                    kind=child.kind,
                    required=is_required,
                    item_kind=child.item_kind,
                    enum_values=child.enum_values,
                    default_value=child.default_value,
                )
        else:
            yield CoreEntry(
                path=param.name,
                kind=param.kind,
                required=is_required,
                item_kind=param.item_kind,
                enum_values=param.enum_values,
                default_value=param.default_value,
            )


def extract_core(tool: ToolDefinition) -> StructuralCore:
    """Project a tool onto the information compression must keep."""
    return StructuralCore(name=tool.name, entries=tuple(_flatten(tool)))


def _render_entry(entry: CoreEntry) -> str:
    if entry.kind == ParamKind.ENUM:
        type_text = "{" + "|".join(_value_token(v) for v in entry.enum_values) + "}"
    elif entry.kind == ParamKind.ARRAY:
        type_text = f"{entry.item_kind.value}[]"
    else:
        type_text = entry.kind.value
    text = f"{entry.path}:{type_text}"
    if entry.required:
        text += "!"
    if entry.default_value is not None:
        text += "=" + _value_token(entry.default_value)
    return text


def _description_suffix(tool: ToolDefinition) -> str:
    parts: List[str] = []
    summary = _clip(first_sentence(tool.description))
    if summary:
        parts.append(summary)

    notes: List[str] = []
    for param in tool.parameters:
        if param.description and param.description.strip():
            notes.append(f"{param.name}: {_clip(param.description)}")
        for child in param.children or ():
            if child.description and child.description.strip():
                notes.append(f"{param.name}.{child.name}: {_clip(child.description)}")
    if notes:
        parts.append("; ".join(notes))
    return NOTES_SEPARATOR.join(parts)


def compress_tool(tool: ToolDefinition, profile: CompressionProfile) -> str:
    """Render one tool as a signature line."""
    line = f"{tool.name}({', '.join(_render_entry(e) for e in _flatten(tool))})"
    if profile.keeps_descriptions:
        suffix = _description_suffix(tool)
        if suffix:
            line += SUFFIX_SEPARATOR + suffix
    return line


def compress_catalog(
    catalog: ToolCatalog,
    profile: CompressionProfile,
    counter: TokenCountProfile = DEFAULT_PROFILE,
) -> CompressedCatalog:
    """Compress every tool and count the joined text."""
    lines = tuple(compress_tool(tool, profile) for tool in catalog.tools)
    return CompressedCatalog(
        lines=lines, format_tag=FORMAT_TAG, token_count=count_tokens("\n".join(lines), counter)
    )


def render_catalog(catalog: ToolCatalog, schema_format: SchemaFormat) -> str:
    """Schema text as presented to the model for a format."""
    if schema_format == SchemaFormat.JSON:
        return catalog_json_text(catalog)
    profile = CompressionProfile.for_format(schema_format)
    return "\n".join(compress_tool(tool, profile) for tool in catalog.tools)


def savings_rate(
    catalog: ToolCatalog,
    profile: CompressionProfile,
    counter: TokenCountProfile = DEFAULT_PROFILE,
) -> float:
    """Fraction of canonical JSON tokens removed by compression."""
    if not catalog.tools:
        raise SchemaValidationError("savings of an empty catalog are undefined")
    json_tokens = count_tokens(catalog_json_text(catalog), counter)
    compressed_tokens = compress_catalog(catalog, profile, counter).token_count
    return (json_tokens - compressed_tokens) / json_tokens


class _SignatureScanner:
    """Cursor over one signature line."""

    def __init__(self, line: str):
        self.line = line
        self.pos = 0

    def fail(self, reason: str) -> GrammarError:
        return GrammarError(f"{reason} at column {self.pos}: {self.line!r}")

    def peek(self) -> str:
        return self.line[self.pos : self.pos + 1]

    def expect(self, literal: str) -> None:
        if not self.line.startswith(literal, self.pos):
            raise self.fail(f"expected {literal!r}")
        self.pos += len(literal)

    def accept(self, literal: str) -> bool:
        if self.line.startswith(literal, self.pos):
            self.pos += len(literal)
            return True
        return False

    def match(self, pattern: re.Pattern, what: str) -> str:
        found = pattern.match(self.line, self.pos)
        if not found:
            raise self.fail(f"expected {what}")
        self.pos = found.end()
        return found.group(0)

    def value(self) -> str:
        if self.peek() == '"':
            try:
                decoded, end = json.JSONDecoder().raw_decode(self.line, self.pos)
            except json.JSONDecodeError:
                raise self.fail("unterminated quoted value")
            self.pos = end
            return decoded
        return self.match(_RAW_VALUE, "a value")

    def entry(self) -> CoreEntry:
        path = self.match(_PARAM_NAME, "a parameter name")
        if self.accept("."):
            path += "." + self.match(_PARAM_NAME, "a property name")
        self.expect(":")

        item_kind: Optional[ParamKind] = None
        enum_values: Optional[Tuple[str, ...]] = None
        if self.accept("{"):
            values = [self.value()]
            while self.accept("|"):
                values.append(self.value())
            self.expect("}")
            kind = ParamKind.ENUM
            enum_values = tuple(values)
        else:
            word = self.match(_KIND_WORD, "a kind")
            if word not in _KINDS_BY_WORD:
                raise self.fail(f"unknown kind {word!r}")
            kind = _KINDS_BY_WORD[word]
            if self.accept("[]"):
                if kind not in SCALAR_KINDS:
                    raise self.fail("arrays hold scalar kinds only")
                item_kind, kind = kind, ParamKind.ARRAY

        if kind == ParamKind.OBJECT and "." in path:
            raise self.fail("objects nest at most one level")
        required = self.accept("!")
        default = self.value() if self.accept("=") else None
        return CoreEntry(
            path=path,
            kind=kind,
            required=required,
            item_kind=item_kind,
            enum_values=enum_values,
            default_value=default,
        )


def _check_groups(scanner: _SignatureScanner, entries: List[CoreEntry]) -> None:
    seen_paths = set()
    closed_parents = set()
    current_parent: Optional[str] = None
    parent_required: Optional[bool] = None
    for entry in entries:
        if entry.path in seen_paths:
            raise scanner.fail(f"duplicate parameter {entry.path!r}")
        seen_paths.add(entry.path)
        parent = entry.path.split(".", 1)[0] if "." in entry.path else None
        if parent != current_parent:
            if current_parent is not None:
                closed_parents.add(current_parent)
            if parent is not None and (parent in closed_parents or parent in seen_paths):
                raise scanner.fail(f"properties of {parent!r} are not contiguous")
            current_parent, parent_required = parent, entry.required
        elif parent is not None and entry.required != parent_required:
            raise scanner.fail(f"inconsistent required marker on {parent!r}")
        if parent is None and entry.path in closed_parents:
            raise scanner.fail(f"parameter {entry.path!r} clashes with an object")


def parse_compressed(line: str) -> StructuralCore:
    """Recover the structural core from a signature line.

    Raises:
        GrammarError: The line is not in the signature grammar
    """
    scanner = _SignatureScanner(line)
    name = scanner.match(_TOOL_NAME, "a tool name")
    scanner.expect("(")
    entries: List[CoreEntry] = []
    if not scanner.accept(")"):
        entries.append(scanner.entry())
        while scanner.accept(", "):
            entries.append(scanner.entry())
        scanner.expect(")")
    if scanner.pos != len(line) and not line.startswith(SUFFIX_SEPARATOR, scanner.pos):
        raise scanner.fail("unexpected text after the parameter list")

    _check_groups(scanner, entries)
    return StructuralCore(name=name, entries=tuple(entries))

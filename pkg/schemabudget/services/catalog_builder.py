"""
Deterministic catalog builders.

The NovaTech catalog is the 28 enterprise templates grown until their sizes
match the calibrated targets below. Frontier catalogs draw each tool from
(seed, index) alone, so a catalog of n tools is a prefix of any larger one.

Sizes are tracked arithmetically while growing: appending an enum value ``v``
adds ``len(v) + 1`` bytes to a signature line (``|v``) and ``len(v) + 4`` bytes
to canonical JSON (``, "v"``).
"""

import copy
import logging
import math
from typing import Any, Dict, List

import numpy as np

from ..core.compressor import compress_tool
from ..core.prng import stream
from ..core.schema_model import serialize_tool, tool_from_dict
from ..core.token_counter import byte_length, tokens_for_bytes
from ..models.budget import DEFAULT_PROFILE, TokenCountProfile
from ..models.schema import CompressionProfile, CompressionVariant, ToolCatalog, ToolDefinition
from .catalog_templates import DOC_SENTENCES, KEYWORDS, QUALIFIERS, TOOL_TEMPLATES

logger = logging.getLogger(__name__)

NOVATECH_LINE_TARGET = 194
NOVATECH_CATALOG_TARGET = 5532
NOVATECH_JSON_TARGET = 393
NOVATECH_JSON_JITTER = 12

FRONTIER_JSON_MIN = 380
FRONTIER_JSON_SPAN = 91
FRONTIER_SHAPE = 2.79
FRONTIER_COMPRESSION = 0.535

# Room left for the keyword tail after documentation sentences are placed.
KEYWORD_RESERVE_BYTES = 24
KEYWORD_PREFIX = " Keywords: "

_GOLDEN_CONJUGATE = (math.sqrt(5) - 1) / 2
_CONSERVATIVE = CompressionProfile(variant=CompressionVariant.CONSERVATIVE)


class ToolDraft:
    """A template being grown towards its size targets."""

    def __init__(self, template: Dict[str, Any], name: str, counter: TokenCountProfile = DEFAULT_PROFILE):
        self.template = {k: v for k, v in copy.deepcopy(template).items() if k != "category"}
        self.template["name"] = name
        self.counter = counter
        self.sentences: List[str] = []
        self.keywords: List[str] = []

        properties = self.template["parameters"]["properties"]
        self.enum_params = [p for p, spec in properties.items() if "enum" in spec]
        self.pending: Dict[str, List[str]] = {}
        for param in self.enum_params:
            base = properties[param]["enum"]
            seen = set(base)
            queue = []
            for qualifier in QUALIFIERS:
                for value in base:
                    candidate = f"{value}_{qualifier}"
                    if candidate not in seen:
                        seen.add(candidate)
                        queue.append(candidate)
            self.pending[param] = queue
        self.cursor = 0

        tool = self.build()
        self.line_bytes = byte_length(compress_tool(tool, _CONSERVATIVE))
        self.json_bytes = byte_length(serialize_tool(tool))

    @property
    def line_tokens(self) -> int:
        return tokens_for_bytes(self.line_bytes, self.counter)

    @property
    def json_tokens(self) -> int:
        return tokens_for_bytes(self.json_bytes, self.counter)

    def grow(self) -> bool:
        """Append the next extension value, round-robin over enum parameters.

        Returns:
            False once every enum parameter is exhausted
        """
        for _ in range(len(self.enum_params)):
            param = self.enum_params[self.cursor % len(self.enum_params)]
            self.cursor += 1
            if self.pending[param]:
                value = self.pending[param].pop(0)
                self.template["parameters"]["properties"][param]["enum"].append(value)
                self.line_bytes += len(value) + 1
                self.json_bytes += len(value) + 4
                return True
        return False

    def fill_description(self, target_tokens: int, rng: np.random.Generator) -> None:
        """Append documentation sentences, then keywords, until JSON reaches the target."""
        target_bytes = math.floor(target_tokens * self.counter.bytes_per_token)
        for index in rng.permutation(len(DOC_SENTENCES)):
            sentence = DOC_SENTENCES[int(index)]
            if self.json_bytes + len(sentence) + 1 <= target_bytes - KEYWORD_RESERVE_BYTES:
                self.sentences.append(sentence)
                self.json_bytes += len(sentence) + 1

        order = rng.permutation(len(KEYWORDS))
        while self.json_tokens < target_tokens:
            word = KEYWORDS[int(order[len(self.keywords) % len(order)])]
            self.json_bytes += len(word) + (2 if self.keywords else len(KEYWORD_PREFIX))
            self.keywords.append(word)

    def build(self) -> ToolDefinition:
        data = copy.deepcopy(self.template)
        description = data["description"]
        if self.sentences:
            description += " " + " ".join(self.sentences)
        if self.keywords:
            description += KEYWORD_PREFIX + ", ".join(self.keywords)
        data["description"] = description
        return tool_from_dict(data)


def _catalog_line_tokens(drafts: List[ToolDraft], counter: TokenCountProfile) -> int:
    # lines are joined by "\n"
    return tokens_for_bytes(sum(d.line_bytes for d in drafts) + len(drafts) - 1, counter)


def build_novatech_catalog(seed: int, counter: TokenCountProfile = DEFAULT_PROFILE) -> ToolCatalog:
    """Build the 28-tool NovaTech catalog for a seed.

    Args:
        seed: Benchmark seed
        counter: Token counting profile the size targets refer to

    Returns:
        Catalog in template order
    """
    rng = stream(seed, "novatech", "catalog")
    drafts = [ToolDraft(t, t["name"], counter) for t in TOOL_TEMPLATES]

    for draft in drafts:
        while draft.line_tokens < NOVATECH_LINE_TARGET and draft.grow():
            pass

    while _catalog_line_tokens(drafts, counter) < NOVATECH_CATALOG_TARGET:
        grew = False
        for draft in drafts:
            if _catalog_line_tokens(drafts, counter) >= NOVATECH_CATALOG_TARGET:
                break
            grew = draft.grow() or grew
        if not grew:
            logger.warning("NovaTech templates exhausted before reaching the catalog target")
            break

    for draft in drafts:
        jitter = int(rng.integers(-NOVATECH_JSON_JITTER, NOVATECH_JSON_JITTER + 1))
        draft.fill_description(NOVATECH_JSON_TARGET + jitter, rng)

    catalog = ToolCatalog(tools=tuple(d.build() for d in drafts))
    logger.debug(
        f"NovaTech catalog: {len(catalog)} tools, "
        f"{sum(d.json_tokens for d in drafts)} JSON tokens (tracked)"
    )
    return catalog


def frontier_json_target(seed: int, index: int) -> int:
    """JSON token target of frontier tool ``index``.

    Low-discrepancy positions shaped by a power law: most tools sit near the
    minimum, a few approach the maximum.
    """
    offset = float(stream(seed, "frontier", "offset").random())
    u = (offset + index * _GOLDEN_CONJUGATE) % 1.0
    return FRONTIER_JSON_MIN + round(FRONTIER_JSON_SPAN * u**FRONTIER_SHAPE)


def build_frontier_tool(
    seed: int, index: int, counter: TokenCountProfile = DEFAULT_PROFILE
) -> ToolDefinition:
    """Frontier tool ``index``; depends only on (seed, index)."""
    rng = stream(seed, "frontier", index)
    template = TOOL_TEMPLATES[int(rng.integers(len(TOOL_TEMPLATES)))]
    json_target = frontier_json_target(seed, index)

    draft = ToolDraft(template, f"{template['name']}_{index:04d}", counter)
    line_target = round(FRONTIER_COMPRESSION * json_target)
    while draft.line_tokens < line_target and draft.grow():
        pass
    draft.fill_description(json_target, rng)
    return draft.build()


def build_frontier_catalog(
    n: int, seed: int, counter: TokenCountProfile = DEFAULT_PROFILE
) -> ToolCatalog:
    """The first ``n`` frontier tools for a seed."""
    if n <= 0:
        raise ValueError(f"frontier catalog size must be positive, got {n}")
    return ToolCatalog(tools=tuple(build_frontier_tool(seed, i, counter) for i in range(1, n + 1)))

"""
NovaTech benchmark generation, validation and persistence.

``generate_novatech(seed)`` is a pure function of the seed: the catalog, the
40-chunk corpus, the 100 questions and the per-question retrieval rankings are
all drawn from named random streams.
"""

import hashlib
import json
import logging
from collections import Counter
from pathlib import Path
from typing import Dict, List, Tuple, Union

import numpy as np
from pydantic import ValidationError

from ..core.exceptions import BenchmarkValidationError, SchemaValidationError
from ..core.prng import stream
from ..core.schema_model import catalog_from_data, tool_to_dict
from ..core.token_counter import count_tokens
from ..models.benchmark import (
    BENCHMARK_FORMAT_VERSION,
    QUESTION_TYPE_COUNTS,
    Benchmark,
    Chunk,
    ChunkCategory,
    Question,
    QuestionType,
    SpanRef,
)
from ..models.schema import ToolCatalog
from .catalog_builder import build_frontier_catalog, build_novatech_catalog
from .corpus_content import FILLER_SENTENCES, FILLER_WORDS, QuestionDraft, draft_all_questions

logger = logging.getLogger(__name__)

CHUNKS_PER_CATEGORY = 10
SHORT_CHUNKS_PER_CATEGORY = 2
LONG_CHUNK_TOKENS = 350
SHORT_CHUNK_RANGE = (150, 250)

QUESTION_TYPE_ORDER = [
    QuestionType.SINGLE_HOP_DOC,
    QuestionType.SINGLE_HOP_DB,
    QuestionType.MULTI_HOP,
    QuestionType.TOOL_REQUIRING,
    QuestionType.UNANSWERABLE,
]


def _compose_text(facts: List[str], category: ChunkCategory, target: int, rng: np.random.Generator) -> str:
    text = " ".join(facts)
    pool = FILLER_SENTENCES[category]
    for index in rng.permutation(len(pool)):
        candidate = f"{text} {pool[int(index)]}" if text else pool[int(index)]
        if count_tokens(candidate) <= target:
            text = candidate

    if count_tokens(text) < target:
        words = [FILLER_WORDS[int(i)] for i in rng.permutation(len(FILLER_WORDS))]
        text += " See also:"
        position = 0
        while count_tokens(text + ".") < target:
            text += (" " if position == 0 else ", ") + words[position % len(words)]
            position += 1
        text += "."
    return text


def _build_corpus(
    drafts: List[Tuple[str, QuestionDraft]], rng: np.random.Generator
) -> Tuple[List[Chunk], Dict[str, str]]:
    """Place every question's sentences into chunks.

    Returns:
        The chunks and a question id -> gold chunk id map
    """
    slots: List[Tuple[ChunkCategory, List[Tuple[str, QuestionDraft]], int]] = []
    for category in ChunkCategory:
        groups = [(qid, d) for qid, d in drafts if d.category == category and d.chunk_sentences]
        order = [groups[int(i)] for i in rng.permutation(len(groups))]
        short = set(int(i) for i in rng.choice(CHUNKS_PER_CATEGORY, SHORT_CHUNKS_PER_CATEGORY, replace=False))
        for slot in range(CHUNKS_PER_CATEGORY):
            if slot in short:
                target = int(rng.integers(SHORT_CHUNK_RANGE[0], SHORT_CHUNK_RANGE[1] + 1))
            else:
                target = LONG_CHUNK_TOKENS
            slots.append((category, order[slot::CHUNKS_PER_CATEGORY], target))

    chunks: List[Chunk] = []
    gold: Dict[str, str] = {}
    for number, index in enumerate(rng.permutation(len(slots)), start=1):
        category, groups, target = slots[int(index)]
        chunk_id = f"doc-{number:03d}"
        facts = [s for _, d in groups for s in d.chunk_sentences]
        text = _compose_text(facts, category, target, rng)
        spans = tuple(SpanRef(question_id=qid, text=s) for qid, d in groups for s in d.chunk_sentences)
        for qid, _ in groups:
            gold[qid] = chunk_id
        chunks.append(
            Chunk(id=chunk_id, text=text, token_cost=count_tokens(text), category=category, spans=spans)
        )
    chunks.sort(key=lambda c: c.id)
    return chunks, gold


def _retrieval_rank(seed: int, question: Question, chunk_ids: List[str]) -> List[str]:
    """Gold chunks first, the rest in a per-question seeded order."""
    gold = list(question.gold_chunk_ids)
    rest = [c for c in chunk_ids if c not in gold]
    rng = stream(seed, "rank", question.id)
    return gold + [rest[int(i)] for i in rng.permutation(len(rest))]


def generate_novatech(seed: int, gold_rank_bound: int = 6) -> Benchmark:
    """Generate the NovaTech benchmark for a seed.

    Args:
        seed: Non-negative seed; equal seeds give identical benchmarks
        gold_rank_bound: Highest rank any gold chunk may take

    Returns:
        A validated benchmark
    """
    catalog = build_novatech_catalog(seed)
    by_type = draft_all_questions(stream(seed, "novatech", "questions"))

    numbered: List[Tuple[str, QuestionDraft]] = []
    for qtype in QUESTION_TYPE_ORDER:
        for draft in by_type[qtype]:
            numbered.append((f"q{len(numbered) + 1:03d}", draft))

    chunks, gold = _build_corpus(numbered, stream(seed, "novatech", "corpus"))

    questions = [
        Question(
            id=qid,
            qtype=d.qtype,
            text=d.text,
            gold_answer=d.answer,
            aliases=tuple(d.aliases),
            gold_chunk_ids=(gold[qid],) if qid in gold else (),
            gold_tool=d.tool,
            supporting_spans=tuple(d.supporting_spans),
            gold_evidence=d.evidence,
        )
        for qid, d in numbered
    ]
    chunk_ids = [c.id for c in chunks]
    ranks = {q.id: _retrieval_rank(seed, q, chunk_ids) for q in questions}

    benchmark = Benchmark(
        seed=seed,
        gold_rank_bound=gold_rank_bound,
        catalog=catalog,
        chunks=tuple(chunks),
        questions=tuple(questions),
        retrieval_rank=ranks,
    )
    validate_benchmark(benchmark)
    logger.info(
        f"Generated NovaTech benchmark seed={seed}: {len(catalog)} tools, "
        f"{len(chunks)} chunks ({sum(c.token_cost for c in chunks)} tokens), "
        f"{len(questions)} questions"
    )
    return benchmark


def generate_frontier_catalog(n: int, seed: int) -> ToolCatalog:
    """Synthetic catalog of ``n`` tools; the first m tools match for any n >= m.

    Raises:
        SchemaValidationError: n is not positive
    """
    if n <= 0:
        raise SchemaValidationError(f"frontier catalog size must be positive, got {n}")
    return build_frontier_catalog(n, seed)


def validate_benchmark(benchmark: Benchmark) -> None:
    """Check every benchmark invariant.

    Raises:
        BenchmarkValidationError: The first violated invariant
    """
    if benchmark.format_version != BENCHMARK_FORMAT_VERSION:
        raise BenchmarkValidationError(
            f"unsupported benchmark format version {benchmark.format_version}"
        )

    counts = Counter(q.qtype for q in benchmark.questions)
    for qtype, expected in QUESTION_TYPE_COUNTS.items():
        if counts.get(qtype, 0) != expected:
            raise BenchmarkValidationError(
                f"question type {qtype.value}: expected {expected} questions, "
                f"found {counts.get(qtype, 0)}"
            )

    question_ids = [q.id for q in benchmark.questions]
    if len(set(question_ids)) != len(question_ids):
        raise BenchmarkValidationError("duplicate question ids")
    chunk_map = benchmark.chunk_map()
    if len(chunk_map) != len(benchmark.chunks):
        raise BenchmarkValidationError("duplicate chunk ids")

    for chunk in benchmark.chunks:
        if count_tokens(chunk.text) != chunk.token_cost:
            raise BenchmarkValidationError(f"chunk {chunk.id}: token cost does not match its text")
        for span in chunk.spans:
            if span.text not in chunk.text:
                raise BenchmarkValidationError(f"chunk {chunk.id}: span not found in text")
            if span.question_id not in question_ids:
                raise BenchmarkValidationError(
                    f"chunk {chunk.id}: span references unknown question {span.question_id}"
                )

    seen_calls = set()
    for question in benchmark.questions:
        where = f"question {question.id} ({question.qtype.value})"
        for chunk_id in question.gold_chunk_ids:
            if chunk_id not in chunk_map:
                raise BenchmarkValidationError(f"{where}: unknown gold chunk {chunk_id}")

        gold_text = " ".join(chunk_map[c].text for c in question.gold_chunk_ids)
        gold_text += " " + (question.gold_evidence or "")
        for span in question.supporting_spans:
            if span not in gold_text:
                raise BenchmarkValidationError(f"{where}: supporting span has no gold source")

        if question.gold_tool is not None:
            tool = next((t for t in benchmark.catalog.tools if t.name == question.gold_tool.name), None)
            if tool is None:
                raise BenchmarkValidationError(
                    f"{where}: gold tool {question.gold_tool.name} is not in the catalog"
                )
            arguments = question.gold_tool.arguments
            param_names = {p.name for p in tool.parameters}
            if not set(arguments) <= param_names or not set(tool.required) <= set(arguments):
                raise BenchmarkValidationError(f"{where}: gold arguments do not fit {tool.name}")
            call = (tool.name, json.dumps(arguments, sort_keys=True))
            if call in seen_calls:
                raise BenchmarkValidationError(f"{where}: gold tool call is not unique")
            seen_calls.add(call)

        ranking = benchmark.retrieval_rank.get(question.id)
        if ranking is None:
            raise BenchmarkValidationError(f"{where}: missing retrieval ranking")
        if sorted(ranking) != sorted(chunk_map):
            raise BenchmarkValidationError(f"{where}: ranking is not a permutation of the corpus")
        for chunk_id in question.gold_chunk_ids:
            if ranking.index(chunk_id) + 1 > benchmark.gold_rank_bound:
                raise BenchmarkValidationError(
                    f"{where}: gold chunk {chunk_id} ranked below {benchmark.gold_rank_bound}"
                )


def benchmark_document(benchmark: Benchmark) -> str:
    """Deterministic JSON text of a benchmark."""
    document = {
        "format_version": benchmark.format_version,
        "seed": benchmark.seed,
        "gold_rank_bound": benchmark.gold_rank_bound,
        "catalog": [tool_to_dict(tool) for tool in benchmark.catalog.tools],
        "chunks": [chunk.model_dump(mode="json") for chunk in benchmark.chunks],
        "questions": [question.model_dump(mode="json") for question in benchmark.questions],
        "retrieval_rank": benchmark.retrieval_rank,
    }
    return json.dumps(document, ensure_ascii=False, indent=2) + "\n"


def benchmark_fingerprint(benchmark: Benchmark) -> str:
    """Short content hash identifying a benchmark in run records."""
    return hashlib.sha256(benchmark_document(benchmark).encode("utf-8")).hexdigest()[:16]


def save_benchmark(benchmark: Benchmark, path: Union[str, Path]) -> None:
    Path(path).write_text(benchmark_document(benchmark), encoding="utf-8")
    logger.info(f"Saved benchmark to {path}")


def load_benchmark(path: Union[str, Path]) -> Benchmark:
    """Read and validate a benchmark file.

    Raises:
        BenchmarkValidationError: Unreadable file, malformed content or a broken invariant
    """
    file_path = Path(path)
    try:
        data = json.loads(file_path.read_text(encoding="utf-8"))
    except OSError as e:
        raise BenchmarkValidationError(f"cannot read benchmark {path}: {e}") from e
    except json.JSONDecodeError as e:
        raise BenchmarkValidationError(f"malformed benchmark {path}: {e}") from e
    if not isinstance(data, dict):
        raise BenchmarkValidationError(f"malformed benchmark {path}: expected a JSON object")

    try:
        catalog = catalog_from_data(data.get("catalog", []))
    except SchemaValidationError as e:
        raise BenchmarkValidationError(f"benchmark {path}: {e}") from e

    try:
        benchmark = Benchmark(
            format_version=data.get("format_version", BENCHMARK_FORMAT_VERSION),
            seed=data["seed"],
            gold_rank_bound=data.get("gold_rank_bound", 6),
            catalog=catalog,
            chunks=tuple(Chunk.model_validate(c) for c in data.get("chunks", [])),
            questions=tuple(Question.model_validate(q) for q in data.get("questions", [])),
            retrieval_rank=data.get("retrieval_rank", {}),
        )
    except KeyError as e:
        raise BenchmarkValidationError(f"benchmark {path}: missing field {e}") from e
    except ValidationError as e:
        error = e.errors()[0]
        raise BenchmarkValidationError(
            f"benchmark {path}: {error.get('msg')} at {'.'.join(str(p) for p in error['loc'])}"
        ) from e

    validate_benchmark(benchmark)
    return benchmark

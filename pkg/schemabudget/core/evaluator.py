"""
Episode scoring: exact match, token F1, tool selection and RAG coverage.

Answers are normalized the extractive-QA way: lowercase, punctuation removed,
articles dropped, whitespace collapsed.
"""

import re
import string
from collections import Counter, defaultdict
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

import numpy as np

from ..models.analysis import AggregateRow
from ..models.benchmark import Chunk, Question
from ..models.episode import EpisodeRecord, MetricRow

_ARTICLES = re.compile(r"\b(a|an|the)\b")
_PUNCTUATION = str.maketrans("", "", string.punctuation)

GROUP_KEYS = ("model_id", "format", "window", "qtype", "tool_count")


def normalize_answer(text: str) -> str:
    """Lowercase, strip punctuation and articles, collapse whitespace."""
    text = text.lower().translate(_PUNCTUATION)
    text = _ARTICLES.sub(" ", text)
    return " ".join(text.split())


def exact_match(prediction: Optional[str], gold: str, aliases: Iterable[str] = ()) -> int:
    """1 iff the normalized prediction equals the gold answer or an alias."""
    if prediction is None:
        return 0
    normalized = normalize_answer(prediction)
    return int(any(normalized == normalize_answer(ref) for ref in (gold, *aliases)))


def token_f1(prediction: Optional[str], gold: str) -> float:
    """F1 over normalized token multisets."""
    pred_tokens = normalize_answer(prediction or "").split()
    gold_tokens = normalize_answer(gold).split()
    if not pred_tokens and not gold_tokens:
        return 1.0
    if not pred_tokens or not gold_tokens:
        return 0.0
    common = sum((Counter(pred_tokens) & Counter(gold_tokens)).values())
    if common == 0:
        return 0.0
    precision = common / len(pred_tokens)
    recall = common / len(gold_tokens)
    return 2 * precision * recall / (precision + recall)


def best_f1(prediction: Optional[str], gold: str, aliases: Iterable[str] = ()) -> float:
    """Highest F1 over the gold answer and its aliases."""
    if prediction is None:
        return 0.0
    return max(token_f1(prediction, ref) for ref in (gold, *aliases))


def tool_selection_accuracy(record: EpisodeRecord, question: Question) -> Optional[int]:
    """1 iff the gold tool was called at least once; None for questions without one."""
    if question.gold_tool is None:
        return None
    return int(any(call.tool_name == question.gold_tool.name for call in record.tool_calls))


def rag_coverage(
    record: EpisodeRecord, question: Question, chunks_by_id: Optional[Mapping[str, Chunk]] = None
) -> float:
    """Fraction of gold chunks that reached the context.

    A truncated chunk counts only if every supporting span of the question that
    lives in it survived truncation.
    """
    if not question.gold_chunk_ids:
        return 1.0
    packed = record.allocation.packed_chunk_ids
    matched = 0
    for chunk_id in question.gold_chunk_ids:
        if chunk_id not in packed:
            continue
        if record.allocation.truncated_last and chunk_id == packed[-1]:
            kept = record.truncated_chunk_text or ""
            source = chunks_by_id[chunk_id].text if chunks_by_id else None
            spans = [s for s in question.supporting_spans if source is None or s in source]
            if not all(span in kept for span in spans):
                continue
        matched += 1
    return matched / len(question.gold_chunk_ids)


def score_episode(
    record: EpisodeRecord, question: Question, chunks_by_id: Optional[Mapping[str, Chunk]] = None
) -> MetricRow:
    """Compute the metric row of one episode."""
    em = exact_match(record.final_answer, question.gold_answer, question.aliases)
    f1 = best_f1(record.final_answer, question.gold_answer, question.aliases)
    return MetricRow(
        question_id=question.id,
        em=em,
        f1=1.0 if em else f1,
        tool_ok=tool_selection_accuracy(record, question),
        rag_coverage=rag_coverage(record, question, chunks_by_id),
        overflow=int(record.allocation.overflow),
        k=record.allocation.k,
    )


def _group_value(record: EpisodeRecord, key: str) -> str:
    value = getattr(record, key)
    return str(getattr(value, "value", value))


def aggregate(records: Sequence[EpisodeRecord], keys: Sequence[str]) -> List[AggregateRow]:
    """Mean metrics per group of records.

    Args:
        records: Scored records
        keys: Record attributes to group by, e.g. ("model_id", "format")

    Returns:
        One row per group in first-seen order
    """
    unknown = [k for k in keys if k not in GROUP_KEYS]
    if unknown:
        raise ValueError(f"cannot group by {unknown}; choose from {GROUP_KEYS}")

    groups: Dict[Tuple[str, ...], List[MetricRow]] = defaultdict(list)
    for record in records:
        if record.metrics is None:
            raise ValueError(f"record {record.run_id} carries no metrics")
        groups[tuple(_group_value(record, k) for k in keys)].append(record.metrics)

    rows: List[AggregateRow] = []
    for group, metrics in groups.items():
        tool_scores = [m.tool_ok for m in metrics if m.tool_ok is not None]
        rows.append(
            AggregateRow(
                group=group,
                n=len(metrics),
                em_pct=100.0 * float(np.mean([m.em for m in metrics])),
                mean_f1=float(np.mean([m.f1 for m in metrics])),
                tool_accuracy=float(np.mean(tool_scores)) if tool_scores else None,
                coverage=float(np.mean([m.rag_coverage for m in metrics])),
                overflow_rate=float(np.mean([m.overflow for m in metrics])),
                mean_k=float(np.mean([m.k for m in metrics])),
            )
        )
    return rows

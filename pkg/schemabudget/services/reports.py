"""
Report tables built from run records.

Every table is a pure function of the records: paired shapes join the two
conditions by question id and fail loudly when a counterpart is missing.
"""

import csv
import logging
from pathlib import Path
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple, Union

import numpy as np
from pydantic import BaseModel, ConfigDict

from ..core.evaluator import aggregate
from ..core.exceptions import PairingError, StatisticsError, UsageError
from ..core.stats import DEFAULT_BOOTSTRAP_SEED, paired_comparison, pearson_r
from ..models.analysis import PairedComparison
from ..models.episode import EpisodeRecord
from ..models.schema import SchemaFormat

logger = logging.getLogger(__name__)

REPORT_SHAPES = (
    "enablement",
    "budget",
    "frontier",
    "qtype",
    "delta_matrix",
    "ablation",
    "dilution",
)
DEFAULT_WINDOWS = {"enablement": 8192, "budget": 16384}
COMPRESSED_FORMATS = (SchemaFormat.TSCG_CONSERVATIVE, SchemaFormat.TSCG_BALANCED)
CI_COLUMNS = ("ci_low", "ci_high")


class ReportTable(BaseModel):
    """A named table with optional footer notes."""

    model_config = ConfigDict(frozen=True)

    shape: str
    columns: Tuple[str, ...]
    rows: Tuple[Tuple[Any, ...], ...] = ()
    notes: Tuple[str, ...] = ()

    def cells(self) -> List[List[str]]:
        return [[format_cell(value) for value in row] for row in self.rows]

    def render(self) -> str:
        """Aligned plain-text rendering."""
        body = self.cells()
        widths = [len(c) for c in self.columns]
        for row in body:
            widths = [max(w, len(cell)) for w, cell in zip(widths, row)]
        lines = ["  ".join(c.ljust(w) for c, w in zip(self.columns, widths)).rstrip()]
        lines.append("  ".join("-" * w for w in widths))
        for row in body:
            lines.append("  ".join(cell.rjust(w) for cell, w in zip(row, widths)).rstrip())
        lines.extend(self.notes)
        return "\n".join(lines)

    def write_csv(self, path: Union[str, Path]) -> Path:
        path = Path(path)
        path.parent.mkdir(parents=True, exist_ok=True)
        with open(path, "w", newline="", encoding="utf-8") as f:
            writer = csv.writer(f)
            writer.writerow(self.columns)
            writer.writerows(self.cells())
        return path


def format_cell(value: Any) -> str:
    if value is None:
        return ""
    if isinstance(value, SchemaFormat):
        return value.value
    if isinstance(value, float):
        return f"{value:.4f}" if abs(value) < 1 and value != 0 else f"{value:.2f}"
    return str(value)


def _ordered(values) -> List[Any]:
    return list(dict.fromkeys(values))


def _select(records: Sequence[EpisodeRecord], **filters: Any) -> List[EpisodeRecord]:
    return [r for r in records if all(getattr(r, k) == v for k, v in filters.items())]


def _metric(record: EpisodeRecord, metric: str) -> float:
    if record.metrics is None:
        raise PairingError(f"record {record.run_id} carries no metrics")
    value = getattr(record.metrics, metric)
    return float(value if value is not None else 0)


def pair_values(
    base: Sequence[EpisodeRecord], other: Sequence[EpisodeRecord], metric: str, label: str
) -> Tuple[List[float], List[float]]:
    """Align a metric of two conditions by question id.

    Raises:
        PairingError: A question appears in one condition only, or twice in one
    """
    def index(records: Sequence[EpisodeRecord]) -> Dict[str, EpisodeRecord]:
        by_id: Dict[str, EpisodeRecord] = {}
        for record in records:
            if record.question_id in by_id:
                raise PairingError(f"{label}: question {record.question_id} recorded twice")
            by_id[record.question_id] = record
        return by_id

    left, right = index(base), index(other)
    missing = sorted(set(left) ^ set(right))
    if missing:
        raise PairingError(
            f"{label}: no counterpart for {len(missing)} questions (e.g. {missing[:3]})"
        )
    if not left:
        raise PairingError(f"{label}: no records to pair")
    ids = sorted(left)
    return (
        [_metric(left[q], metric) for q in ids],
        [_metric(right[q], metric) for q in ids],
    )


def compare(
    base: Sequence[EpisodeRecord],
    other: Sequence[EpisodeRecord],
    metric: str,
    label: str,
    with_ci: bool = False,
    seed: int = DEFAULT_BOOTSTRAP_SEED,
) -> PairedComparison:
    a, b = pair_values(base, other, metric, label)
    return paired_comparison(a, b, with_ci=with_ci, seed=seed)


def _pct(value: float) -> float:
    return 100.0 * value


def _mean_k(records: Sequence[EpisodeRecord]) -> float:
    return float(np.mean([r.allocation.k for r in records])) if records else 0.0


def _ci_cells(comparison: PairedComparison, with_ci: bool, scale: float = 100.0) -> Tuple:
    if not with_ci:
        return ()
    if comparison.ci_low is None:
        return (None, None)
    return (scale * comparison.ci_low, scale * comparison.ci_high)


def _compressed_present(records: Sequence[EpisodeRecord]) -> List[SchemaFormat]:
    present = {r.format for r in records}
    return [f for f in COMPRESSED_FORMATS if f in present]


def enablement_report(
    records: Sequence[EpisodeRecord],
    window: Optional[int] = None,
    with_ci: bool = False,
    seed: int = DEFAULT_BOOTSTRAP_SEED,
) -> ReportTable:
    """JSON vs compressed EM per model at one window, with mean packed chunks."""
    window = window or DEFAULT_WINDOWS["enablement"]
    at_window = _select(records, window=window)
    if not at_window:
        raise PairingError(f"no records at window {window}")
    columns = (
        "model", "format", "n", "json_em", "tscg_em", "delta_pp", "p", "sig", "json_k", "tscg_k",
    ) + (CI_COLUMNS if with_ci else ())
    rows = []
    for model in _ordered(r.model_id for r in at_window):
        base = _select(at_window, model_id=model, format=SchemaFormat.JSON)
        for fmt in _compressed_present(at_window):
            other = _select(at_window, model_id=model, format=fmt)
            cmp = compare(base, other, "em", f"{model} json vs {fmt.value}", with_ci, seed)
            rows.append(
                (
                    model, fmt, cmp.n, _pct(cmp.mean_a), _pct(cmp.mean_b), _pct(cmp.delta),
                    cmp.p_value, cmp.stars, _mean_k(base), _mean_k(other),
                )
                + _ci_cells(cmp, with_ci)
            )
    return ReportTable(shape="enablement", columns=columns, rows=tuple(rows))


def budget_report(records: Sequence[EpisodeRecord], window: Optional[int] = None, **_: Any) -> ReportTable:
    """Schema tokens, retrieval budget and packed chunks per format at one window."""
    window = window or DEFAULT_WINDOWS["budget"]
    at_window = _select(records, window=window)
    if not at_window:
        raise PairingError(f"no records at window {window}")
    rows = []
    for fmt in _ordered(r.format for r in at_window):
        group = _select(at_window, format=fmt)
        first = group[0].allocation
        rows.append(
            (
                fmt,
                first.schema_tokens,
                first.rag_budget,
                int(np.median([r.allocation.k for r in group])),
                _mean_k(group),
                float(np.mean([r.allocation.overflow for r in group])),
            )
        )
    return ReportTable(
        shape="budget",
        columns=("format", "schema_tokens", "rag_budget", "k", "mean_k", "overflow_rate"),
        rows=tuple(rows),
    )


def frontier_report(
    records: Sequence[EpisodeRecord],
    with_ci: bool = False,
    seed: int = DEFAULT_BOOTSTRAP_SEED,
    **_: Any,
) -> ReportTable:
    """Per model, window, tool count and format EM; compressed rows carry the paired test against JSON."""
    columns = (
        "model", "window", "tool_count", "format", "n", "em_pct", "mean_f1", "mean_k", "overflow_rate",
        "delta_pp", "p", "sig",
    ) + (CI_COLUMNS if with_ci else ())
    rows = []
    for model in _ordered(r.model_id for r in records):
        for window in sorted(set(r.window for r in records if r.model_id == model)):
            cell = _select(records, model_id=model, window=window)
            for n in sorted(set(r.tool_count for r in cell)):
                at_n = _select(cell, tool_count=n)
                base = _select(at_n, format=SchemaFormat.JSON)
                for fmt in _ordered(r.format for r in at_n):
                    group = _select(at_n, format=fmt)
                    summary = aggregate(group, ("format",))[0]
                    tail: Tuple = (None, None, "") + ((None, None) if with_ci else ())
                    if fmt != SchemaFormat.JSON and base:
                        label = f"{model} w={window} n={n} json vs {fmt.value}"
                        cmp = compare(base, group, "em", label, with_ci, seed)
                        tail = (_pct(cmp.delta), cmp.p_value, cmp.stars) + _ci_cells(cmp, with_ci)
                    rows.append(
                        (model, window, n, fmt, summary.n, summary.em_pct, summary.mean_f1, summary.mean_k,
                         summary.overflow_rate) + tail
                    )
    return ReportTable(shape="frontier", columns=columns, rows=tuple(rows))


def qtype_report(records: Sequence[EpisodeRecord], **_: Any) -> ReportTable:
    """Scores per model, question type and format."""
    rows = [
        row.group + (row.n, row.em_pct, row.mean_f1, row.tool_accuracy, row.coverage, row.mean_k)
        for row in aggregate(records, ("model_id", "window", "qtype", "format"))
    ]
    return ReportTable(
        shape="qtype",
        columns=(
            "model", "window", "qtype", "format", "n", "em_pct", "mean_f1", "tool_acc",
            "coverage", "mean_k",
        ),
        rows=tuple(rows),
    )


def delta_matrix_report(
    records: Sequence[EpisodeRecord],
    with_ci: bool = False,
    seed: int = DEFAULT_BOOTSTRAP_SEED,
    **_: Any,
) -> ReportTable:
    """EM and F1 deltas against JSON for every model, window and compressed format."""
    columns = (
        "model", "window", "format", "json_em", "tscg_em", "delta_em", "p_em", "sig_em",
        "json_f1", "tscg_f1", "delta_f1", "p_f1", "sig_f1",
    ) + (CI_COLUMNS if with_ci else ())
    rows = []
    for model in _ordered(r.model_id for r in records):
        for window in sorted(set(r.window for r in records if r.model_id == model)):
            cell = _select(records, model_id=model, window=window)
            base = _select(cell, format=SchemaFormat.JSON)
            for fmt in _compressed_present(cell):
                other = _select(cell, format=fmt)
                label = f"{model} {window} json vs {fmt.value}"
                em = compare(base, other, "em", label, with_ci, seed)
                f1 = compare(base, other, "f1", label)
                rows.append(
                    (
                        model, window, fmt, _pct(em.mean_a), _pct(em.mean_b), _pct(em.delta),
                        em.p_value, em.stars, f1.mean_a, f1.mean_b, f1.delta, f1.p_value, f1.stars,
                    )
                    + _ci_cells(em, with_ci)
                )
    return ReportTable(shape="delta_matrix", columns=columns, rows=tuple(rows))


def ablation_report(
    records: Sequence[EpisodeRecord],
    with_ci: bool = False,
    seed: int = DEFAULT_BOOTSTRAP_SEED,
    **_: Any,
) -> ReportTable:
    """Conservative vs balanced compression EM per model and window."""
    columns = (
        "model", "window", "conservative_em", "balanced_em", "delta_pp", "p", "sig",
        "conservative_k", "balanced_k",
    ) + (CI_COLUMNS if with_ci else ())
    rows = []
    for model in _ordered(r.model_id for r in records):
        for window in sorted(set(r.window for r in records if r.model_id == model)):
            cell = _select(records, model_id=model, window=window)
            base = _select(cell, format=SchemaFormat.TSCG_CONSERVATIVE)
            other = _select(cell, format=SchemaFormat.TSCG_BALANCED)
            cmp = compare(base, other, "em", f"{model} {window} conservative vs balanced", with_ci, seed)
            rows.append(
                (
                    model, window, _pct(cmp.mean_a), _pct(cmp.mean_b), _pct(cmp.delta),
                    cmp.p_value, cmp.stars, _mean_k(base), _mean_k(other),
                )
                + _ci_cells(cmp, with_ci)
            )
    return ReportTable(shape="ablation", columns=columns, rows=tuple(rows))


def dilution_report(records: Sequence[EpisodeRecord], **_: Any) -> ReportTable:
    """Chunk delta against EM delta per (model, window) group, with their correlation."""
    chunk_deltas: List[float] = []
    em_deltas: List[float] = []
    rows = []
    for model in _ordered(r.model_id for r in records):
        for window in sorted(set(r.window for r in records if r.model_id == model)):
            cell = _select(records, model_id=model, window=window)
            base = _select(cell, format=SchemaFormat.JSON)
            other = _select(cell, format=SchemaFormat.TSCG_CONSERVATIVE)
            label = f"{model} {window} dilution"
            k_json, k_tscg = pair_values(base, other, "k", label)
            em_json, em_tscg = pair_values(base, other, "em", label)
            chunk_delta = float(np.mean(k_tscg) - np.mean(k_json))
            em_delta = _pct(float(np.mean(em_tscg) - np.mean(em_json)))
            chunk_deltas.append(chunk_delta)
            em_deltas.append(em_delta)
            rows.append((model, window, float(np.mean(k_json)), float(np.mean(k_tscg)), chunk_delta, em_delta))

    try:
        note = f"pearson_r(chunk_delta, em_delta) = {pearson_r(chunk_deltas, em_deltas):.4f}"
    except StatisticsError as e:
        note = f"pearson_r undefined: {e}"
    return ReportTable(
        shape="dilution",
        columns=("model", "window", "json_k", "tscg_k", "chunk_delta", "em_delta_pp"),
        rows=tuple(rows),
        notes=(note,),
    )


_BUILDERS: Dict[str, Callable[..., ReportTable]] = {
    "enablement": enablement_report,
    "budget": budget_report,
    "frontier": frontier_report,
    "qtype": qtype_report,
    "delta_matrix": delta_matrix_report,
    "ablation": ablation_report,
    "dilution": dilution_report,
}


def build_report(
    shape: str,
    records: Sequence[EpisodeRecord],
    window: Optional[int] = None,
    with_ci: bool = False,
    seed: int = DEFAULT_BOOTSTRAP_SEED,
) -> ReportTable:
    """Build one report shape.

    Raises:
        UsageError: Unknown shape
        PairingError: Records cannot be paired for the shape
    """
    builder = _BUILDERS.get(shape)
    if builder is None:
        raise UsageError(f"unknown report shape '{shape}'; choose from {', '.join(REPORT_SHAPES)}")
    if not records:
        raise PairingError("no records to report on")
    kwargs: Dict[str, Any] = {"with_ci": with_ci, "seed": seed}
    if shape in DEFAULT_WINDOWS:
        kwargs["window"] = window
    table = builder(records, **kwargs)
    logger.info(f"Built {shape} report with {len(table.rows)} rows")
    return table


def write_report(table: ReportTable, out_dir: Union[str, Path]) -> Path:
    """Write ``<shape>.csv`` under ``out_dir``."""
    return table.write_csv(Path(out_dir) / f"{table.shape}.csv")

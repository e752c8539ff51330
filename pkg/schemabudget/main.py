"""
Command-line entry point for schema-budget-lab.

Subcommands generate benchmarks and frontier catalogs, compress schemas, plan
context budgets, run experiments, sweep frontier thresholds, fit the context
utilization curve, compare run-record files and emit report tables.
"""

import argparse
import asyncio
import json
import logging
import sys
from pathlib import Path
from typing import Any, List, Optional, Sequence

from .config.settings import ExperimentConfig, load_experiment_config, settings
from .core.budget_planner import allocate
from .core.compressor import compress_tool, render_catalog
from .core.curvefit import curve_table, fit_ck, points_from_records
from .core.exceptions import PairingError, SchemaBudgetError, SchemaValidationError, UsageError
from .core.logging import setup_logging
from .core.schema_model import catalog_json_text, load_catalog, save_catalog, serialize_tool
from .core.stats import paired_comparison
from .core.token_counter import count_tokens
from .models.schema import CompressionProfile, CompressionVariant, SchemaFormat, ToolCatalog
from .services.benchmark_generator import (
    benchmark_fingerprint,
    generate_frontier_catalog,
    generate_novatech,
    save_benchmark,
)
from .services.experiment_runner import (
    build_client,
    resolve_benchmark,
    resolve_profile,
    run_experiment,
)
from .services.record_store import RecordStore, load_records
from .services.reports import REPORT_SHAPES, ReportTable, build_report, pair_values, write_report
from .services.sweeps import (
    FRONTIER_TOOL_COUNTS,
    FRONTIER_WINDOW,
    CatalogCostModel,
    FrontierCorpusSpec,
    frontier_run,
    sweep_thresholds,
)

logger = logging.getLogger(__name__)


class CliParser(argparse.ArgumentParser):
    """ArgumentParser that raises instead of exiting on usage errors."""

    def error(self, message: str):
        raise UsageError(f"{self.prog}: {message}")


def parse_counts(text: str) -> List[int]:
    """Tool counts from ``10,20,50`` or an inclusive range ``start:stop[:step]``."""
    try:
        if ":" in text:
            parts = [int(p) for p in text.split(":")]
            if len(parts) not in (2, 3):
                raise ValueError(text)
            start, stop = parts[0], parts[1]
            step = parts[2] if len(parts) == 3 else 1
            if step < 1:
                raise ValueError(text)
            counts = list(range(start, stop + 1, step))
        else:
            counts = [int(p) for p in text.split(",") if p.strip()]
    except ValueError:
        raise UsageError(f"invalid tool counts '{text}'")
    if not counts or any(n < 1 for n in counts):
        raise UsageError(f"tool counts must be positive integers, got '{text}'")
    return counts


def parse_formats(text: Optional[str]) -> List[SchemaFormat]:
    if not text:
        return list(SchemaFormat)
    try:
        return [SchemaFormat(item.strip()) for item in text.split(",") if item.strip()]
    except ValueError:
        raise UsageError(f"unknown format in '{text}'; choose from {[f.value for f in SchemaFormat]}")


def _experiment_config(args: argparse.Namespace, **overrides: Any) -> ExperimentConfig:
    overrides.setdefault("seed", args.seed)
    if args.out is not None:
        overrides.setdefault("out", args.out)
    return load_experiment_config(args.config, overrides)


def _seed(args: argparse.Namespace) -> int:
    return _experiment_config(args).seed


def _out_dir(args: argparse.Namespace, default: str = "runs") -> Path:
    path = Path(args.out or default)
    path.mkdir(parents=True, exist_ok=True)
    return path


def _catalog(path: Optional[str], seed: int) -> ToolCatalog:
    if path:
        return load_catalog(path)
    return generate_novatech(seed).catalog


def _emit(table: ReportTable, out_dir: Path) -> None:
    print(table.render())
    write_report(table, out_dir)


def cmd_gen_benchmark(args: argparse.Namespace) -> None:
    benchmark = generate_novatech(_seed(args), args.gold_rank_bound)
    out = Path(args.out or "benchmark.json")
    save_benchmark(benchmark, out)
    print(f"{out} ({len(benchmark.questions)} questions, fingerprint {benchmark_fingerprint(benchmark)})")


def cmd_gen_frontier(args: argparse.Namespace) -> None:
    catalog = generate_frontier_catalog(args.tools, _seed(args))
    out = Path(args.out or f"frontier_{args.tools}.json")
    save_catalog(catalog, out)
    print(f"{out} ({len(catalog)} tools)")


def cmd_compress(args: argparse.Namespace) -> None:
    config = _experiment_config(args, calibration=args.calibration)
    counter = resolve_profile(config)
    catalog = _catalog(args.catalog, config.seed)
    if not catalog.tools:
        raise SchemaValidationError("catalog has no tools to compress")
    profile = CompressionProfile(variant=CompressionVariant(args.variant))
    out_dir = _out_dir(args, "compressed")

    lines = [compress_tool(tool, profile) for tool in catalog.tools]
    (out_dir / f"catalog.{args.variant}.sig").write_text("\n".join(lines) + "\n", encoding="utf-8")

    rows = []
    for tool, line in zip(catalog.tools, lines):
        json_tokens = count_tokens(serialize_tool(tool), counter)
        compressed_tokens = count_tokens(line, counter)
        rows.append((tool.name, json_tokens, compressed_tokens, 1 - compressed_tokens / json_tokens))
    json_total = count_tokens(catalog_json_text(catalog), counter)
    compressed_total = count_tokens("\n".join(lines), counter)
    rows.append(("TOTAL", json_total, compressed_total, 1 - compressed_total / json_total))

    table = ReportTable(
        shape="savings",
        columns=("tool", "json_tokens", "compressed_tokens", "savings"),
        rows=tuple(rows),
    )
    _emit(table, out_dir)


def cmd_plan_budget(args: argparse.Namespace) -> None:
    config = _experiment_config(args, calibration=args.calibration, benchmark=args.benchmark)
    counter = resolve_profile(config)
    benchmark = resolve_benchmark(config)
    catalog = load_catalog(args.catalog) if args.catalog else benchmark.catalog
    chunks = [(c.id, c.token_cost) for c in benchmark.chunks]
    budget = config.budget_config(args.window).with_query(args.query_tokens)

    rows = []
    for schema_format in parse_formats(args.formats):
        schema_tokens = count_tokens(render_catalog(catalog, schema_format), counter)
        allocation = allocate(budget, schema_tokens, chunks)
        rows.append(
            (schema_format, schema_tokens, allocation.rag_budget, allocation.k, allocation.overflow)
        )
    table = ReportTable(
        shape="plan_budget",
        columns=("format", "schema_tokens", "rag_budget", "k", "overflow"),
        rows=tuple(rows),
    )
    print(table.render())


def cmd_run(args: argparse.Namespace) -> None:
    config = _experiment_config(
        args,
        benchmark=args.benchmark,
        formats=args.formats,
        windows=args.windows,
        client=args.client,
        epsilon=args.epsilon,
        client_seed=args.client_seed,
        endpoint=args.endpoint,
        model=args.model,
        calibration=args.calibration,
        concurrency=args.concurrency,
        max_iters=args.max_iters,
    )
    summary = run_experiment(config)
    print(
        f"{summary.records_path}: {summary.written} written, {summary.skipped} skipped, "
        f"{summary.errored} errored ({summary.error_rate:.1%})"
    )


async def _frontier_records(config: ExperimentConfig, counts: List[int], formats, window: int, out_dir: Path):
    benchmark = resolve_benchmark(config)
    client = build_client(config)
    store = RecordStore(out_dir / "frontier_records.jsonl")
    try:
        _, records = await frontier_run(
            benchmark,
            client,
            tool_counts=counts,
            formats=formats,
            window=window,
            seed=config.seed,
            profile=resolve_profile(config),
            benchmark_hash=benchmark_fingerprint(benchmark),
            concurrency=config.concurrency,
        )
    finally:
        await client.close()
    for record in records:
        await store.append(record)
    return records


def cmd_sweep_frontier(args: argparse.Namespace) -> None:
    counts = parse_counts(args.tools) if args.tools else list(FRONTIER_TOOL_COUNTS)
    if min(args.granularity, args.chunks, args.chunk_tokens, args.n_max) < 1:
        raise UsageError("--granularity, --chunks, --chunk-tokens and --n-max must be positive")
    formats = parse_formats(args.formats)
    out_dir = _out_dir(args)
    seed = _seed(args)
    n_max = max(args.n_max, max(counts))

    cost_model = CatalogCostModel(n_max, seed)
    corpus = FrontierCorpusSpec(n_chunks=args.chunks, chunk_tokens=args.chunk_tokens)
    reports = [
        sweep_thresholds(args.window, fmt, cost_model, corpus, n_max=n_max, granularity=args.granularity)
        for fmt in formats
    ]
    thresholds = out_dir / "thresholds.json"
    thresholds.write_text(
        json.dumps([r.model_dump(mode="json") for r in reports], indent=2), encoding="utf-8"
    )
    for report in reports:
        print(
            f"{report.format.value}: first chunk loss n={report.first_chunk_loss_n}, "
            f"overflow n={report.complete_overflow_n}, {report.per_tool_mean:.1f} tokens/tool"
        )

    if args.run:
        config = _experiment_config(args, benchmark=args.benchmark, epsilon=args.epsilon)
        records = asyncio.run(_frontier_records(config, counts, formats, args.window, out_dir))
        table = build_report("frontier", records, with_ci=args.ci)
    else:
        config = ExperimentConfig(seed=seed).budget_config(args.window)
        ranked = corpus.ranked()
        rows = []
        for n in counts:
            for fmt in formats:
                allocation = allocate(config, cost_model.schema_tokens(n, fmt), ranked)
                rows.append(
                    (n, fmt, allocation.schema_tokens, allocation.rag_budget, allocation.k,
                     allocation.overflow)
                )
        table = ReportTable(
            shape="frontier",
            columns=("tool_count", "format", "schema_tokens", "rag_budget", "k", "overflow"),
            rows=tuple(rows),
        )
    _emit(table, out_dir)


def _filter(records, window: Optional[int], schema_format: Optional[str], model: Optional[str] = None):
    return [
        r
        for r in records
        if (window is None or r.window == window)
        and (schema_format is None or r.format.value == schema_format)
        and (model is None or r.model_id == model)
    ]


def cmd_fit_curve(args: argparse.Namespace) -> None:
    records = _filter(load_records(args.records), args.window, args.format, args.model)
    points = points_from_records(records)
    fit = fit_ck(points)
    out_dir = _out_dir(args)
    (out_dir / "fit.json").write_text(
        json.dumps(fit.model_dump(by_alias=True), indent=2), encoding="utf-8"
    )
    table = ReportTable(
        shape="curve",
        columns=("k", "n", "mean_score", "fitted"),
        rows=tuple(curve_table(fit, points)),
        notes=(
            f"C(k) = {fit.c_max:.2f} * (1 - exp(-{fit.lam:.3f} k)) + {fit.c0:.2f}, "
            f"R^2 = {fit.r_squared:.4f} over {fit.n_points} points",
        ),
    )
    _emit(table, out_dir)


def cmd_stats(args: argparse.Namespace) -> None:
    base = _filter(load_records(args.a), args.window, args.format_a)
    other = _filter(load_records(args.b), args.window, args.format_b)
    if not base or not other:
        raise PairingError("both record files need at least one record after filtering")
    rows = []
    for metric in args.metrics.split(","):
        a, b = pair_values(base, other, metric.strip(), f"stats {metric}")
        cmp = paired_comparison(a, b, with_ci=args.ci, resamples=args.resamples)
        rows.append(
            (metric.strip(), cmp.n, cmp.mean_a, cmp.mean_b, cmp.delta, cmp.statistic,
             cmp.p_value, cmp.stars, cmp.cohens_d, cmp.effect_label, cmp.ci_low, cmp.ci_high)
        )
    table = ReportTable(
        shape="stats",
        columns=("metric", "n", "mean_a", "mean_b", "delta", "w", "p", "sig", "d", "effect",
                 "ci_low", "ci_high"),
        rows=tuple(rows),
    )
    _emit(table, _out_dir(args))


def cmd_report(args: argparse.Namespace) -> None:
    records = load_records(args.records)
    table = build_report(args.shape, records, window=args.window, with_ci=args.ci)
    _emit(table, _out_dir(args))


def build_parser() -> argparse.ArgumentParser:
    parser = CliParser(prog="schemabudget", description=__doc__.strip().splitlines()[0])
    parser.add_argument("--config", help="KEY=value experiment config file")
    parser.add_argument("--seed", type=int, default=None, help="Master seed")
    parser.add_argument("--out", default=None, help="Output file or directory")
    parser.add_argument("--log-level", default=None, help=f"Defaults to {settings.log_level}")
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("gen-benchmark", help="Generate the NovaTech benchmark file")
    gen.add_argument("--gold-rank-bound", type=int, default=6)
    gen.set_defaults(func=cmd_gen_benchmark)

    frontier = sub.add_parser("gen-frontier", help="Generate a synthetic frontier catalog")
    frontier.add_argument("--tools", type=int, required=True)
    frontier.set_defaults(func=cmd_gen_frontier)

    compress = sub.add_parser("compress", help="Compress a catalog and report savings")
    compress.add_argument("--catalog", help="Catalog JSON file; NovaTech when omitted")
    compress.add_argument("--variant", choices=[v.value for v in CompressionVariant], default="conservative")
    compress.add_argument("--calibration", help="CSV of text path and reference token count")
    compress.set_defaults(func=cmd_compress)

    plan = sub.add_parser("plan-budget", help="Print the context allocation per format")
    plan.add_argument("--window", type=int, default=16384)
    plan.add_argument("--formats", help="Comma-separated formats; all when omitted")
    plan.add_argument("--catalog", help="Catalog JSON file; the benchmark's when omitted")
    plan.add_argument("--benchmark", help="Benchmark file supplying the corpus")
    plan.add_argument("--query-tokens", type=int, default=0)
    plan.add_argument("--calibration")
    plan.set_defaults(func=cmd_plan_budget)

    run = sub.add_parser("run", help="Run the question x format x window grid")
    run.add_argument("--benchmark")
    run.add_argument("--formats")
    run.add_argument("--windows")
    run.add_argument("--client", choices=["oracle", "http"])
    run.add_argument("--epsilon", type=float)
    run.add_argument("--client-seed", type=int)
    run.add_argument("--endpoint")
    run.add_argument("--model")
    run.add_argument("--calibration")
    run.add_argument("--concurrency", type=int)
    run.add_argument("--max-iters", type=int)
    run.set_defaults(func=cmd_run)

    sweep = sub.add_parser("sweep-frontier", help="Frontier thresholds and optional oracle run")
    sweep.add_argument("--window", type=int, default=FRONTIER_WINDOW)
    sweep.add_argument("--formats", default="json,tscg_conservative")
    sweep.add_argument("--tools", help="Tool counts: 10,50,100 or start:stop[:step]")
    sweep.add_argument("--n-max", type=int, default=1000)
    sweep.add_argument("--granularity", type=int, default=1)
    sweep.add_argument("--chunks", type=int, default=500)
    sweep.add_argument("--chunk-tokens", type=int, default=350)
    sweep.add_argument("--run", action="store_true", help="Also run the benchmark at each count")
    sweep.add_argument("--benchmark")
    sweep.add_argument("--epsilon", type=float)
    sweep.add_argument("--ci", action="store_true")
    sweep.set_defaults(func=cmd_sweep_frontier)

    fit = sub.add_parser("fit-curve", help="Fit C(k) to (chunks, F1) points of a run")
    fit.add_argument("--records", required=True)
    fit.add_argument("--window", type=int)
    fit.add_argument("--format")
    fit.add_argument("--model")
    fit.set_defaults(func=cmd_fit_curve)

    stats = sub.add_parser("stats", help="Paired comparison of two run-record files")
    stats.add_argument("--a", required=True, help="Baseline records")
    stats.add_argument("--b", required=True, help="Treatment records")
    stats.add_argument("--window", type=int)
    stats.add_argument("--format-a")
    stats.add_argument("--format-b")
    stats.add_argument("--metrics", default="em,f1")
    stats.add_argument("--ci", action="store_true")
    stats.add_argument("--resamples", type=int, default=10_000)
    stats.set_defaults(func=cmd_stats)

    report = sub.add_parser("report", help="Emit a report table from run records")
    report.add_argument("--records", required=True)
    report.add_argument("--shape", choices=REPORT_SHAPES, required=True)
    report.add_argument("--window", type=int)
    report.add_argument("--ci", action="store_true")
    report.set_defaults(func=cmd_report)

    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    """Run the CLI and return its exit code."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        setup_logging(args.log_level or settings.log_level)
        args.func(args)
    except SchemaBudgetError as e:
        logger.error(f"❌ {type(e).__name__}: {e}")
        print(f"error: {e}", file=sys.stderr)
        return e.exit_code
    return 0


if __name__ == "__main__":
    sys.exit(main())

import csv
import json

import pytest

from schemabudget.core.exceptions import UsageError
from schemabudget.main import main, parse_counts
from schemabudget.core.schema_model import load_catalog
from schemabudget.services.benchmark_generator import (
    benchmark_fingerprint,
    generate_frontier_catalog,
    generate_novatech,
    load_benchmark,
)


def read_csv(path):
    with open(path, newline="", encoding="utf-8") as f:
        return list(csv.DictReader(f))


def test_gen_benchmark(tmp_path, capsys):
    out = tmp_path / "benchmark.json"
    assert main(["--seed", "0", "--out", str(out), "gen-benchmark"]) == 0
    benchmark = load_benchmark(out)
    assert len(benchmark.questions) == 100
    assert "fingerprint" in capsys.readouterr().out


def test_gen_frontier(tmp_path):
    out = tmp_path / "frontier.json"
    assert main(["--out", str(out), "gen-frontier", "--tools", "40"]) == 0
    assert len(json.loads(out.read_text(encoding="utf-8"))) == 40


def test_compress_reports_savings(tmp_path):
    assert main(["--out", str(tmp_path), "compress"]) == 0
    rows = read_csv(tmp_path / "savings.csv")
    assert len(rows) == 29
    total = rows[-1]
    assert total["tool"] == "TOTAL"
    assert 0.44 <= float(total["savings"]) <= 0.52
    assert (tmp_path / "catalog.conservative.sig").read_text(encoding="utf-8").count("\n") == 28


def test_compress_rejects_an_empty_catalog(tmp_path, capsys):
    catalog = tmp_path / "empty.json"
    catalog.write_text("[]\n", encoding="utf-8")
    assert main(["--out", str(tmp_path / "out"), "compress", "--catalog", str(catalog)]) == 2
    assert "no tools" in capsys.readouterr().err


def test_generators_take_the_seed_from_the_config_file(tmp_path):
    config = tmp_path / "grid.env"
    config.write_text("SEED=3\n", encoding="utf-8")

    assert generate_frontier_catalog(12, 3).tool_names != generate_frontier_catalog(12, 0).tool_names

    catalog_out = tmp_path / "frontier.json"
    assert main(["--config", str(config), "--out", str(catalog_out), "gen-frontier", "--tools", "12"]) == 0
    assert load_catalog(catalog_out).tool_names == generate_frontier_catalog(12, 3).tool_names

    benchmark_out = tmp_path / "benchmark.json"
    assert main(["--config", str(config), "--out", str(benchmark_out), "gen-benchmark"]) == 0
    assert benchmark_fingerprint(load_benchmark(benchmark_out)) == benchmark_fingerprint(generate_novatech(3))

    flag_out = tmp_path / "flag.json"
    assert main(["--config", str(config), "--seed", "5", "--out", str(flag_out), "gen-frontier", "--tools", "12"]) == 0
    assert load_catalog(flag_out).tool_names == generate_frontier_catalog(12, 5).tool_names


def test_plan_budget(capsys):
    assert main(["plan-budget", "--window", "8192", "--formats", "json,tscg_conservative"]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert lines[0].split() == ["format", "schema_tokens", "rag_budget", "k", "overflow"]
    assert lines[2].split()[-1] == "True"
    assert lines[3].split()[-1] == "False"


def test_run_then_report(tmp_path, capsys):
    runs = tmp_path / "runs"
    argv = ["--out", str(runs), "run", "--windows", "8192", "--formats", "json,tscg_conservative"]
    assert main(argv) == 0
    assert "200 written" in capsys.readouterr().out

    records = runs / "records.jsonl"
    report = ["--out", str(tmp_path), "report", "--records", str(records), "--shape", "enablement"]
    assert main(report) == 0
    (row,) = read_csv(tmp_path / "enablement.csv")
    assert float(row["json_em"]) == 0
    assert float(row["tscg_em"]) >= 25


def test_sweep_frontier_without_run(tmp_path):
    argv = ["--out", str(tmp_path), "sweep-frontier", "--tools", "10,50", "--n-max", "100"]
    assert main(argv) == 0
    thresholds = json.loads((tmp_path / "thresholds.json").read_text(encoding="utf-8"))
    assert [t["format"] for t in thresholds] == ["json", "tscg_conservative"]
    assert len(read_csv(tmp_path / "frontier.csv")) == 4


def test_usage_errors_exit_1(capsys):
    assert main([]) == 1
    assert main(["report", "--records", "x.jsonl", "--shape", "pie"]) == 1
    assert main(["sweep-frontier", "--tools", "10:"]) == 1
    assert "error:" in capsys.readouterr().err


def test_validation_errors_exit_2(tmp_path):
    assert main(["report", "--records", str(tmp_path / "absent.jsonl"), "--shape", "qtype"]) == 2
    assert main(["--config", str(tmp_path / "absent.env"), "run"]) == 2


@pytest.mark.parametrize(
    "text,counts",
    [("10,50,100", [10, 50, 100]), ("10:30:10", [10, 20, 30]), ("5:7", [5, 6, 7])],
)
def test_parse_counts(text, counts):
    assert parse_counts(text) == counts


@pytest.mark.parametrize("text", ["", "a,b", "10:5:0", "0,10", "1:2:3:4"])
def test_parse_counts_rejects(text):
    with pytest.raises(UsageError):
        parse_counts(text)

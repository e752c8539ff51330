import numpy as np
import pytest

from schemabudget.core.exceptions import ConfigError
from schemabudget.core.token_counter import (
    byte_length,
    calibrate,
    count_message,
    count_tokens,
    load_calibration_samples,
    truncate_to_tokens,
)
from schemabudget.models.budget import TokenCountProfile


def test_counts_bytes_over_ratio():
    assert count_tokens("") == 0
    assert count_tokens("a") == 1
    assert count_tokens("a" * 1400) == 350
    assert count_tokens("a" * 1401) == 351


def test_counts_normalized_utf8():
    assert byte_length("é") == 2
    assert count_tokens("é") == count_tokens("é") == 1
    assert count_tokens("日本語") == 3


def test_message_overhead_per_segment():
    assert count_message([]) == 0
    assert count_message([""]) == 4
    assert count_message(["a" * 400] * 3) == 312


def test_custom_ratio():
    profile = TokenCountProfile(bytes_per_token=3.5, per_message_overhead=0)
    assert count_tokens("a" * 7, profile) == 2
    assert count_tokens("a" * 8, profile) == 3


def test_superadditive_within_one_token():
    rng = np.random.default_rng(7)
    alphabet = list("abc déf ghi")
    for _ in range(200):
        a = "".join(rng.choice(alphabet, int(rng.integers(0, 40))))
        b = "".join(rng.choice(alphabet, int(rng.integers(0, 40))))
        total = count_tokens(a + b)
        assert count_tokens(a) + count_tokens(b) - 1 <= total <= count_tokens(a) + count_tokens(b)


def test_calibrate_recovers_the_generating_ratio():
    profile = TokenCountProfile(bytes_per_token=3.5)
    samples = [("x" * (7 * m), count_tokens("x" * (7 * m), profile)) for m in (1, 5, 40)]
    calibrated = calibrate(samples)
    assert calibrated.bytes_per_token == pytest.approx(3.5)
    assert calibrated.per_message_overhead == 4


def test_calibrate_single_sample():
    assert calibrate([("a" * 400, 100)]).bytes_per_token == 4.0


@pytest.mark.parametrize("samples", [[], [("abc", 0)]])
def test_calibrate_rejects_empty_evidence(samples):
    with pytest.raises(ConfigError):
        calibrate(samples)


def test_load_calibration_samples(tmp_path):
    (tmp_path / "one.txt").write_text("a" * 40, encoding="utf-8")
    (tmp_path / "two.txt").write_text("b" * 80, encoding="utf-8")
    csv_path = tmp_path / "samples.csv"
    csv_path.write_text("path,tokens\none.txt,10\ntwo.txt,20\n", encoding="utf-8")

    samples = load_calibration_samples(str(csv_path))
    assert samples == [("a" * 40, 10), ("b" * 80, 20)]
    assert calibrate(samples).bytes_per_token == 4.0


def test_load_calibration_samples_errors(tmp_path):
    with pytest.raises(ConfigError, match="not found"):
        load_calibration_samples(str(tmp_path / "absent.csv"))

    bad = tmp_path / "bad.csv"
    bad.write_text("path,tokens\nmissing.txt,10\n", encoding="utf-8")
    with pytest.raises(ConfigError, match="cannot read"):
        load_calibration_samples(str(bad))


def test_truncate_to_tokens_cuts_at_whitespace():
    text = "alpha beta gamma"
    assert truncate_to_tokens(text, 2) == "alpha"
    assert truncate_to_tokens(text, 100) == text
    assert truncate_to_tokens(text, 0) == ""
    assert truncate_to_tokens("alphabetagamma", 1) == ""


def test_truncated_text_fits_its_budget():
    text = " ".join(f"word{i}" for i in range(300))
    for budget in (1, 7, 50, 120):
        head = truncate_to_tokens(text, budget)
        assert count_tokens(head) <= budget
        assert text.startswith(head)

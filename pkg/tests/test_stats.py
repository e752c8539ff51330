import numpy as np
import pytest

from schemabudget.core.exceptions import StatisticsError
from schemabudget.core.stats import (
    bootstrap_ci,
    cohens_d,
    effect_size_label,
    enumerate_wilcoxon_p,
    paired_comparison,
    pearson_r,
    significance_stars,
    wilcoxon_signed_rank,
)
from schemabudget.models.analysis import PairedSample


def test_wilcoxon_all_positive():
    result = wilcoxon_signed_rank([1, 2, 3, 4, 5])
    assert result.p_value == pytest.approx(0.0625)
    assert result.statistic == 0
    assert result.method == "exact"


def test_wilcoxon_symmetric_ties():
    assert wilcoxon_signed_rank([-1, 1]).p_value == 1.0


def test_wilcoxon_drops_zero_differences():
    result = wilcoxon_signed_rank([0, 0, 1, 2, 3, 4, 5])
    assert result.n_effective == 5
    assert result.p_value == pytest.approx(0.0625)


def test_wilcoxon_on_paired_sample():
    sample = PairedSample(pairs=((0, 1), (0, 1), (1, 1), (0, 1)))
    assert sample.differences == (1, 1, 0, 1)
    assert wilcoxon_signed_rank(sample).n_effective == 3


def test_wilcoxon_all_zero_is_undefined():
    with pytest.raises(StatisticsError):
        wilcoxon_signed_rank([0, 0, 0])


def test_exact_matches_enumeration():
    rng = np.random.default_rng(11)
    for _ in range(200):
        n = int(rng.integers(1, 13))
        diffs = rng.integers(-4, 5, size=n).astype(float)
        if not diffs.any():
            continue
        exact = wilcoxon_signed_rank(diffs).p_value
        assert exact == pytest.approx(enumerate_wilcoxon_p(diffs), abs=1e-9)


def test_binary_differences_use_normal_approximation_for_large_n():
    result = wilcoxon_signed_rank([1] * 40 + [0] * 60)
    assert result.method == "normal"
    assert result.p_value < 0.001


def test_cohens_d():
    assert cohens_d([0, 2]) == pytest.approx(0.7071068, abs=1e-6)
    with pytest.raises(StatisticsError):
        cohens_d([1])
    with pytest.raises(StatisticsError):
        cohens_d([1, 1, 1])


@pytest.mark.parametrize(
    "d,label",
    [(0.1, "negligible"), (-0.3, "small"), (0.6, "medium"), (-1.2, "large")],
)
def test_effect_size_labels(d, label):
    assert effect_size_label(d) == label


def test_bootstrap_is_reproducible():
    sample = [0, 1, 1, 0, 1, 1, 1, 0, 1, 0]
    first = bootstrap_ci(sample, seed=42)
    second = bootstrap_ci(sample, seed=42)
    assert first == second
    low, high = first
    assert low <= np.mean(sample) <= high


def test_bootstrap_constant_sample():
    assert bootstrap_ci([0.5, 0.5, 0.5]) == (0.5, 0.5)


def test_pearson_r():
    assert pearson_r([1, 2, 3], [2, 4, 6]) == pytest.approx(1.0)
    assert pearson_r([1, 2, 3], [3, 2, 1]) == pytest.approx(-1.0)
    with pytest.raises(StatisticsError):
        pearson_r([1, 1, 1], [1, 2, 3])
    with pytest.raises(StatisticsError):
        pearson_r([1], [1])


@pytest.mark.parametrize(
    "p,stars",
    [(None, ""), (0.0005, "***"), (0.005, "**"), (0.03, "*"), (0.2, "")],
)
def test_significance_stars(p, stars):
    assert significance_stars(p) == stars


def test_paired_comparison():
    a = [0] * 50
    b = [1] * 30 + [0] * 20
    cmp = paired_comparison(a, b, with_ci=True, resamples=2000)
    assert cmp.n == 50
    assert cmp.delta == pytest.approx(0.6)
    assert cmp.p_value < 0.001
    assert cmp.stars == "***"
    assert cmp.ci_low < 0.6 < cmp.ci_high


def test_paired_comparison_leaves_undefined_statistics_empty():
    cmp = paired_comparison([1, 1, 1], [1, 1, 1])
    assert cmp.delta == 0
    assert cmp.p_value is None
    assert cmp.cohens_d is None
    assert cmp.stars == ""


def test_paired_comparison_needs_matched_series():
    with pytest.raises(StatisticsError):
        paired_comparison([1, 2], [1])

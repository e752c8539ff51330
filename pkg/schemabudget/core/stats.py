"""
Paired significance tests: Wilcoxon signed-rank, Cohen's d, bootstrap CIs and
Pearson correlation.

The Wilcoxon test is exact for up to 25 nonzero differences. The null
distribution is built by dynamic programming over doubled ranks, so average
ranks of ties stay integral. Beyond that it uses the normal approximation with
tie and continuity corrections.
"""

import itertools
import logging
import math
from typing import Optional, Sequence, Tuple, Union

import numpy as np
from scipy.stats import norm, rankdata

from ..models.analysis import PairedComparison, PairedSample, WilcoxonResult
from .exceptions import StatisticsError

logger = logging.getLogger(__name__)

EXACT_MAX_N = 25
DEFAULT_RESAMPLES = 10_000
DEFAULT_BOOTSTRAP_SEED = 42

Differences = Union[PairedSample, Sequence[float]]


def _differences(sample: Differences) -> np.ndarray:
    if isinstance(sample, PairedSample):
        return np.asarray(sample.differences, dtype=float)
    return np.asarray(list(sample), dtype=float)


def _signed_ranks(sample: Differences) -> Tuple[np.ndarray, np.ndarray]:
    diffs = _differences(sample)
    nonzero = diffs[diffs != 0]
    if nonzero.size == 0:
        raise StatisticsError("all paired differences are zero")
    ranks = rankdata(np.abs(nonzero))
    return nonzero, ranks


def _exact_two_sided(doubled: np.ndarray, observed: int) -> float:
    # counts[s] = number of sign assignments whose positive doubled ranks sum to s
    total = int(doubled.sum())
    counts = np.zeros(total + 1, dtype=object)
    counts[0] = 1
    for r in doubled:
        shifted = np.zeros_like(counts)
        shifted[r:] = counts[: total + 1 - r]
        counts = counts + shifted
    n_assignments = 2 ** len(doubled)
    lower = sum(counts[: observed + 1])
    upper = sum(counts[observed:])
    return min(1.0, 2 * min(lower, upper) / n_assignments)


def wilcoxon_signed_rank(sample: Differences) -> WilcoxonResult:
    """Two-sided Wilcoxon signed-rank test on paired differences.

    Zero differences are dropped and ties get average ranks.

    Args:
        sample: PairedSample or raw differences (b - a)

    Returns:
        W = min(W+, W-) and the two-sided p-value

    Raises:
        StatisticsError: Every difference is zero
    """
    nonzero, ranks = _signed_ranks(sample)
    n = len(nonzero)
    w_plus = float(ranks[nonzero > 0].sum())
    w_minus = float(ranks[nonzero < 0].sum())
    statistic = min(w_plus, w_minus)

    if n <= EXACT_MAX_N:
        doubled = np.rint(ranks * 2).astype(int)
        observed = int(round(w_plus * 2))
        return WilcoxonResult(
            statistic=statistic,
            p_value=_exact_two_sided(doubled, observed),
            n_effective=n,
            method="exact",
        )

    mean = n * (n + 1) / 4
    _, tie_counts = np.unique(ranks, return_counts=True)
    variance = n * (n + 1) * (2 * n + 1) / 24 - float(((tie_counts**3) - tie_counts).sum()) / 48
    if variance <= 0:
        raise StatisticsError("degenerate rank variance")
    z = max(abs(w_plus - mean) - 0.5, 0.0) / math.sqrt(variance)
    p_value = min(1.0, 2 * float(norm.sf(z)))
    return WilcoxonResult(statistic=statistic, p_value=p_value, n_effective=n, method="normal")


def enumerate_wilcoxon_p(sample: Differences) -> float:
    """Two-sided p by enumerating every sign assignment; small samples only."""
    nonzero, ranks = _signed_ranks(sample)
    if len(nonzero) > 20:
        raise StatisticsError("enumeration is limited to 20 nonzero differences")
    observed = ranks[nonzero > 0].sum()
    lower = upper = 0
    for signs in itertools.product((0, 1), repeat=len(ranks)):
        w = float(np.dot(signs, ranks))
        lower += w <= observed + 1e-9
        upper += w >= observed - 1e-9
    return min(1.0, 2 * min(lower, upper) / 2 ** len(ranks))


def cohens_d(sample: Differences) -> float:
    """Mean paired difference over its sample standard deviation (ddof=1)."""
    diffs = _differences(sample)
    if diffs.size < 2:
        raise StatisticsError("Cohen's d needs at least two differences")
    sd = float(np.std(diffs, ddof=1))
    if sd == 0:
        raise StatisticsError("Cohen's d is undefined for zero variance")
    return float(np.mean(diffs)) / sd


def effect_size_label(d: float) -> str:
    size = abs(d)
    if size < 0.2:
        return "negligible"
    if size < 0.5:
        return "small"
    if size < 0.8:
        return "medium"
    return "large"


def bootstrap_ci(
    sample: Differences,
    resamples: int = DEFAULT_RESAMPLES,
    seed: int = DEFAULT_BOOTSTRAP_SEED,
    level: float = 0.95,
) -> Tuple[float, float]:
    """Percentile bootstrap interval of the mean difference.

    Args:
        sample: PairedSample or raw differences
        resamples: Number of bootstrap resamples
        seed: PRNG seed; equal seeds give identical intervals
        level: Confidence level

    Returns:
        (low, high)
    """
    diffs = _differences(sample)
    if diffs.size == 0:
        raise StatisticsError("bootstrap needs a non-empty sample")
    if not 0 < level < 1:
        raise ValueError(f"level must be in (0, 1), got {level}")
    if np.all(diffs == diffs[0]):
        return float(diffs[0]), float(diffs[0])

    rng = np.random.default_rng(seed)
    indices = rng.integers(0, diffs.size, size=(resamples, diffs.size))
    means = diffs[indices].mean(axis=1)
    tail = (1 - level) / 2 * 100
    low, high = np.percentile(means, [tail, 100 - tail])
    return float(low), float(high)


def pearson_r(xs: Sequence[float], ys: Sequence[float]) -> float:
    """Product-moment correlation of two equal-length series."""
    x = np.asarray(xs, dtype=float)
    y = np.asarray(ys, dtype=float)
    if x.size != y.size or x.size < 2:
        raise StatisticsError("pearson_r needs two series of equal length >= 2")
    if np.std(x) == 0 or np.std(y) == 0:
        raise StatisticsError("pearson_r is undefined for a constant series")
    r = float(np.corrcoef(x, y)[0, 1])
    return max(-1.0, min(1.0, r))


def significance_stars(p_value: Optional[float]) -> str:
    if p_value is None:
        return ""
    if p_value < 0.001:
        return "***"
    if p_value < 0.01:
        return "**"
    if p_value < 0.05:
        return "*"
    return ""


def paired_comparison(
    a: Sequence[float],
    b: Sequence[float],
    with_ci: bool = False,
    resamples: int = DEFAULT_RESAMPLES,
    seed: int = DEFAULT_BOOTSTRAP_SEED,
) -> PairedComparison:
    """Compare condition b against condition a over matched values.

    Undefined statistics (all differences zero, zero variance) are left empty
    rather than raised.
    """
    if len(a) != len(b) or not a:
        raise StatisticsError("paired comparison needs two non-empty series of equal length")
    sample = PairedSample(pairs=tuple((float(x), float(y)) for x, y in zip(a, b)))

    statistic = p_value = None
    try:
        result = wilcoxon_signed_rank(sample)
        statistic, p_value = result.statistic, result.p_value
    except StatisticsError:
        pass

    d = label = None
    try:
        d = cohens_d(sample)
        label = effect_size_label(d)
    except StatisticsError:
        pass

    ci_low = ci_high = None
    if with_ci:
        ci_low, ci_high = bootstrap_ci(sample, resamples=resamples, seed=seed)

    mean_a, mean_b = float(np.mean(a)), float(np.mean(b))
    return PairedComparison(
        n=len(a),
        mean_a=mean_a,
        mean_b=mean_b,
        delta=mean_b - mean_a,
        statistic=statistic,
        p_value=p_value,
        stars=significance_stars(p_value),
        cohens_d=d,
        effect_label=label,
        ci_low=ci_low,
        ci_high=ci_high,
    )

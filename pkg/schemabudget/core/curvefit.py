"""
Saturation-curve fitting of score against packed chunk count.

Model: C(k) = c_max * (1 - exp(-lambda * k)) + c0, fitted by a deterministic
grid search over fixed parameter boxes. For each lambda the model is linear in
(c_max, c0), so the squared error of a whole (c_max, c0) grid is evaluated from
sufficient statistics at once.

The coarse grid is followed by zoom refinement from the best few coarse
lambdas: each zoom level divides the step by ``REFINE_FACTOR`` and re-centers
the window while the best point sits on its edge.
"""

import math
from typing import Iterable, List, Sequence, Tuple

import numpy as np

from ..models.analysis import SaturationFit
from ..models.episode import EpisodeRecord
from .exceptions import FitError

C_MAX_BOX = (0.0, 2.0)
LAMBDA_BOX = (0.005, 31.0)
C0_BOX = (0.0, 0.5)
COARSE_CELLS = 200
REFINE_FACTOR = 10
ZOOM_LEVELS = 4
ZOOM_STARTS = 3
MAX_RECENTER = 50

_TIE_TOLERANCE = 1e-15
_BOXES = (C_MAX_BOX, LAMBDA_BOX, C0_BOX)

Candidate = Tuple[float, float, float, float]


def coarse_step(box: Tuple[float, float]) -> float:
    return (box[1] - box[0]) / COARSE_CELLS


def refined_step(box: Tuple[float, float]) -> float:
    return coarse_step(box) / REFINE_FACTOR


def eval_ck(fit: SaturationFit, k: float) -> float:
    """Value of the fitted curve at chunk count ``k``."""
    if k < 0:
        raise ValueError("chunk count must be non-negative")
    return fit.c_max * (1.0 - math.exp(-fit.lam * k)) + fit.c0


def marginal_gain(fit: SaturationFit, k: int) -> float:
    """Score gained by the k-th chunk: C(k) - C(k-1)."""
    if k < 1:
        raise ValueError("marginal gain is defined for k >= 1")
    return eval_ck(fit, k) - eval_ck(fit, k - 1)


def _axis(box: Tuple[float, float], center: float, step: float, span: int) -> np.ndarray:
    values = center + step * np.arange(-span, span + 1)
    values = values[(values >= box[0] - 1e-12) & (values <= box[1] + 1e-12)]
    return np.clip(values, box[0], box[1])


def _better(candidate: Candidate, best: Candidate) -> bool:
    """Lower error wins; near-ties go to the smallest (c_max, lambda, c0)."""
    if candidate[0] < best[0] - _TIE_TOLERANCE:
        return True
    return abs(candidate[0] - best[0]) <= _TIE_TOLERANCE and candidate[1:] < best[1:]


def _profile(
    ks: np.ndarray, ys: np.ndarray, a_axis: np.ndarray, lam_axis: np.ndarray, c_axis: np.ndarray
) -> List[Candidate]:
    """Best (mse, c_max, lambda, c0) on the (c_max, c0) grid for every lambda."""
    mean_y = ys.mean()
    mean_yy = (ys * ys).mean()
    a = a_axis[:, None]
    c = c_axis[None, :]
    rows: List[Candidate] = []
    for lam in lam_axis:
        g = 1.0 - np.exp(-lam * ks)
        mean_g, mean_gg, mean_gy = g.mean(), (g * g).mean(), (g * ys).mean()
        mse = (
            mean_yy
            - 2 * a * mean_gy
            - 2 * c * mean_y
            + a * a * mean_gg
            + 2 * a * c * mean_g
            + c * c
        )
        i, j = np.unravel_index(int(np.argmin(mse)), mse.shape)
        rows.append((float(mse[i, j]), float(a_axis[i]), float(lam), float(c_axis[j])))
    return rows


def _best(rows: Iterable[Candidate]) -> Candidate:
    best: Candidate = (math.inf, 0.0, 0.0, 0.0)
    for row in rows:
        if _better(row, best):
            best = row
    return best


def _coarse_starts(rows: List[Candidate]) -> List[Candidate]:
    """Local minima of the coarse lambda profile, best first."""
    minima = [
        row
        for i, row in enumerate(rows)
        if (i == 0 or row[0] <= rows[i - 1][0]) and (i == len(rows) - 1 or row[0] <= rows[i + 1][0])
    ]
    minima.sort(key=lambda row: (row[0], row[1:]))
    return minima[:ZOOM_STARTS]


def _zoom(ks: np.ndarray, ys: np.ndarray, start: Candidate) -> Candidate:
    best = start
    steps = [coarse_step(box) for box in _BOXES]
    for _ in range(ZOOM_LEVELS):
        steps = [step / REFINE_FACTOR for step in steps]
        for _ in range(MAX_RECENTER):
            axes = [
                _axis(box, center, step, REFINE_FACTOR)
                for box, center, step in zip(_BOXES, best[1:], steps)
            ]
            candidate = _best(_profile(ks, ys, *axes))
            if not _better(candidate, best):
                break
            best = candidate
    return best


def fit_ck(points: Sequence[Tuple[float, float]]) -> SaturationFit:
    """Fit the saturation curve to (k, score) points.

    A coarse grid of 200 cells per axis is searched first. The best few local
    minima of the coarse lambda profile are then refined by zooming.

    Args:
        points: (chunk count, score) pairs

    Returns:
        The best-fitting parameters and R^2

    Raises:
        FitError: Fewer than 3 points, fewer than 2 distinct k, or constant scores
    """
    if len(points) < 3:
        raise FitError("curve fitting needs at least 3 points")
    ks = np.asarray([p[0] for p in points], dtype=float)
    ys = np.asarray([p[1] for p in points], dtype=float)
    if np.unique(ks).size < 2:
        raise FitError("curve fitting needs at least 2 distinct chunk counts")
    if np.ptp(ys) == 0:
        raise FitError("scores have zero variance; R^2 is undefined")
    total = float(((ys - ys.mean()) ** 2).sum())

    coarse = _profile(
        ks,
        ys,
        np.linspace(*C_MAX_BOX, COARSE_CELLS + 1),
        np.linspace(*LAMBDA_BOX, COARSE_CELLS + 1),
        np.linspace(*C0_BOX, COARSE_CELLS + 1),
    )
    best = _best([_best(coarse)] + [_zoom(ks, ys, start) for start in _coarse_starts(coarse)])
    mse, c_max, lam, c0 = best
    r_squared = 1.0 - max(mse, 0.0) * len(ys) / total
    return SaturationFit(c_max=c_max, lam=lam, c0=c0, r_squared=r_squared, n_points=len(ys))


def points_from_records(records: Iterable[EpisodeRecord]) -> List[Tuple[int, float]]:
    """(k, F1) pairs of scored records; errored episodes are skipped."""
    return [
        (record.allocation.k, record.metrics.f1)
        for record in records
        if record.metrics is not None and record.error is None
    ]


def curve_table(
    fit: SaturationFit, points: Sequence[Tuple[float, float]]
) -> List[Tuple[int, int, float, float]]:
    """Per-k rows (k, n, mean score, fitted value) for plotting."""
    by_k: dict = {}
    for k, score in points:
        by_k.setdefault(int(k), []).append(score)
    return [
        (k, len(scores), float(np.mean(scores)), eval_ck(fit, k))
        for k, scores in sorted(by_k.items())
    ]

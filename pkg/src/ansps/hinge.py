"""Regularized hinge loss over row subsets, with metered oracle access.

The objective on an index set ``I`` is

    f_I(x) = delta * ||x||^2 + (1/|I|) * sum_{i in I} max(0, 1 - z_i <x, w_i>)

where ``w_i`` are the feature rows and ``z_i in {-1,+1}`` the labels. A
row is *active* at ``x`` when its margin ``z_i <x, w_i>`` is strictly
below 1; rows sitting exactly at margin 1 contribute nothing to the
subgradient, which keeps the returned vector a valid subgradient at the
kink.

Oracle cost is counted in feature-row scalar products (one per row whose
margin is computed). Margins are cached per ``(point, index set)``, so a
value and a subgradient at the same point on the same set charge ``|I|``
once, not twice. The counter ignores diagnostic full-data values
(:meth:`HingeOracle.full_value`), which exist for reporting only.
"""

from __future__ import annotations

from collections import OrderedDict
from dataclasses import dataclass, field

import numpy as np
import scipy.sparse as sp

from .data import Dataset
from .regions import Box, L2Ball, Region, project

# densify small, mostly-dense feature matrices; row slicing and products
# then run through plain BLAS
_DENSIFY_MAX_ENTRIES = 20_000_000
_DENSIFY_MIN_DENSITY = 0.25

_MARGIN_CACHE_SLOTS = 8


def default_region(delta: float) -> L2Ball:
    """Feasible ball matched to the regularizer.

    With ``delta > 0`` any minimizer satisfies ``||x||^2 <= 1/delta``
    (the zero point already achieves value 1), so that ball loses
    nothing. Without regularization a fixed ball of squared radius 0.1
    keeps the problem bounded.
    """
    if delta > 0:
        return L2Ball(1.0 / np.sqrt(delta))
    return L2Ball(np.sqrt(0.1))


@dataclass(frozen=True)
class HingeProblem:
    """Dataset, regularization weight, and feasible region."""

    dataset: Dataset
    delta: float = 10.0
    region: Region = None

    def __post_init__(self):
        if not (np.isfinite(self.delta) and self.delta >= 0):
            raise ValueError(f"delta must be nonnegative and finite, got {self.delta!r}")
        if self.region is None:
            object.__setattr__(self, "region", default_region(self.delta))

    @property
    def n_features(self) -> int:
        return self.dataset.n_features

    @property
    def n_samples(self) -> int:
        return self.dataset.n_samples


class HingeOracle:
    """Value/subgradient access to a :class:`HingeProblem` with cost metering.

    Attributes
    ----------
    fev : int
        Scalar products charged so far. Grows by ``|I|`` whenever margins
        are computed for a point/index-set pair not already cached.
    """

    def __init__(self, problem: HingeProblem):
        self.problem = problem
        self._delta = float(problem.delta)
        matrix = problem.dataset.features
        nnz_ratio = matrix.nnz / max(1, matrix.shape[0] * matrix.shape[1])
        if (
            matrix.shape[0] * matrix.shape[1] <= _DENSIFY_MAX_ENTRIES
            and nnz_ratio >= _DENSIFY_MIN_DENSITY
        ):
            matrix = matrix.toarray()
        self._matrix = matrix
        self._labels = problem.dataset.labels
        self._fev = 0
        # one slot: (indices object, row submatrix, label subvector)
        self._sub_slot = None
        # (x bytes, id(indices)) -> (indices object, margins); holding the
        # indices object pins its id for the life of the entry
        self._margins: OrderedDict = OrderedDict()

    @property
    def fev(self) -> int:
        return self._fev

    @property
    def n_features(self) -> int:
        return self.problem.n_features

    def _submatrix(self, indices: np.ndarray):
        slot = self._sub_slot
        if slot is None or slot[0] is not indices:
            rows = self._matrix[indices]
            self._sub_slot = (indices, rows, self._labels[indices])
            slot = self._sub_slot
        return slot[1], slot[2]

    def _check_point(self, x) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        if x.ndim != 1 or x.shape[0] != self.n_features:
            raise ValueError(f"point must have shape ({self.n_features},), got {x.shape}")
        if not np.isfinite(x).all():
            raise ValueError("point has non-finite entries")
        return x

    def _margins_for(self, x: np.ndarray, indices: np.ndarray) -> np.ndarray:
        key = (x.tobytes(), id(indices))
        hit = self._margins.get(key)
        if hit is not None:
            self._margins.move_to_end(key)
            return hit[1]
        rows, labels = self._submatrix(indices)
        margins = labels * (rows @ x)
        self._fev += len(indices)
        self._margins[key] = (indices, margins)
        if len(self._margins) > _MARGIN_CACHE_SLOTS:
            self._margins.popitem(last=False)
        return margins

    @staticmethod
    def _check_indices(indices) -> np.ndarray:
        if not isinstance(indices, np.ndarray) or indices.ndim != 1:
            raise ValueError("indices must be a 1-d integer array")
        if len(indices) == 0:
            raise ValueError("index set is empty")
        return indices

    def value(self, x, indices) -> float:
        """``f_I(x)``."""
        x = self._check_point(x)
        indices = self._check_indices(indices)
        margins = self._margins_for(x, indices)
        hinge = np.maximum(0.0, 1.0 - margins).mean()
        return float(self._delta * (x @ x) + hinge)

    def subgradient(self, x, indices) -> np.ndarray:
        """One subgradient of ``f_I`` at ``x``."""
        x = self._check_point(x)
        indices = self._check_indices(indices)
        margins = self._margins_for(x, indices)
        rows, labels = self._submatrix(indices)
        weights = np.where(margins < 1.0, labels, 0.0) / len(indices)
        g = 2.0 * self._delta * x - np.asarray(rows.T @ weights).ravel()
        return g

    def value_and_subgradient(self, x, indices) -> tuple[float, np.ndarray]:
        """Both quantities from one margin pass."""
        x = self._check_point(x)
        indices = self._check_indices(indices)
        margins = self._margins_for(x, indices)
        rows, labels = self._submatrix(indices)
        hinge = np.maximum(0.0, 1.0 - margins).mean()
        weights = np.where(margins < 1.0, labels, 0.0) / len(indices)
        g = 2.0 * self._delta * x - np.asarray(rows.T @ weights).ravel()
        return float(self._delta * (x @ x) + hinge), g

    def full_value(self, x) -> float:
        """Objective over all rows, not charged to the meter."""
        x = self._check_point(x)
        margins = self._labels * (self._matrix @ x)
        hinge = np.maximum(0.0, 1.0 - margins).mean()
        return float(self._delta * (x @ x) + hinge)


@dataclass
class GridSearchResult:
    point: np.ndarray
    value: float
    resolution: float
    n_points: int = field(default=0)


def grid_search_optimum(problem: HingeProblem, resolution: float = 1e-3) -> GridSearchResult:
    """Brute-force reference minimum for low-dimensional problems.

    Scans a regular grid of the region's bounding box, projects each
    point onto the region, and evaluates the full objective. Ties keep
    the first point in scan order (C order, first axis slowest). Only
    dimensions up to 3 are supported, and the grid may not exceed 1e9
    points.
    """
    n = problem.n_features
    if n > 3:
        raise ValueError(f"grid search supports up to 3 features, dataset has {n}")
    if not (np.isfinite(resolution) and resolution > 0):
        raise ValueError("resolution must be positive")
    region = problem.region
    if isinstance(region, L2Ball):
        lo = np.full(n, -region.radius)
        hi = np.full(n, region.radius)
    elif isinstance(region, Box):
        lo = np.asarray(region.lo)
        hi = np.asarray(region.hi)
    else:
        raise ValueError("grid search needs a bounded region (ball or box)")

    axes = []
    for a, b in zip(lo, hi):
        count = int(np.floor((b - a) / resolution + 1e-9)) + 1
        axes.append(a + resolution * np.arange(count))
    shape = tuple(len(ax) for ax in axes)
    total = int(np.prod(shape))
    if total > 1_000_000_000:
        raise ValueError(f"grid of {total} points is too large; coarsen the resolution")

    # margins come from one product with the label-scaled rows; the mean
    # hinge is 1 - mean(min(margin, 1)), saving a broadcast pass
    scaled = (problem.dataset.features.toarray() * problem.dataset.labels[:, None]).T
    scaled = np.ascontiguousarray(scaled)
    n_rows = scaled.shape[1]
    delta = problem.delta
    is_ball = isinstance(region, L2Ball)

    # chunk by flat index in C order (last axis fastest), bounding the
    # points-times-rows work array
    chunk = max(1, min(total, int(16_000_000 // max(1, n_rows))))
    pts_buf = np.empty((chunk, n))
    margins_buf = np.empty((chunk, n_rows))
    nrm2_buf = np.empty(chunk)
    mean_weights = np.full(n_rows, -1.0 / n_rows)

    best_val = np.inf
    best_point = None
    for start in range(0, total, chunk):
        count = min(chunk, total - start)
        flat = np.arange(start, start + count)
        pts = pts_buf[:count]
        for d in range(n - 1, -1, -1):
            flat, rem = np.divmod(flat, shape[d]) if d else (None, flat)
            pts[:, d] = axes[d][rem]
        nrm2 = np.einsum("ij,ij->i", pts, pts, out=nrm2_buf[:count])
        if is_ball:
            over = nrm2 > region.radius**2
            if over.any():
                pts[over] *= (region.radius / np.sqrt(nrm2[over]))[:, None]
                nrm2[over] = region.radius**2
        margins = np.dot(pts, scaled, out=margins_buf[:count])
        np.minimum(margins, 1.0, out=margins)
        vals = margins @ mean_weights  # negated mean of clipped margins
        vals += 1.0
        if delta:
            vals += delta * nrm2
        i = int(np.argmin(vals))
        if vals[i] < best_val:
            best_val = float(vals[i])
            best_point = pts[i].copy()

    return GridSearchResult(best_point, best_val, resolution, total)

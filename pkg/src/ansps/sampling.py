"""Sample-size schedules over a fixed data permutation.

Subsets are prefixes of one permutation drawn up front, so growing the
sample keeps every previously used row (cumulative sampling). Three
growth strategies:

``ansps``
    Grow only when the trailing step length falls below the accuracy
    still missing at the current size (see :func:`saa_error_measure`),
    by a factor of at least ``growth`` and at least ``1 + step``.
``heur``
    Grow by 10% every call, regardless of progress.
``full``
    Always the whole dataset.
"""

from __future__ import annotations

import math

import numpy as np


def saa_error_measure(n_current: int, n_total: int | None = None) -> float:
    """Accuracy gap attributed to working on ``n_current`` of ``n_total`` rows.

    For a finite pool this is ``(n_total - n_current) / n_total``, zero
    once the whole pool is used. With ``n_total=None`` (sampling from an
    unbounded source) it is ``1 / n_current``, never zero.
    """
    if n_current < 1:
        raise ValueError(f"sample size must be at least 1, got {n_current}")
    if n_total is None:
        return 1.0 / n_current
    if n_total < n_current:
        raise ValueError(f"sample size {n_current} exceeds pool size {n_total}")
    return (n_total - n_current) / n_total


def _ceil(v: float) -> int:
    # 1.1 * 100 lands a hair above 110 in floats; round before taking the
    # ceiling so decimal-exact products stay exact
    return math.ceil(round(v, 9))


STRATEGIES = ("ansps", "heur", "full")


class SampleSchedule:
    """Current row subset plus the growth rule that advances it.

    Parameters
    ----------
    n_total : int
        Pool size.
    n_start : int
        Initial sample size (ignored by the ``full`` strategy).
    strategy : {'ansps', 'heur', 'full'}
    growth : float
        Minimum growth factor for the ``ansps`` strategy, > 1.
    rng : numpy.random.Generator
        Source for the permutation (and for re-draws when
        ``fresh_resample`` is on).
    fresh_resample : bool
        If true, draw a new permutation at every size change instead of
        extending the prefix. Off by default; cumulative prefixes are
        what the cost accounting in the oracle expects to see reused.
    permutation : array-like, optional
        Explicit permutation of ``range(n_total)``, for tests.
    """

    def __init__(
        self,
        n_total: int,
        n_start: int,
        strategy: str = "ansps",
        growth: float = 1.1,
        rng: np.random.Generator | None = None,
        fresh_resample: bool = False,
        permutation=None,
    ):
        if strategy not in STRATEGIES:
            raise ValueError(f"strategy must be one of {STRATEGIES}, got {strategy!r}")
        if n_total < 1:
            raise ValueError("pool must have at least one row")
        if strategy == "full":
            n_start = n_total
        if not 1 <= n_start <= n_total:
            raise ValueError(f"n_start must be in [1, {n_total}], got {n_start}")
        if not growth > 1.0:
            raise ValueError(f"growth factor must exceed 1, got {growth}")
        self.n_total = n_total
        self.strategy = strategy
        self.growth = growth
        self.fresh_resample = fresh_resample
        self._rng = rng if rng is not None else np.random.default_rng()
        if permutation is not None:
            permutation = np.asarray(permutation, dtype=np.int64)
            if sorted(permutation.tolist()) != list(range(n_total)):
                raise ValueError("permutation must rearrange range(n_total)")
            self._perm = permutation
        else:
            self._perm = self._rng.permutation(n_total)
        self.size = n_start
        self._indices = self._perm[:n_start].copy()

    @property
    def indices(self) -> np.ndarray:
        """Current subset. The same array object is returned until the
        size changes, which downstream caches rely on."""
        return self._indices

    def error_measure(self) -> float:
        return saa_error_measure(self.size, self.n_total)

    def next_size(self, step_length: float) -> int:
        """Size after observing a step of the given length. Pure."""
        if not (np.isfinite(step_length) and step_length >= 0):
            raise ValueError(f"step length must be nonnegative and finite, got {step_length}")
        if self.strategy == "full":
            return self.n_total
        if self.strategy == "heur":
            return _ceil(min(self.growth * self.size, float(self.n_total)))
        if step_length < self.error_measure():
            grown = max((1.0 + step_length) * self.size, self.growth * self.size)
            return min(self.n_total, _ceil(grown))
        return self.size

    def advance(self, step_length: float) -> int:
        """Apply :meth:`next_size` and refresh the subset. Returns the new size."""
        new_size = self.next_size(step_length)
        if new_size != self.size:
            if self.fresh_resample:
                self._perm = self._rng.permutation(self.n_total)
            self.size = new_size
            self._indices = self._perm[:new_size].copy()
        return self.size

"""Nonmonotone reference values and the backtracking step-size search.

The search compares trial objective values against a reference ``F``
that need not be the current objective value; the reference rules trade
strictness for tolerance of the sampling noise:

``max``
    Largest objective over the last six completed iterations (the
    starting value never enters the window).
``cca``
    Running convex combination ``D`` of all objectives seen, discounted
    by 0.85 per step; the reference is ``max(f, D)``.
``mon``
    Plain monotone: the current objective itself.
``ada``
    Current objective plus a ``2**-k`` allowance that decays to zero.

Every rule keeps the reference at or above the current objective value.
"""

from __future__ import annotations

from collections import deque

import numpy as np

NONMONOTONE_RULES = ("max", "cca", "mon", "ada")

_MAX_WINDOW = 6
_CCA_DECAY = 0.85


class NonmonotoneState:
    """Reference-value tracker; feed it each iteration's objective value.

    Call :meth:`start` once with the initial objective value, then
    :meth:`update` once per completed iteration. ``reference`` is the
    value the next acceptance test should compare against.
    """

    def __init__(self, rule: str = "ada"):
        if rule not in NONMONOTONE_RULES:
            raise ValueError(f"rule must be one of {NONMONOTONE_RULES}, got {rule!r}")
        self.rule = rule
        self.k = 0
        self.f_current = np.nan
        self.reference = np.nan
        self._window: deque = deque(maxlen=_MAX_WINDOW)
        self._mix = np.nan  # cca running combination
        self._weight = np.nan

    def start(self, f0: float) -> float:
        """Initialize at iteration 0; the reference starts at ``f0``."""
        self.k = 0
        self.f_current = float(f0)
        self.reference = float(f0)
        self._window.clear()
        self._mix = float(f0)
        self._weight = 1.0
        return self.reference

    def update(self, f_next: float) -> float:
        """Advance one iteration with its objective value; returns the
        new reference."""
        f_next = float(f_next)
        self.k += 1
        self.f_current = f_next
        if self.rule == "max":
            self._window.append(f_next)
            self.reference = max(self._window)
        elif self.rule == "cca":
            new_weight = _CCA_DECAY * self._weight + 1.0
            self._mix = (_CCA_DECAY * self._weight * self._mix + f_next) / new_weight
            self._weight = new_weight
            self.reference = max(f_next, self._mix)
        elif self.rule == "mon":
            self.reference = f_next
        else:  # ada
            self.reference = f_next + 2.0 ** (-self.k)
        return self.reference


def candidate_steps(k: int, c2: float = 100.0, m: int = 2) -> list[float]:
    """Trial step sizes for iteration ``k >= 1``, increasing.

    ``m`` equally spaced points in ``(1/k, min(1, c2/k)]``, endpoint
    included. Empty when the interval vanishes (``c2 <= 1``), in which
    case the search below falls straight through to ``1/k``.
    """
    if k < 1:
        raise ValueError(f"candidate steps need k >= 1, got {k}")
    if m < 1:
        raise ValueError(f"need at least one candidate, got m={m}")
    if not c2 > 0:
        raise ValueError(f"c2 must be positive, got {c2}")
    lo = 1.0 / k
    hi = min(1.0, c2 / k)
    if hi <= lo:
        return []
    steps = [lo + j * (hi - lo) / m for j in range(1, m + 1)]
    steps[-1] = hi  # exact endpoint, no float drift
    return steps


def line_search(
    value_fn,
    x: np.ndarray,
    p: np.ndarray,
    reference: float,
    eta: float,
    candidates: list[float],
    k: int,
) -> tuple[float, int | None]:
    """Largest candidate step passing the sufficient-decrease test.

    Accepts step ``a`` when ``value_fn(x + a p) <= reference - eta * a * ||p||^2``,
    trying candidates from largest to smallest, so at most ``len(candidates)``
    evaluations. Returns ``(step, index)`` with the 1-based candidate
    index, or ``(1/k, None)`` when nothing passes (that fallback is taken
    on trust, without an evaluation).
    """
    if k < 1:
        raise ValueError(f"line search needs k >= 1, got {k}")
    psq = float(p @ p)
    for j in range(len(candidates), 0, -1):
        a = candidates[j - 1]
        if value_fn(x + a * p) <= reference - eta * a * psq:
            return a, j
    return 1.0 / k, None

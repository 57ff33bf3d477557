"""Spectral (Barzilai-Borwein style) scaling for scaled subgradient steps.

Given consecutive point and subgradient differences ``s = x_next - x_prev``
and ``y = g_next - g_prev``, the two raw step scales are

    bb1 = <s, s> / <s, y>        bb2 = <s, y> / <y, y>

``bb1`` is treated as undefined when ``<s, y>`` is not safely positive,
``bb2`` when ``<y, y>`` is not. The adaptive rules switch between them on
the ratio ``bb2 / bb1``: a small ratio signals disagreement between the
two scales, and the steeper ``bb2`` side is used (for ``abbmin``, the
smallest recent ``bb2``). Whatever rule fires, the result is clamped to
``[floor, ceiling]``; if the rule comes up undefined the previous
coefficient is kept.
"""

from __future__ import annotations

from collections import deque

import numpy as np

RULES = ("bb1", "bb2", "abb", "abbmin", "const")

_SWITCH_RATIO = 0.8
_BB2_WINDOW = 6  # current raw bb2 plus the five before it


def scale_subgradient(g) -> tuple[float, np.ndarray]:
    """Normalize ``g`` to length at most 1.

    Returns ``(q, v)`` with ``q = max(1, ||g||)`` and ``v = g / q``, so
    short subgradients pass through unchanged and long ones are scaled
    onto the unit sphere.
    """
    g = np.asarray(g, dtype=float)
    if not np.isfinite(g).all():
        raise ValueError("subgradient has non-finite entries")
    q = max(1.0, float(np.linalg.norm(g)))
    return q, g / q


def search_direction(zeta: float, v: np.ndarray) -> np.ndarray:
    """Step direction ``-zeta * v`` for a scaled subgradient ``v``."""
    return -zeta * v


def pair_differences(x_prev, x_next, g_prev, g_next) -> tuple[np.ndarray, np.ndarray]:
    """The ``(s, y)`` pair feeding the raw scales. Both subgradients must
    be taken on the same row subset for ``y`` to carry curvature."""
    s = np.asarray(x_next, dtype=float) - np.asarray(x_prev, dtype=float)
    y = np.asarray(g_next, dtype=float) - np.asarray(g_prev, dtype=float)
    return s, y


def raw_bb(s, y) -> tuple[float | None, float | None]:
    """Raw ``(bb1, bb2)``; ``None`` marks an undefined scale.

    The positivity threshold is relative, ``1e-12 * ||s|| * ||y||`` plus
    a tiny absolute floor, so near-orthogonal or descent-violating pairs
    are rejected rather than turned into huge scales.
    """
    s = np.asarray(s, dtype=float)
    y = np.asarray(y, dtype=float)
    if s.shape != y.shape:
        raise ValueError(f"shape mismatch: {s.shape} vs {y.shape}")
    sy = float(s @ y)
    yy = float(y @ y)
    ss = float(s @ s)
    eps = 1e-12 * float(np.linalg.norm(s)) * float(np.linalg.norm(y)) + 1e-300
    bb1 = ss / sy if sy > eps else None
    bb2 = sy / yy if yy > eps else None
    return bb1, bb2


class SpectralState:
    """Current coefficient plus the history the adaptive rules need.

    Parameters
    ----------
    rule : {'bb1', 'bb2', 'abb', 'abbmin', 'const'}
    zeta0 : float
        Starting coefficient, inside ``[floor, ceiling]``.
    floor, ceiling : float
        Clamp bounds, ``0 < floor <= ceiling``.
    """

    def __init__(
        self,
        rule: str = "abbmin",
        zeta0: float = 1.0,
        floor: float = 1e-4,
        ceiling: float = 1e4,
    ):
        if rule not in RULES:
            raise ValueError(f"rule must be one of {RULES}, got {rule!r}")
        if not 0 < floor <= ceiling:
            raise ValueError(f"need 0 < floor <= ceiling, got {floor}, {ceiling}")
        if not floor <= zeta0 <= ceiling:
            raise ValueError(f"zeta0 must lie in [{floor}, {ceiling}], got {zeta0}")
        self.rule = rule
        self.floor = floor
        self.ceiling = ceiling
        self.zeta = float(zeta0)
        self._bb2_history: deque = deque(maxlen=_BB2_WINDOW)

    def _select(self, bb1, bb2):
        if self.rule == "bb1":
            return bb1
        if self.rule == "bb2":
            return bb2
        # adaptive rules; fall back to whichever raw scale exists
        if bb1 is None and bb2 is None:
            return None
        use_bb2_side = bb1 is None or (bb2 is not None and bb2 / bb1 < _SWITCH_RATIO)
        if not use_bb2_side:
            return bb1
        if self.rule == "abb":
            return bb2
        return min(self._bb2_history) if self._bb2_history else bb2

    def update(self, s, y) -> float:
        """Consume one difference pair and return the new coefficient.

        An undefined rule outcome keeps the previous coefficient. The
        ``const`` rule never moves.
        """
        if self.rule == "const":
            return self.zeta
        bb1, bb2 = raw_bb(s, y)
        if bb2 is not None:
            self._bb2_history.append(bb2)  # raw, pre-clamp
        lam = self._select(bb1, bb2)
        if lam is not None:
            self.zeta = min(self.ceiling, max(self.floor, lam))
        return self.zeta

"""Closed convex feasible regions and their Euclidean projections.

Each region is a small immutable value object. ``project`` maps any point
to its nearest feasible point; the solver only ever touches feasibility
through this one operation, so new region types need nothing beyond a
``project`` case and (optionally) a ``sample_point`` case.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class L2Ball:
    """Euclidean ball ``{x : ||x|| <= radius}`` centered at the origin."""

    radius: float

    def __post_init__(self):
        if not (np.isfinite(self.radius) and self.radius > 0):
            raise ValueError(f"ball radius must be positive and finite, got {self.radius!r}")


@dataclass(frozen=True)
class Box:
    """Axis-aligned box ``{x : lo <= x <= hi}`` (componentwise)."""

    lo: tuple
    hi: tuple

    def __post_init__(self):
        lo = np.asarray(self.lo, dtype=float)
        hi = np.asarray(self.hi, dtype=float)
        if lo.ndim != 1 or lo.shape != hi.shape:
            raise ValueError("box bounds must be 1-d and of equal length")
        if not (np.isfinite(lo).all() and np.isfinite(hi).all()):
            raise ValueError("box bounds must be finite")
        if np.any(lo > hi):
            raise ValueError("box requires lo <= hi componentwise")
        # normalize to tuples so the dataclass stays hashable and immutable
        object.__setattr__(self, "lo", tuple(lo.tolist()))
        object.__setattr__(self, "hi", tuple(hi.tolist()))

    @property
    def dim(self) -> int:
        return len(self.lo)


@dataclass(frozen=True)
class Nonnegative:
    """Nonnegative orthant ``{x : x >= 0}``."""


@dataclass(frozen=True)
class WholeSpace:
    """No constraint; projection is the identity."""


Region = L2Ball | Box | Nonnegative | WholeSpace


def _check_point(region, x) -> np.ndarray:
    x = np.asarray(x, dtype=float)
    if x.ndim != 1:
        raise ValueError(f"expected a 1-d point, got shape {x.shape}")
    if not np.isfinite(x).all():
        raise ValueError("point has non-finite entries")
    if isinstance(region, Box) and x.shape[0] != region.dim:
        raise ValueError(f"point has dimension {x.shape[0]}, box has dimension {region.dim}")
    return x


def project(region: Region, x) -> np.ndarray:
    """Euclidean projection of ``x`` onto ``region``.

    Interior points come back unchanged (up to the float copy); the
    operation is idempotent and nonexpansive.
    """
    x = _check_point(region, x)
    if isinstance(region, L2Ball):
        nrm = float(np.linalg.norm(x))
        if nrm <= region.radius:
            return x
        return x * (region.radius / nrm)
    if isinstance(region, Box):
        return np.clip(x, region.lo, region.hi)
    if isinstance(region, Nonnegative):
        return np.maximum(x, 0.0)
    if isinstance(region, WholeSpace):
        return x
    raise TypeError(f"unknown region type: {type(region).__name__}")


def distance_to_region(region: Region, x) -> float:
    """Euclidean distance from ``x`` to ``region`` (0 for feasible points)."""
    x = _check_point(region, x)
    return float(np.linalg.norm(x - project(region, x)))


def sample_point(region: Region, n: int, rng: np.random.Generator) -> np.ndarray:
    """Draw a random feasible point of dimension ``n``.

    Balls are sampled uniformly by volume, boxes uniformly, the orthant
    and the whole space from folded / plain standard normals. Draw order
    is fixed, so a seeded generator gives reproducible points.
    """
    if n < 1:
        raise ValueError("dimension must be at least 1")
    if isinstance(region, L2Ball):
        direction = rng.standard_normal(n)
        nrm = float(np.linalg.norm(direction))
        if nrm == 0.0:
            direction = np.ones(n)
            nrm = float(np.linalg.norm(direction))
        radius = region.radius * rng.random() ** (1.0 / n)
        return direction * (radius / nrm)
    if isinstance(region, Box):
        if n != region.dim:
            raise ValueError(f"requested dimension {n}, box has dimension {region.dim}")
        lo = np.asarray(region.lo)
        hi = np.asarray(region.hi)
        return lo + rng.random(n) * (hi - lo)
    if isinstance(region, Nonnegative):
        return np.abs(rng.standard_normal(n))
    if isinstance(region, WholeSpace):
        return rng.standard_normal(n)
    raise TypeError(f"unknown region type: {type(region).__name__}")

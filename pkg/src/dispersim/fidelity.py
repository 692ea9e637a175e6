"""Shannon mutual information between a uniform phase and the count outcome."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .fourier import PhaseFourierSeries

P_FLOOR = 1e-30
RANGE_SLACK = 1e-6
SUM_SLACK = 1e-4


class InvalidDistribution(ValueError):
    """Reconstructed probabilities are not a distribution; upstream quadrature is suspect."""


@dataclass(frozen=True)
class PhaseGrid:
    points: int = 512

    def __post_init__(self):
        if self.points < 16 or self.points % 2:
            raise ValueError("phase grid needs an even number of points, at least 16")

    def nodes(self) -> np.ndarray:
        return -np.pi + 2.0 * np.pi * np.arange(self.points) / self.points


@dataclass(frozen=True)
class MutualInfo:
    bits: float
    grid_points: int
    estimated_error: float


@dataclass(frozen=True)
class GridReport:
    points: tuple
    bits: tuple
    differences: tuple
    estimated_error: float


def _table(series: Sequence[PhaseFourierSeries], phi: np.ndarray) -> np.ndarray:
    if not series:
        raise ValueError("need at least one outcome series")
    table = np.array([s(phi) for s in series])
    lo, hi = table.min(), table.max()
    if lo < -RANGE_SLACK or hi > 1 + RANGE_SLACK:
        raise InvalidDistribution(f"probability outside [0, 1]: range [{lo:.3g}, {hi:.3g}]")
    drift = float(np.max(np.abs(table.sum(axis=0) - 1.0)))
    if drift > SUM_SLACK:
        raise InvalidDistribution(f"outcome probabilities sum to 1 only within {drift:.3g}")
    return np.clip(table, 0.0, 1.0)


def _bits(series, points: int) -> float:
    phi = PhaseGrid(points).nodes()
    table = _table(series, phi)
    total = 0.0
    for s, p in zip(series, table):
        c0 = float(s.c0)
        if c0 <= P_FLOOR:
            continue
        live = p >= P_FLOOR
        # trapezoid rule on a periodic grid: plain mean
        total += float(np.sum(p[live] * np.log2(p[live] / c0))) / points
    return max(total, 0.0)


def mutual_information(series: Sequence[PhaseFourierSeries], grid: PhaseGrid | None = None) -> MutualInfo:
    """H in bits; the error estimate compares against the half-size grid."""
    grid = grid or PhaseGrid()
    h = _bits(series, grid.points)
    coarse = grid.points // 2
    err = abs(h - _bits(series, coarse)) if coarse >= 16 and coarse % 2 == 0 else math.nan
    return MutualInfo(h, grid.points, err)


def mi_grid_refinement(series: Sequence[PhaseFourierSeries], grids: Sequence[PhaseGrid]) -> GridReport:
    if len(grids) < 2:
        raise ValueError("need at least two grids")
    pts = tuple(g.points for g in grids)
    bits = tuple(_bits(series, n) for n in pts)
    diffs = tuple(abs(b - a) for a, b in zip(bits, bits[1:]))
    return GridReport(pts, bits, diffs, diffs[-1])


def converged_mutual_information(
    series: Sequence[PhaseFourierSeries], tol: float = 1e-9, start: int = 512, max_points: int = 2 ** 20
) -> MutualInfo:
    """Double the grid until successive values agree within ``tol``."""
    n = start
    prev = _bits(series, n)
    while n < max_points:
        n *= 2
        cur = _bits(series, n)
        if abs(cur - prev) <= tol:
            return MutualInfo(cur, n, abs(cur - prev))
        prev = cur
    raise ArithmeticError(f"phase grid did not converge to {tol:g} by {max_points} points")

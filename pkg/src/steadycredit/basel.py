"""Hodrick-Prescott trend of the credit-to-GDP ratio and the buffer mapping.

The trend tau minimizes

    sum (y_t - tau_t)^2 + lam * sum (tau_{t+1} - 2 tau_t + tau_{t-1})^2,

solved exactly through the symmetric pentadiagonal normal equations
(I + lam * D'D) tau = y with a direct banded factorization, followed by
iterative refinement until the normal-equation residual is at most 1e-8
relative (or, for extreme lam where that bound is not representable in
double precision, until the residual reaches the machine floor). The
buffer add-on is 0 at or below ``gap_low`` percentage points,
``buffer_max`` at or above ``gap_high``, and linear in between.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np
from scipy.linalg import solveh_banded

from .errors import ColumnAbsentError, EstimationError, InvariantError
from .series import CreditSeries, Quarter

_RESID_TOL = 1e-8
_MAX_REFINEMENTS = 12


@dataclass(frozen=True)
class GapConfig:
    lam: float = 400_000.0
    gap_low: float = 2.0
    gap_high: float = 10.0
    buffer_max: float = 0.025

    def __post_init__(self):
        if self.lam < 0.0:
            raise InvariantError(f"smoothing parameter must be >= 0, got {self.lam}")
        if not self.gap_low < self.gap_high:
            raise InvariantError(
                f"gap_low {self.gap_low} must be below gap_high {self.gap_high}"
            )
        if not self.buffer_max > 0.0:
            raise InvariantError(f"buffer_max must be positive, got {self.buffer_max}")


@dataclass(frozen=True)
class GapRow:
    quarter: Quarter
    credit_to_gdp: float  # percent
    trend: float  # percent
    gap: float  # percentage points, credit_to_gdp - trend
    buffer_add_on: float  # fraction in [0, buffer_max]


@dataclass(frozen=True)
class GapReport:
    rows: tuple[GapRow, ...]
    config: GapConfig


def _second_difference_exact(v: np.ndarray) -> np.ndarray:
    """v[2:] - 2 v[1:-1] + v[:-2] via error-free two-sum transformations.

    For a smooth trend the plain expression cancels almost completely, so
    its rounding error (eps * |v|) can dwarf the true value; after scaling
    by a large smoothing parameter that noise would make the
    normal-equation residual unmeasurable.
    """
    a, b, c = v[2:], -2.0 * v[1:-1], v[:-2]
    s1 = a + c
    t1 = s1 - a
    e1 = (a - (s1 - t1)) + (c - t1)
    s2 = s1 + b
    t2 = s2 - s1
    e2 = (s1 - (s2 - t2)) + (b - t2)
    return s2 + (e1 + e2)


def _penalty_apply(v: np.ndarray) -> np.ndarray:
    """D'D v for the (n-2) x n second-difference matrix D."""
    z = _second_difference_exact(v)
    out = np.zeros_like(v)
    out[: -2] += z
    out[1:-1] -= 2.0 * z
    out[2:] += z
    return out


def hp_filter(y: Sequence[float], lam: float) -> np.ndarray:
    """Trend component of y for smoothing parameter lam (lam = 0 returns y)."""
    ya = np.asarray(y, dtype=float)
    if ya.ndim != 1 or ya.size < 3:
        raise EstimationError(f"need a one-dimensional series of length >= 3, got {ya.shape}")
    if lam < 0.0:
        raise EstimationError(f"smoothing parameter must be >= 0, got {lam}")
    if lam == 0.0:
        return ya.copy()

    n = ya.size
    diag = np.zeros(n)
    diag[: n - 2] += 1.0
    diag[1 : n - 1] += 4.0
    diag[2:] += 1.0
    super1 = np.zeros(n - 1)
    super1[: n - 2] += -2.0
    super1[1 : n - 1] += -2.0
    super2 = np.ones(n - 2)

    # upper banded storage for the SPD matrix I + lam * D'D
    ab = np.zeros((3, n))
    ab[0, 2:] = lam * super2
    ab[1, 1:] = lam * super1
    ab[2, :] = 1.0 + lam * diag

    trend = solveh_banded(ab, ya)
    scale = float(np.linalg.norm(ya))
    if scale == 0.0:
        return trend
    best = trend
    best_norm = np.inf
    for _ in range(_MAX_REFINEMENTS):
        resid = (ya - trend) - lam * _penalty_apply(trend)
        norm = float(np.linalg.norm(resid))
        if norm < best_norm:
            best, best_norm = trend, norm
        if norm <= _RESID_TOL * scale:
            return trend
        trend = trend + solveh_banded(ab, resid)
    # representational floor: perturbing the trend by one ulp per component
    # already moves the residual by ~eps * (||y|| + 16 lam ||trend||), so no
    # double-precision vector can meet the strict tolerance past this point
    eps = float(np.finfo(float).eps)
    floor = 8.0 * eps * (scale + 16.0 * lam * float(np.linalg.norm(best)))
    if best_norm <= floor:
        return best
    raise ArithmeticError("normal-equation residual did not converge")


def buffer_add_on(gap: float, cfg: GapConfig = GapConfig()) -> float:
    """Countercyclical add-on for a gap in percentage points."""
    if gap <= cfg.gap_low:
        return 0.0
    if gap >= cfg.gap_high:
        return cfg.buffer_max
    return cfg.buffer_max * (gap - cfg.gap_low) / (cfg.gap_high - cfg.gap_low)


def credit_gap(series: CreditSeries, cfg: GapConfig = GapConfig()) -> GapReport:
    """Credit-to-GDP ratio, its trend, the gap, and the buffer per quarter.

    The ratio uses annualized GDP (4 times the quarterly figure) and is
    expressed in percent. Every quarter must carry a GDP value.
    """
    missing = [o.quarter for o in series.observations if o.gdp is None]
    if missing:
        raise ColumnAbsentError(f"gdp column absent at {missing[0]}")
    ratio = np.array([100.0 * o.tcu / (4.0 * o.gdp) for o in series.observations])
    trend = hp_filter(ratio, cfg.lam)
    rows = []
    for o, r, t in zip(series.observations, ratio, trend):
        gap = float(r - t)
        rows.append(GapRow(o.quarter, float(r), float(t), gap, buffer_add_on(gap, cfg)))
    return GapReport(tuple(rows), cfg)


def gap_to_csv(report: GapReport) -> str:
    lines = ["quarter,credit_to_gdp,trend,gap,buffer_add_on"]
    for row in report.rows:
        lines.append(
            f"{row.quarter},{row.credit_to_gdp!r},{row.trend!r},{row.gap!r},{row.buffer_add_on!r}"
        )
    return "\n".join(lines) + "\n"

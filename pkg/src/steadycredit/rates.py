"""Per-interval default rates and credit-growth rates.

For interval k (ending at quarter k of the series, k >= 1):

    d_k = abd_k / tcu_{k-1}
    f_k = loans_k / (tcu_{k-1} * (1 - d_k))            loans formula
    f_k = tcu_k / (tcu_{k-1} * (1 - d_k)) - 1          balance identity

The (1 - d_k) survival factor in the denominator encodes the
perfect-information assumption: new credit is not extended to borrowers
already known to default within the interval. The sliding retrospection
parameter is fixed at zero in this version.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import EstimationError, InvariantError, WindowError
from .series import CreditSeries, Quarter, Window

F_SOURCE_LOANS = "loans-formula"
F_SOURCE_BALANCE = "balance-identity"

MODE_PREFER_LOANS = "prefer-loans"
MODE_FORCE_BALANCE = "force-balance-identity"


@dataclass(frozen=True)
class RatesConfig:
    """Rate computation options. ``delta`` must be 0 in this version."""

    delta: int = 0
    f_mode: str = MODE_PREFER_LOANS

    def __post_init__(self):
        if self.delta != 0:
            raise InvariantError(f"sliding time parameter must be 0, got {self.delta}")
        if self.f_mode not in (MODE_PREFER_LOANS, MODE_FORCE_BALANCE):
            raise InvariantError(f"unknown f_mode {self.f_mode!r}")


@dataclass(frozen=True)
class RatePoint:
    interval_end: Quarter
    d: float
    f: float
    f_source: str

    def __post_init__(self):
        if not 0.0 <= self.d < 1.0:
            raise InvariantError(f"{self.interval_end}: d must be in [0,1), got {self.d}")
        if not self.f > -1.0:
            raise InvariantError(f"{self.interval_end}: f must be > -1, got {self.f}")
        if self.f_source not in (F_SOURCE_LOANS, F_SOURCE_BALANCE):
            raise InvariantError(f"unknown f_source {self.f_source!r}")


@dataclass(frozen=True)
class RateSeries:
    """Ordered (d, f) sample; ``window`` spans the interval-end quarters."""

    points: tuple[RatePoint, ...]
    window: tuple[Quarter, Quarter]

    def __post_init__(self):
        pts = tuple(self.points)
        object.__setattr__(self, "points", pts)
        if not pts:
            raise InvariantError("rate series must not be empty")
        base = pts[0].interval_end.index
        for i, p in enumerate(pts):
            if p.interval_end.index != base + i:
                raise InvariantError(
                    f"rate points must be contiguous, broken at {p.interval_end}"
                )

    def __len__(self) -> int:
        return len(self.points)

    def d_values(self) -> list[float]:
        return [p.d for p in self.points]

    def f_values(self) -> list[float]:
        return [p.f for p in self.points]


def default_rates(series: CreditSeries) -> list[tuple[Quarter, float]]:
    """Default rate of every interval; output length is len(series) - 1."""
    out = []
    for prev, cur in zip(series.observations, series.observations[1:]):
        d = cur.abd / prev.tcu
        if d >= 1.0:
            raise InvariantError(f"{cur.quarter}: default rate {d} is not below 1")
        out.append((cur.quarter, d))
    return out


def credit_growth_rates(series: CreditSeries, cfg: RatesConfig = RatesConfig()) -> RateSeries:
    """Per-interval (d, f) pairs, tagging each point with the f formula used.

    Under ``prefer-loans`` the loans formula is used wherever the loans
    column is present and the balance identity elsewhere;
    ``force-balance-identity`` uses the identity throughout.
    """
    points = []
    for prev, cur in zip(series.observations, series.observations[1:]):
        d = cur.abd / prev.tcu
        if d >= 1.0:
            raise InvariantError(f"{cur.quarter}: default rate {d} is not below 1")
        surviving = prev.tcu * (1.0 - d)
        if surviving <= 0.0:
            raise EstimationError(f"{cur.quarter}: surviving credit base is not positive")
        if cfg.f_mode == MODE_PREFER_LOANS and cur.loans is not None:
            f = cur.loans / surviving
            source = F_SOURCE_LOANS
        else:
            f = cur.tcu / surviving - 1.0
            source = F_SOURCE_BALANCE
        points.append(RatePoint(cur.quarter, d, f, source))
    return RateSeries(tuple(points), (points[0].interval_end, points[-1].interval_end))


def select_window(rates: RateSeries, window: Window) -> RateSeries:
    """Rate points whose interval ends inside the window.

    An interval ending at the window's first quarter uses the preceding
    quarter's credit stock as denominator, so a window of n quarters drawn
    from a longer series yields an n-point sample.
    """
    kept = tuple(p for p in rates.points if window.contains(p.interval_end))
    if not kept:
        raise WindowError(f"window {window} selects no rate points")
    return RateSeries(kept, (kept[0].interval_end, kept[-1].interval_end))


def rates_to_csv(rates: RateSeries) -> str:
    lines = ["interval_end,d,f,f_source"]
    for p in rates.points:
        lines.append(f"{p.interval_end},{p.d!r},{p.f!r},{p.f_source}")
    return "\n".join(lines) + "\n"

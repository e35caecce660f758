"""Assemble the two-window analysis into JSON and SVG outputs.

``analyze`` composes the rate, regression, steady-state, cycle, and gap
computations over one window of a series; every sub-result is derived
from the same windowed rate sample. Component failures (for example a
regression on fewer than three points) are collected per stage instead of
aborting the whole report.

Serialized floats are rounded to a configurable number of significant
digits (``STEADYCREDIT_PRECISION``, default 6) so repeated runs emit
byte-identical documents.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass

from . import cycles as cycles_mod
from . import ols as ols_mod
from . import steady_state
from .basel import GapConfig, GapReport, credit_gap
from .errors import SteadyCreditError
from .rates import RatePoint, RateSeries, RatesConfig, credit_growth_rates, select_window
from .series import CreditSeries, Window

DEFAULT_PRECISION = 6
PRECISION_ENV = "STEADYCREDIT_PRECISION"

KIND_TIME_PANEL = "exhibit1"
KIND_SCATTER = "exhibit2"


@dataclass(frozen=True)
class AnalysisReport:
    window: Window
    n: int
    ols_fit: ols_mod.OlsFit | None
    ssp_ls: steady_state.SspEstimate | None
    ssp_irr: steady_state.SspEstimate | None
    cycles: cycles_mod.CycleReport | None
    gap: GapReport | None
    trajectory: steady_state.SteadyStateTrajectory | None
    rates_in: RateSeries
    rates_out: tuple[RatePoint, ...]
    errors: tuple[tuple[str, str], ...]


def analyze(
    series: CreditSeries,
    window: Window | None = None,
    rates_cfg: RatesConfig = RatesConfig(),
    gap_cfg: GapConfig = GapConfig(),
    sigma_ref: float | None = None,
) -> AnalysisReport:
    """Run the full pipeline over one window of the series.

    Rate intervals are selected by their end quarter, so a window starting
    after the first series quarter gains one look-back interval and an
    n-quarter window carries an n-point sample.
    """
    if window is None:
        window = Window(series.first_quarter, series.last_quarter)
    full = credit_growth_rates(series, rates_cfg)
    rates_in = select_window(full, window)
    in_set = {p.interval_end for p in rates_in.points}
    rates_out = tuple(p for p in full.points if p.interval_end not in in_set)

    errors: list[tuple[str, str]] = []

    ols_fit = None
    try:
        ols_fit = ols_mod.fit(rates_in.d_values(), rates_in.f_values())
    except SteadyCreditError as exc:
        errors.append(("ols", str(exc)))

    ssp_ls = None
    try:
        ssp_ls = steady_state.ssp_least_squares(rates_in, sigma_ref=sigma_ref)
    except SteadyCreditError as exc:
        errors.append(("ssp-least-squares", str(exc)))

    ssp_irr = None
    try:
        ssp_irr = steady_state.ssp_irr_root(rates_in, sigma_ref=sigma_ref)
    except SteadyCreditError as exc:
        errors.append(("ssp-irr-root", str(exc)))

    sliced = None
    try:
        sliced = series.slice(window.start, window.end,
                              window.start_inclusive, window.end_inclusive)
    except SteadyCreditError as exc:
        errors.append(("window-slice", str(exc)))

    cycle_report = None
    if sliced is not None:
        try:
            cycle_report = cycles_mod.cycle_stats(
                sliced.tcu_values(), quarters=sliced.quarters()
            )
        except SteadyCreditError as exc:
            errors.append(("cycles", str(exc)))

    gap_report = None
    if sliced is not None and sliced.has_gdp():
        try:
            gap_report = credit_gap(sliced, gap_cfg)
        except SteadyCreditError as exc:
            errors.append(("gap", str(exc)))

    traj = None
    if ssp_ls is not None:
        traj = steady_state.trajectory(rates_in, ssp_ls.zeta)
    else:
        errors.append(("trajectory", "no steady-state estimate available"))

    return AnalysisReport(
        window=window,
        n=len(rates_in),
        ols_fit=ols_fit,
        ssp_ls=ssp_ls,
        ssp_irr=ssp_irr,
        cycles=cycle_report,
        gap=gap_report,
        trajectory=traj,
        rates_in=rates_in,
        rates_out=rates_out,
        errors=tuple(errors),
    )


def resolve_precision(precision: int | None = None) -> int:
    if precision is not None:
        return precision
    raw = os.environ.get(PRECISION_ENV)
    if raw is None:
        return DEFAULT_PRECISION
    try:
        value = int(raw)
    except ValueError:
        raise SteadyCreditError(f"{PRECISION_ENV} must be an integer, got {raw!r}") from None
    if value < 1:
        raise SteadyCreditError(f"{PRECISION_ENV} must be >= 1, got {value}")
    return value


def round_sig(value: float, digits: int) -> float:
    return float(f"{value:.{digits}g}")


def _rounded(obj, digits: int):
    if isinstance(obj, bool):
        return obj
    if isinstance(obj, float):
        return round_sig(obj, digits)
    if isinstance(obj, dict):
        return {k: _rounded(v, digits) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_rounded(v, digits) for v in obj]
    return obj


def to_json_dict(report: AnalysisReport, precision: int | None = None) -> dict:
    digits = resolve_precision(precision)
    doc = {
        "schema": "steadycredit-analysis/1",
        "window": {
            "from": str(report.window.start),
            "to": str(report.window.end),
            "from_inclusive": report.window.start_inclusive,
            "to_inclusive": report.window.end_inclusive,
        },
        "n": report.n,
        "ols": ols_mod.to_exhibit_json(report.ols_fit) if report.ols_fit else None,
        "ssf": {
            "least_squares": steady_state.to_ssf_json(report.ssp_ls) if report.ssp_ls else None,
            "irr_root": steady_state.to_ssf_json(report.ssp_irr) if report.ssp_irr else None,
        },
        "cycles": cycles_mod.to_json(report.cycles) if report.cycles else None,
        "gap": _gap_json(report.gap) if report.gap else None,
        "trajectory": [
            {
                "quarter": str(p.quarter),
                "f_observed": p.f_observed,
                "f_expected": p.f_expected,
                "cumulative_index": p.cumulative_index,
                "direction": p.direction,
            }
            for p in report.trajectory.points
        ]
        if report.trajectory
        else None,
        "errors": [{"stage": stage, "message": message} for stage, message in report.errors],
    }
    return _rounded(doc, digits)


def _gap_json(gap: GapReport) -> dict:
    return {
        "lambda": gap.config.lam,
        "gap_low": gap.config.gap_low,
        "gap_high": gap.config.gap_high,
        "buffer_max": gap.config.buffer_max,
        "rows": [
            {
                "quarter": str(r.quarter),
                "credit_to_gdp": r.credit_to_gdp,
                "trend": r.trend,
                "gap": r.gap,
                "buffer_add_on": r.buffer_add_on,
            }
            for r in gap.rows
        ],
    }


def to_json(report: AnalysisReport, precision: int | None = None) -> str:
    return json.dumps(to_json_dict(report, precision), indent=2) + "\n"


def dump_json(doc, precision: int | None = None) -> str:
    """Serialize any JSON-able document with the package float rounding."""
    return json.dumps(_rounded(doc, resolve_precision(precision)), indent=2) + "\n"


# --- SVG rendering ---------------------------------------------------------

_WIDTH, _HEIGHT = 720.0, 540.0
_MARGIN_L, _MARGIN_R, _MARGIN_T, _MARGIN_B = 80.0, 24.0, 32.0, 56.0

_STYLE = (
    "text{font-family:sans-serif;font-size:12px;fill:#222}"
    ".axis{stroke:#222;stroke-width:1;fill:none}"
    ".tick{stroke:#222;stroke-width:1}"
    ".ssf{stroke:#000;stroke-width:1.5;fill:none}"
    ".rising{stroke:#1f77b4;stroke-width:1;fill:none}"
    ".falling{stroke:#d62728;stroke-width:1;fill:none}"
    ".flat{stroke:#999;stroke-width:1;fill:none}"
    ".obs-in{fill:#1f77b4;stroke:none}"
    ".obs-out{fill:none;stroke:#888;stroke-width:1}"
    ".observed-f{stroke:#1f77b4;stroke-width:1.5;fill:none}"
    ".default-d{stroke:#d62728;stroke-width:1.5;fill:none}"
    ".expected-f{stroke:#000;stroke-width:1.5;stroke-dasharray:4 3;fill:none}"
)


class _Scale:
    def __init__(self, lo: float, hi: float, out_lo: float, out_hi: float):
        if hi <= lo:
            pad = abs(lo) if lo != 0.0 else 1.0
            lo, hi = lo - 0.5 * pad, hi + 0.5 * pad
        span = hi - lo
        lo -= 0.05 * span
        hi += 0.05 * span
        self.lo, self.hi = lo, hi
        self.out_lo, self.out_hi = out_lo, out_hi

    def __call__(self, v: float) -> float:
        frac = (v - self.lo) / (self.hi - self.lo)
        return self.out_lo + frac * (self.out_hi - self.out_lo)

    def ticks(self, count: int = 5) -> list[float]:
        step = (self.hi - self.lo) / (count - 1)
        return [self.lo + i * step for i in range(count)]


def _px(v: float) -> str:
    return f"{v:.2f}"


def _axes(sx: _Scale, sy: _Scale, x_label: str, y_label: str) -> list[str]:
    parts = []
    x0, x1 = _MARGIN_L, _WIDTH - _MARGIN_R
    y0, y1 = _HEIGHT - _MARGIN_B, _MARGIN_T
    parts.append(f'<line class="axis" x1="{_px(x0)}" y1="{_px(y0)}" x2="{_px(x1)}" y2="{_px(y0)}"/>')
    parts.append(f'<line class="axis" x1="{_px(x0)}" y1="{_px(y0)}" x2="{_px(x0)}" y2="{_px(y1)}"/>')
    for tick in sx.ticks():
        px = sx(tick)
        parts.append(f'<line class="tick" x1="{_px(px)}" y1="{_px(y0)}" x2="{_px(px)}" y2="{_px(y0 + 5)}"/>')
        parts.append(f'<text x="{_px(px)}" y="{_px(y0 + 18)}" text-anchor="middle">{tick:.6g}</text>')
    for tick in sy.ticks():
        py = sy(tick)
        parts.append(f'<line class="tick" x1="{_px(x0 - 5)}" y1="{_px(py)}" x2="{_px(x0)}" y2="{_px(py)}"/>')
        parts.append(f'<text x="{_px(x0 - 8)}" y="{_px(py + 4)}" text-anchor="end">{tick:.6g}</text>')
    parts.append(
        f'<text x="{_px((x0 + x1) / 2)}" y="{_px(_HEIGHT - 16)}" text-anchor="middle">{x_label}</text>'
    )
    parts.append(
        f'<text x="16" y="{_px((y0 + y1) / 2)}" text-anchor="middle" '
        f'transform="rotate(-90 16 {_px((y0 + y1) / 2)})">{y_label}</text>'
    )
    return parts


def _document(title: str, body: list[str]) -> str:
    head = (
        '<?xml version="1.0" encoding="UTF-8"?>\n'
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        f'width="{_WIDTH:.0f}" height="{_HEIGHT:.0f}" '
        f'viewBox="0 0 {_WIDTH:.0f} {_HEIGHT:.0f}">\n'
        f"<style>{_STYLE}</style>\n"
        f'<text x="{_px(_WIDTH / 2)}" y="20" text-anchor="middle">{title}</text>\n'
    )
    return head + "\n".join(body) + "\n</svg>\n"


def _render_scatter(report: AnalysisReport) -> str:
    if report.ssp_ls is None:
        raise SteadyCreditError("scatter rendering needs a steady-state estimate")
    zeta = report.ssp_ls.zeta
    pts_in = list(report.rates_in.points)
    pts_out = list(report.rates_out)
    d_all = [p.d for p in pts_in + pts_out]
    d_hi = max(d_all)
    curve_d = [d_hi * i / 100.0 for i in range(101)]
    curve_f = [steady_state.expected_growth(d, zeta) for d in curve_d]
    f_all = [p.f for p in pts_in + pts_out] + curve_f

    sx = _Scale(0.0, d_hi, _MARGIN_L, _WIDTH - _MARGIN_R)
    sy = _Scale(min(f_all), max(f_all), _HEIGHT - _MARGIN_B, _MARGIN_T)

    body = _axes(sx, sy, "default rate d", "credit growth rate f")
    curve = " ".join(f"{_px(sx(d))},{_px(sy(f))}" for d, f in zip(curve_d, curve_f))
    body.append(f'<polyline class="ssf" points="{curve}"/>')

    for prev, cur in zip(pts_in, pts_in[1:]):
        if cur.f > prev.f:
            cls = "rising"
        elif cur.f < prev.f:
            cls = "falling"
        else:
            cls = "flat"
        body.append(
            f'<line class="{cls}" x1="{_px(sx(prev.d))}" y1="{_px(sy(prev.f))}" '
            f'x2="{_px(sx(cur.d))}" y2="{_px(sy(cur.f))}"/>'
        )
    for p in pts_out:
        body.append(f'<circle class="obs-out" cx="{_px(sx(p.d))}" cy="{_px(sy(p.f))}" r="4"/>')
    for p in pts_in:
        body.append(f'<circle class="obs-in" cx="{_px(sx(p.d))}" cy="{_px(sy(p.f))}" r="3.5"/>')
    title = f"Growth vs default rate, window {report.window}, zeta={zeta:.6g}"
    return _document(title, body)


def _render_time_panel(report: AnalysisReport) -> str:
    if report.trajectory is None:
        raise SteadyCreditError("time panel rendering needs a trajectory")
    pts = report.rates_in.points
    traj = report.trajectory.points
    n = len(pts)
    xs = list(range(n))
    series_map = {
        "observed-f": [p.f_observed for p in traj],
        "default-d": [p.d for p in pts],
        "expected-f": [p.f_expected for p in traj],
    }
    values = [v for vs in series_map.values() for v in vs]
    sx = _Scale(0.0, float(max(n - 1, 1)), _MARGIN_L, _WIDTH - _MARGIN_R)
    sy = _Scale(min(values), max(values), _HEIGHT - _MARGIN_B, _MARGIN_T)

    body = _axes(sx, sy, f"quarter ({pts[0].interval_end} .. {pts[-1].interval_end})", "rate")
    for cls, vs in series_map.items():
        line = " ".join(f"{_px(sx(x))},{_px(sy(v))}" for x, v in zip(xs, vs))
        body.append(f'<polyline class="{cls}" points="{line}"/>')
    legend_y = _MARGIN_T + 8
    for i, cls in enumerate(series_map):
        y = legend_y + 16 * i
        body.append(
            f'<line class="{cls}" x1="{_px(_WIDTH - 180)}" y1="{_px(y)}" '
            f'x2="{_px(_WIDTH - 150)}" y2="{_px(y)}"/>'
        )
        body.append(f'<text x="{_px(_WIDTH - 144)}" y="{_px(y + 4)}">{cls}</text>')
    title = f"Rates over time, window {report.window}"
    return _document(title, body)


def render_svg(report: AnalysisReport, kind: str) -> str:
    """Render the report as an SVG 1.1 document.

    ``exhibit1`` is the time panel of observed f, d, and expected f;
    ``exhibit2`` is the (d, f) scatter with the steady-state curve, filled
    in-window markers, hollow out-of-window markers, and interval segments
    stroked by rising or falling growth.
    """
    if kind == KIND_SCATTER:
        return _render_scatter(report)
    if kind == KIND_TIME_PANEL:
        return _render_time_panel(report)
    raise SteadyCreditError(f"unknown rendering kind {kind!r}")

"""Quarterly credit-register analytics.

From a quarterly series of total credit used, adjusted bad debt, and
loans disbursed, the package derives default and credit-growth rates,
fits the growth-versus-default regression, estimates the steady-state
parameter two ways with a chi-squared fluctuation test, characterizes
cyclical swings of the credit stock, and computes the HP-filtered
credit-to-GDP gap with its countercyclical buffer mapping.
"""

from .basel import GapConfig, GapReport, buffer_add_on, credit_gap, hp_filter
from .cycles import CycleReport, Extremum, cycle_stats, find_extrema, phase_labels
from .errors import (
    ColumnAbsentError,
    ContiguityError,
    EstimationError,
    InvariantError,
    ParseError,
    SteadyCreditError,
    WindowError,
)
from .ols import OlsFit, fit, predict
from .rates import (
    RatePoint,
    RateSeries,
    RatesConfig,
    credit_growth_rates,
    default_rates,
    select_window,
)
from .report import AnalysisReport, analyze, render_svg, to_json
from .series import (
    CreditObservation,
    CreditSeries,
    Quarter,
    Window,
    emit_csv,
    parse_csv,
)
from .steady_state import (
    SspEstimate,
    SteadyStateTrajectory,
    chi2_p_value,
    chi_squared,
    expected_growth,
    ssp_irr_root,
    ssp_least_squares,
    trajectory,
)
from .synth import Scenario, generate, parse_scenario

__version__ = "0.1.0"

__all__ = [
    "AnalysisReport",
    "ColumnAbsentError",
    "ContiguityError",
    "CreditObservation",
    "CreditSeries",
    "CycleReport",
    "EstimationError",
    "Extremum",
    "GapConfig",
    "GapReport",
    "InvariantError",
    "OlsFit",
    "ParseError",
    "Quarter",
    "RatePoint",
    "RateSeries",
    "RatesConfig",
    "Scenario",
    "SspEstimate",
    "SteadyCreditError",
    "SteadyStateTrajectory",
    "Window",
    "WindowError",
    "analyze",
    "buffer_add_on",
    "chi2_p_value",
    "chi_squared",
    "credit_gap",
    "credit_growth_rates",
    "cycle_stats",
    "default_rates",
    "emit_csv",
    "expected_growth",
    "find_extrema",
    "fit",
    "generate",
    "hp_filter",
    "parse_csv",
    "parse_scenario",
    "phase_labels",
    "predict",
    "render_svg",
    "select_window",
    "ssp_irr_root",
    "ssp_least_squares",
    "to_json",
    "trajectory",
]

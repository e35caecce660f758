"""Command-line front end.

Exit codes: 0 success, 1 validation or data error (one-line diagnostic on
stderr), 2 usage error.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path
from typing import Sequence

from . import cycles as cycles_mod
from . import ols as ols_mod
from . import report as report_mod
from . import steady_state, synth
from .basel import GapConfig, credit_gap, gap_to_csv
from .errors import SteadyCreditError
from .rates import (
    MODE_FORCE_BALANCE,
    MODE_PREFER_LOANS,
    RatesConfig,
    credit_growth_rates,
    rates_to_csv,
    select_window,
)
from .series import CreditSeries, Quarter, Window, emit_csv, parse_csv

NAMED_WINDOWS = {
    # the two canonical sub-periods: up to mid-2008 exclusive, and from
    # mid-2008 inclusive through mid-2012
    "pre2008": Window(Quarter(1996, 1), Quarter(2008, 2), True, False),
    "crisis": Window(Quarter(2008, 2), Quarter(2012, 2), True, True),
}

STDOUT = "-"


class UsageError(Exception):
    """Bad flag combination; maps to exit code 2."""


def _read_series(path: str) -> CreditSeries:
    with open(path, "r", encoding="utf-8", newline="") as fh:
        return parse_csv(fh)


def _write_text(path: str | None, text: str) -> None:
    if path is None or path == STDOUT:
        sys.stdout.write(text)
    else:
        Path(path).write_text(text, encoding="utf-8")


def _add_window_args(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--window", dest="named_window", choices=sorted(NAMED_WINDOWS),
                        help="named analysis window shortcut")
    parser.add_argument("--from", dest="from_q", metavar="YYYY-Qn",
                        help="window start quarter")
    parser.add_argument("--to", dest="to_q", metavar="YYYY-Qn", help="window end quarter")
    parser.add_argument("--inclusive-from", dest="from_inclusive",
                        action=argparse.BooleanOptionalAction, default=True,
                        help="include the start quarter (default: include)")
    parser.add_argument("--inclusive-to", dest="to_inclusive",
                        action=argparse.BooleanOptionalAction, default=True,
                        help="include the end quarter (default: include)")


def _resolve_window(args: argparse.Namespace) -> Window | None:
    if args.named_window:
        if args.from_q or args.to_q:
            raise UsageError("--window excludes --from/--to")
        return NAMED_WINDOWS[args.named_window]
    if args.from_q or args.to_q:
        if not (args.from_q and args.to_q):
            raise UsageError("--from and --to must be given together")
        return Window(Quarter.parse(args.from_q), Quarter.parse(args.to_q),
                      args.from_inclusive, args.to_inclusive)
    return None


def _rates_cfg(args: argparse.Namespace) -> RatesConfig:
    return RatesConfig(f_mode=getattr(args, "f_mode", MODE_PREFER_LOANS))


def _gap_cfg(args: argparse.Namespace) -> GapConfig:
    return GapConfig(lam=args.lam, gap_low=args.gap_low,
                     gap_high=args.gap_high, buffer_max=args.buffer_max)


def _windowed_rates(args: argparse.Namespace):
    series = _read_series(args.input)
    rates = credit_growth_rates(series, _rates_cfg(args))
    window = _resolve_window(args)
    if window is not None:
        rates = select_window(rates, window)
    return series, rates, window


def _cmd_validate(args: argparse.Namespace) -> int:
    series = _read_series(args.input)
    print(f"OK: {len(series)} observations, {series.first_quarter}..{series.last_quarter}")
    return 0


def _cmd_rates(args: argparse.Namespace) -> int:
    _, rates, _ = _windowed_rates(args)
    _write_text(args.out, rates_to_csv(rates))
    return 0


def _cmd_ols(args: argparse.Namespace) -> int:
    _, rates, _ = _windowed_rates(args)
    fit = ols_mod.fit(rates.d_values(), rates.f_values())
    _write_text(args.json_path, report_mod.dump_json(ols_mod.to_exhibit_json(fit)))
    return 0


def _cmd_ssp(args: argparse.Namespace) -> int:
    _, rates, _ = _windowed_rates(args)
    doc = {
        "least_squares": steady_state.to_ssf_json(
            steady_state.ssp_least_squares(rates, sigma_ref=args.sigma_ref)
        ),
        "irr_root": steady_state.to_ssf_json(
            steady_state.ssp_irr_root(rates, sigma_ref=args.sigma_ref)
        ),
    }
    _write_text(args.json_path, report_mod.dump_json(doc))
    return 0


def _cmd_cycles(args: argparse.Namespace) -> int:
    series = _read_series(args.input)
    window = _resolve_window(args)
    if window is not None:
        series = series.slice(window.start, window.end,
                              window.start_inclusive, window.end_inclusive)
    rep = cycles_mod.cycle_stats(series.tcu_values(), quarters=series.quarters())
    if args.csv:
        _write_text(args.csv, cycles_mod.overlays_to_csv(rep, series.tcu_values(),
                                                         series.quarters()))
    _write_text(args.json_path, report_mod.dump_json(cycles_mod.to_json(rep)))
    return 0


def _cmd_gap(args: argparse.Namespace) -> int:
    series = _read_series(args.input)
    window = _resolve_window(args)
    if window is not None:
        series = series.slice(window.start, window.end,
                              window.start_inclusive, window.end_inclusive)
    _write_text(args.out, gap_to_csv(credit_gap(series, _gap_cfg(args))))
    return 0


def _cmd_analyze(args: argparse.Namespace) -> int:
    series = _read_series(args.input)
    rep = report_mod.analyze(
        series,
        window=_resolve_window(args),
        rates_cfg=_rates_cfg(args),
        gap_cfg=_gap_cfg(args),
        sigma_ref=args.sigma_ref,
    )
    _write_text(args.json_path, report_mod.to_json(rep))
    return 0


def _cmd_simulate(args: argparse.Namespace) -> int:
    text = Path(args.scenario).read_text(encoding="utf-8")
    scenario = synth.parse_scenario(text, seed=args.seed)
    series, _ = synth.generate(scenario)
    _write_text(args.out, emit_csv(series))
    return 0


def _cmd_render(args: argparse.Namespace) -> int:
    series = _read_series(args.input)
    rep = report_mod.analyze(
        series,
        window=_resolve_window(args),
        rates_cfg=_rates_cfg(args),
        sigma_ref=args.sigma_ref,
    )
    _write_text(args.out, report_mod.render_svg(rep, args.kind))
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="steadycredit",
        description="Quarterly credit-register analytics: rates, regression, "
                    "steady-state estimation, cycles, and the credit-to-GDP gap.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def command(name: str, handler, help_text: str) -> argparse.ArgumentParser:
        p = sub.add_parser(name, help=help_text)
        p.set_defaults(handler=handler)
        return p

    p = command("validate", _cmd_validate, "parse and validate a series CSV")
    p.add_argument("--input", required=True)

    p = command("rates", _cmd_rates, "emit per-interval default and growth rates as CSV")
    p.add_argument("--input", required=True)
    _add_window_args(p)
    p.add_argument("--f-mode", choices=[MODE_PREFER_LOANS, MODE_FORCE_BALANCE],
                   default=MODE_PREFER_LOANS)
    p.add_argument("--out", default=STDOUT)

    p = command("ols", _cmd_ols, "regression of growth rate on default rate")
    p.add_argument("--input", required=True)
    _add_window_args(p)
    p.add_argument("--f-mode", choices=[MODE_PREFER_LOANS, MODE_FORCE_BALANCE],
                   default=MODE_PREFER_LOANS)
    p.add_argument("--json", dest="json_path", nargs="?", const=STDOUT, default=STDOUT,
                   metavar="PATH", help="write JSON to PATH (default: stdout)")

    p = command("ssp", _cmd_ssp, "steady-state parameter estimates")
    p.add_argument("--input", required=True)
    _add_window_args(p)
    p.add_argument("--f-mode", choices=[MODE_PREFER_LOANS, MODE_FORCE_BALANCE],
                   default=MODE_PREFER_LOANS)
    p.add_argument("--sigma-ref", type=float, default=None,
                   help="reference residual scale for the chi-squared statistic")
    p.add_argument("--json", dest="json_path", nargs="?", const=STDOUT, default=STDOUT,
                   metavar="PATH")

    p = command("cycles", _cmd_cycles, "cycle statistics of the credit stock")
    p.add_argument("--input", required=True)
    _add_window_args(p)
    p.add_argument("--csv", metavar="PATH", help="also write per-point overlays CSV")
    p.add_argument("--json", dest="json_path", nargs="?", const=STDOUT, default=STDOUT,
                   metavar="PATH")

    p = command("gap", _cmd_gap, "credit-to-GDP gap and buffer add-on CSV")
    p.add_argument("--input", required=True)
    _add_window_args(p)
    p.add_argument("--lambda", dest="lam", type=float, default=GapConfig().lam)
    p.add_argument("--gap-low", type=float, default=GapConfig().gap_low)
    p.add_argument("--gap-high", type=float, default=GapConfig().gap_high)
    p.add_argument("--buffer-max", type=float, default=GapConfig().buffer_max)
    p.add_argument("--out", default=STDOUT)

    p = command("analyze", _cmd_analyze, "full analysis report as JSON")
    p.add_argument("--input", required=True)
    _add_window_args(p)
    p.add_argument("--f-mode", choices=[MODE_PREFER_LOANS, MODE_FORCE_BALANCE],
                   default=MODE_PREFER_LOANS)
    p.add_argument("--sigma-ref", type=float, default=None)
    p.add_argument("--lambda", dest="lam", type=float, default=GapConfig().lam)
    p.add_argument("--gap-low", type=float, default=GapConfig().gap_low)
    p.add_argument("--gap-high", type=float, default=GapConfig().gap_high)
    p.add_argument("--buffer-max", type=float, default=GapConfig().buffer_max)
    p.add_argument("--json", dest="json_path", nargs="?", const=STDOUT, default=STDOUT,
                   metavar="PATH")

    p = command("simulate", _cmd_simulate, "generate a synthetic series CSV from a scenario")
    p.add_argument("--scenario", required=True, help="key=value scenario file")
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--out", default=STDOUT)

    p = command("render", _cmd_render, "render an SVG chart of an analysis window")
    p.add_argument("--input", required=True)
    _add_window_args(p)
    p.add_argument("--f-mode", choices=[MODE_PREFER_LOANS, MODE_FORCE_BALANCE],
                   default=MODE_PREFER_LOANS)
    p.add_argument("--sigma-ref", type=float, default=None)
    p.add_argument("--kind", choices=[report_mod.KIND_TIME_PANEL, report_mod.KIND_SCATTER],
                   required=True)
    p.add_argument("--out", default=STDOUT)

    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2
    try:
        return args.handler(args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 2
    except SteadyCreditError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def entrypoint() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entrypoint()

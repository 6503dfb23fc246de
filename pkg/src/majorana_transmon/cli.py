"""Command-line entry point.

Subcommands::

    majorana-transmon spectrum [--preset fig2a|fig2b] [--config PATH] [--out CSV] [--svg SVG]
    majorana-transmon rates    [--preset fig3] [--per-second [--angular]] [--omega-floor GHZ]
    majorana-transmon validate [--profile default] [--json]
    majorana-transmon figure   CSV --svg SVG

CSV goes to stdout when neither ``--out`` nor ``--svg`` is given.
"""

import argparse
import datetime as _dt
import json
import math
import sys
from dataclasses import replace

from . import __version__
from .config import ConfigError, RunConfig, read_config, resolve
from .errors import ConvergenceError, DomainError
from .svgplot import write_svg
from .sweep import PRESETS, run_sweep
from .tables import read_csv, to_csv, write_csv
from .validation import PROFILES, run_checks

PROG = "majorana-transmon"
_RATE_SCALED = ("gamma", "s_at_0", "s_at_w")
_ALLOWED = {
    "spectrum": ("spectrum", "splittings"),
    "rates": ("rate_ground", "rate_excited"),
}
_DEFAULT_PRESET = {"spectrum": "fig2a", "rates": "fig3"}


def _add_run_options(sp, presets):
    sp.add_argument("--preset", choices=presets, help="built-in figure sweep to start from")
    sp.add_argument("--config", metavar="PATH", help="key = value file applied on top of the preset")
    sp.add_argument("--out", metavar="PATH", help="CSV output file")
    sp.add_argument("--svg", metavar="PATH", help="SVG line plot output file")
    sp.add_argument("--omega-floor", type=float, metavar="GHZ",
                    help="regularization frequency for S_qp at zero frequency")
    sp.add_argument("--anharmonic", action="store_true",
                    help="use the anharmonic excited-level splitting in spectra")
    sp.add_argument("--workers", type=int, default=1, help="worker processes for the sweep")
    sp.add_argument("--title", help="SVG title")


def build_parser():
    parser = argparse.ArgumentParser(
        prog=PROG,
        description="Spectrum and parity-switching rates of a split transmon with Majorana couplings.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("spectrum", help="four-branch excitation spectrum or level splittings")
    _add_run_options(sp, ["fig2a", "fig2b", "fig3"])
    sp.add_argument("--exact", action="store_true",
                    help="exact charge-basis diagonalization instead of analytic formulas")

    rp = sub.add_parser("rates", help="ground or excited parity-switching rates")
    _add_run_options(rp, ["fig2a", "fig2b", "fig3"])
    rp.add_argument("--per-second", action="store_true",
                    help="report rates in 1/s (GHz values times 1e9)")
    rp.add_argument("--angular", action="store_true",
                    help="with --per-second, also multiply by 2*pi")

    vp = sub.add_parser("validate", help="compare analytic formulas against numerical oracles")
    vp.add_argument("--profile", default="default", choices=sorted(PROFILES))
    vp.add_argument("--json", action="store_true", help="print a JSON report")

    fp = sub.add_parser("figure", help="render an existing sweep CSV as SVG")
    fp.add_argument("csv", metavar="CSV")
    fp.add_argument("--svg", metavar="PATH", required=True)
    fp.add_argument("--title")
    return parser


def _run_config(args) -> RunConfig:
    preset_name = args.preset or _DEFAULT_PRESET[args.command]
    preset = PRESETS[preset_name]()
    if preset.quantity not in _ALLOWED[args.command]:
        # borrow the preset's parameters and axis, switch the quantity
        preset = replace(preset, quantity=_ALLOWED[args.command][0])
    entries = read_config(args.config) if args.config else {}
    cfg = resolve(preset, entries)
    spec = cfg.spec
    if spec.quantity not in _ALLOWED[args.command]:
        raise ConfigError(
            f"quantity {spec.quantity!r} belongs to the "
            f"{'rates' if args.command == 'spectrum' else 'spectrum'} command"
        )
    changes = {}
    if args.omega_floor is not None:
        changes["omega_floor"] = args.omega_floor
    if args.anharmonic:
        changes["anharmonic"] = True
    if getattr(args, "exact", False):
        changes["exact"] = True
    if changes:
        try:
            spec = replace(spec, **changes)
        except DomainError as exc:
            raise ConfigError(str(exc)) from None
    per_second = cfg.per_second or getattr(args, "per_second", False)
    angular = cfg.angular or getattr(args, "angular", False)
    if angular and not per_second:
        raise ConfigError("--angular only applies together with --per-second")
    return RunConfig(spec=spec, per_second=per_second, angular=angular)


def _convert_rates(result, cfg):
    factor = 1e9 * (2 * math.pi if cfg.angular else 1.0)
    for row in result.rows:
        for c in _RATE_SCALED:
            if c in row:
                row[c] = row[c] * factor
    result.metadata["rate_units"] = (
        "gamma, s_at_0, s_at_w in rad/s (GHz x 2pi x 1e9)" if cfg.angular
        else "gamma, s_at_0, s_at_w in 1/s (GHz x 1e9)"
    )
    return result


def _cmd_run(args):
    cfg = _run_config(args)
    if args.workers < 1:
        raise ConfigError("--workers must be at least 1")
    result = run_sweep(cfg.spec, workers=args.workers)
    if cfg.per_second and cfg.spec.quantity.startswith("rate"):
        _convert_rates(result, cfg)
    if args.config:
        result.metadata["config"] = args.config
    if not args.out and not args.svg:
        sys.stdout.write(to_csv(result))
    if args.out:
        stamp = _dt.datetime.now(_dt.timezone.utc).isoformat(timespec="seconds")
        write_csv(result, args.out, {"created": stamp})
    if args.svg:
        write_svg(result, args.svg, title=args.title or cfg.spec.name)
    if result.metadata["error_rows"]:
        print(f"{PROG}: {result.metadata['error_rows']} grid point(s) failed; "
              "see the error column", file=sys.stderr)
    return 0


def _cmd_validate(args):
    checks = run_checks(args.profile)
    if args.json:
        report = {
            "profile": args.profile,
            "passed": all(c.passed for c in checks),
            "checks": [{"name": c.name, "status": c.status, "detail": c.detail} for c in checks],
        }
        print(json.dumps(report, indent=2))
    else:
        for c in checks:
            print(f"{c.name}: {c.status} ({c.detail})")
    return 0 if all(c.passed for c in checks) else 1


def _cmd_figure(args):
    result = read_csv(args.csv)
    if "overlay_E_M" not in result.columns or len(result.columns) < 3:
        raise ValueError(f"{args.csv}: not a sweep table")
    write_svg(result, args.svg, title=args.title)
    return 0


COMMANDS = {"spectrum": _cmd_run, "rates": _cmd_run, "validate": _cmd_validate, "figure": _cmd_figure}


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except (ConfigError, DomainError, ConvergenceError, OSError, ValueError) as exc:
        print(f"{PROG}: error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())

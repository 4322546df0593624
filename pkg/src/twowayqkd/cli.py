"""Command-line front end.

Commands: keyrate | threshold | scan | oneway | appendix.  Exit codes:
0 on success with a positive rate, 2 when the queried rate is nonpositive
(insecure but valid), 1 on any error.
"""

import argparse
import json
import sys

import numpy as np

from ._serialize import csv_table, json_text
from .attacks import ATTACK_CLASSES, AttackParams, attack_from_class, normalize_class, require_physical
from .errors import UnphysicalStateError
from .protocol import holevo_asymptotic, keyrate_report, mutual_information_asymptotic
from .security import (ONEWAY_MU_A, oneway_report, oneway_threshold_curve,
                       optimal_attack_scan, relative_variations, scan_grid, threshold_curve)

_APPENDIX_CLASSES = ("collective", "epr+", "sep-sym+", "sep-anti+", "sep-sym-")


class _Parser(argparse.ArgumentParser):
    """argparse parser whose usage errors exit with code 1, not 2."""

    def error(self, message):
        self.exit(1, f"{self.prog}: error: {message}\n")


def _build_parser():
    parser = _Parser(prog="twowayqkd",
                     description="Key rates and security thresholds for two-way "
                                 "Gaussian coherent-state QKD in direct reconciliation.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, fmt_default):
        p.add_argument("--format", choices=("csv", "json"), default=None,
                       help=f"output format (default {fmt_default})")
        p.add_argument("--output", default=None, metavar="PATH",
                       help="write to PATH instead of standard output")
        p.add_argument("--config", default=None, metavar="PATH",
                       help="JSON file with the same keys as the flags; flags override it")
        p.set_defaults(fmt_default=fmt_default)

    p = sub.add_parser("keyrate", help="key-rate report at one parameter point")
    p.add_argument("--T", type=float, default=None, help="channel transmissivity per pass")
    p.add_argument("--omega", type=float, default=None, help="Eve's thermal variance (SNU)")
    p.add_argument("--attack", default=None,
                   help="attack class: " + ", ".join(ATTACK_CLASSES) + ", custom")
    p.add_argument("--g", type=float, default=None, help="q-quadrature correlation (custom attack)")
    p.add_argument("--g-prime", type=float, default=None, help="p-quadrature correlation (custom attack)")
    p.add_argument("--mu", type=float, default=None, help="modulation variance (default 1e6)")
    common(p, "json")

    p = sub.add_parser("threshold", help="security-threshold curves over a T grid")
    p.add_argument("--attack", action="append", default=None,
                   help="attack class, repeatable: " + ", ".join(ATTACK_CLASSES))
    p.add_argument("--t-min", type=float, default=None)
    p.add_argument("--t-max", type=float, default=None)
    p.add_argument("--t-step", type=float, default=None)
    p.add_argument("--with-oneway", action="store_true", default=False,
                   help="append the one-way baseline curve")
    common(p, "csv")

    p = sub.add_parser("scan", help="grid scan for the rate-minimizing attack")
    p.add_argument("--T", type=float, default=None)
    p.add_argument("--omega", type=float, default=None)
    p.add_argument("--step", type=float, default=None, help="grid resolution in (g, g')")
    p.add_argument("--full-grid", action="store_true", default=False,
                   help="emit the rate at every physical grid point")
    common(p, "csv")

    p = sub.add_parser("oneway", help="one-way baseline key rate")
    p.add_argument("--T", type=float, default=None)
    p.add_argument("--omega", type=float, default=None)
    p.add_argument("--mu", type=float, default=None,
                   help="modulation variance of the baseline (default 1e7)")
    common(p, "json")

    p = sub.add_parser("appendix", help="I_AB, chi_EA and optimal-attack variations vs omega")
    p.add_argument("--T", action="append", type=float, default=None,
                   help="transmissivity, repeatable")
    p.add_argument("--mu", type=float, default=None, help="modulation variance (default 1e6)")
    p.add_argument("--omega-min", type=float, default=None)
    p.add_argument("--omega-max", type=float, default=None)
    p.add_argument("--omega-step", type=float, default=None)
    common(p, "csv")

    return parser


def _merge_config(parser, args):
    if args.config is None:
        return args
    with open(args.config, "r", encoding="utf-8") as fh:
        cfg = json.load(fh)
    if not isinstance(cfg, dict):
        parser.error(f"config {args.config} must hold a JSON object")
    for key, value in cfg.items():
        dest = str(key).replace("-", "_")
        if not hasattr(args, dest):
            parser.error(f"config key {key!r} does not match any flag of {args.command!r}")
        current = getattr(args, dest)
        if current is None or current is False:
            setattr(args, dest, value)
    return args


def _require(parser, args, names):
    for name in names:
        if getattr(args, name) is None:
            parser.error(f"--{name.replace('_', '-')} is required (flag or config)")


def _emit(text, output):
    if output is None:
        sys.stdout.write(text)
    else:
        with open(output, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)


def _resolve_attack(parser, args):
    named = args.attack is not None and normalize_if_known(args.attack) != "custom"
    if named:
        if args.g is not None or args.g_prime is not None:
            parser.error("--g/--g-prime conflict with a named --attack; use --attack custom")
        return attack_from_class(args.attack, args.omega)
    if args.g is None or args.g_prime is None:
        parser.error("custom attacks need both --g and --g-prime")
    return AttackParams(args.omega, args.g, args.g_prime)


def normalize_if_known(label):
    if str(label).strip().lower() == "custom":
        return "custom"
    return normalize_class(label)


def _t_grid(parser, args):
    if not 0.0 < args.t_min < args.t_max < 1.0:
        parser.error(f"need 0 < t-min < t-max < 1, got {args.t_min}, {args.t_max}")
    if not args.t_step > 0.0:
        parser.error(f"t-step must be positive, got {args.t_step}")
    count = int(np.floor((args.t_max - args.t_min) / args.t_step + 1e-9)) + 1
    return [args.t_min + k * args.t_step for k in range(count)]


def _cmd_keyrate(parser, args):
    _require(parser, args, ("T", "omega"))
    attack = _resolve_attack(parser, args)
    require_physical(attack)
    mu = 1e6 if args.mu is None else args.mu
    report = keyrate_report(args.T, attack, mu=mu)
    payload = report.to_dict()
    if (args.format or args.fmt_default) == "json":
        _emit(json_text(payload), args.output)
    else:
        _emit(csv_table(list(payload), [list(payload.values())]), args.output)
    return 0 if report.R > 0.0 else 2


def _cmd_threshold(parser, args):
    if not args.attack:
        parser.error("at least one --attack class is required")
    _require(parser, args, ("t_min", "t_max", "t_step"))
    classes = [normalize_class(c) for c in args.attack]
    grid = _t_grid(parser, args)
    curves = [threshold_curve(c, grid) for c in classes]
    if args.with_oneway:
        curves.append(oneway_threshold_curve(grid))
    if (args.format or args.fmt_default) == "json":
        payload = [{"attack_class": c.attack_class,
                    "points": [{"T": p.T, "omega_star": p.omega_star,
                                "N_star": p.N_star, "secure": p.secure}
                               for p in c.points]}
                   for c in curves]
        _emit(json_text(payload), args.output)
    else:
        rows = [[c.attack_class, *row] for c in curves for row in c.to_rows()]
        _emit(csv_table(("attack", "T", "omega_star", "N_star", "secure"), rows), args.output)
    return 0


def _cmd_scan(parser, args):
    _require(parser, args, ("T", "omega", "step"))
    result = optimal_attack_scan(args.T, args.omega, args.step)
    payload = result.to_dict()
    grid = scan_grid(args.T, args.omega, args.step) if args.full_grid else None
    if (args.format or args.fmt_default) == "json":
        if grid is not None:
            payload["grid"] = [{"g": g, "g_prime": gp, "R": r} for g, gp, r in grid]
        _emit(json_text(payload), args.output)
    else:
        text = csv_table(list(payload), [list(payload.values())])
        if grid is not None:
            text += "\n" + csv_table(("g", "g_prime", "R"), grid)
        _emit(text, args.output)
    return 0 if result.R_min > 0.0 else 2


def _cmd_oneway(parser, args):
    _require(parser, args, ("T", "omega"))
    mu_a = ONEWAY_MU_A if args.mu is None else args.mu + 1.0
    report = oneway_report(args.T, args.omega, mu_a=mu_a)
    if (args.format or args.fmt_default) == "json":
        _emit(json_text(report), args.output)
    else:
        _emit(csv_table(list(report), [list(report.values())]), args.output)
    return 0 if report["R"] > 0.0 else 2


def _cmd_appendix(parser, args):
    if not args.T:
        parser.error("at least one --T is required")
    mu = 1e6 if args.mu is None else args.mu
    if mu < 1e3:
        parser.error(f"appendix tables need the asymptotic regime mu >= 1e3, got {mu}")
    w_min = 1.0 if args.omega_min is None else args.omega_min
    w_max = 5.0 if args.omega_max is None else args.omega_max
    w_step = 0.25 if args.omega_step is None else args.omega_step
    if not (w_min >= 1.0 and w_max >= w_min and w_step > 0.0):
        parser.error(f"bad omega grid: [{w_min}, {w_max}] step {w_step}")
    count = int(np.floor((w_max - w_min) / w_step + 1e-9)) + 1
    omegas = [w_min + k * w_step for k in range(count)]

    header = ["T", "omega"]
    header += [f"I_AB_{c}" for c in _APPENDIX_CLASSES]
    header += [f"chi_EA_{c}" for c in _APPENDIX_CLASSES]
    header += ["dI_AB", "dchi_EA"]
    rows = []
    for T in args.T:
        variations = relative_variations(T, mu, omegas)
        for (omega, d_i, d_chi) in variations:
            attacks_row = [attack_from_class(c, omega) for c in _APPENDIX_CLASSES]
            i_vals = [mutual_information_asymptotic(T, a, mu)[0] for a in attacks_row]
            chi_vals = [holevo_asymptotic(T, a, mu) for a in attacks_row]
            rows.append([float(T), omega, *i_vals, *chi_vals, d_i, d_chi])
    if (args.format or args.fmt_default) == "json":
        payload = [dict(zip(header, row)) for row in rows]
        _emit(json_text(payload), args.output)
    else:
        _emit(csv_table(header, rows), args.output)
    return 0


_COMMANDS = {
    "keyrate": _cmd_keyrate,
    "threshold": _cmd_threshold,
    "scan": _cmd_scan,
    "oneway": _cmd_oneway,
    "appendix": _cmd_appendix,
}


def main(argv=None):
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
        args = _merge_config(parser, args)
        return _COMMANDS[args.command](parser, args)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 1
    except UnphysicalStateError as exc:
        print(f"twowayqkd: unphysical parameters: {exc}", file=sys.stderr)
        return 1
    except (ValueError, TypeError, OSError) as exc:
        print(f"twowayqkd: error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())

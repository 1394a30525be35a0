"""Command-line front end.

Sub-commands: capacity, densecode, criterion, optimize, scan, monogamy,
oracle-check. Scans write CSV/JSON artifacts with metadata headers; every
command is a pure function of its flags (Monte-Carlo commands require an
explicit --seed), so re-runs are byte-identical.

Exit codes: 0 success, 1 error, 2 certification failure (an oracle
disagreement or a monogamy overlap).

Beam-splitter sign convention: the decoder's first output port carries
(x_a - x_b)/sqrt2 and the second (p_a + p_b)/sqrt2, so the measured pair
is exactly the correlated (x-, p+) quadratures. Capacities print in nats
unless --bits is given.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import math
import sys

from . import __version__
from .core import pair_stats, reduce_modes, validate_cm
from .densecode import (
    FOCK_BOUND,
    SQUEEZED_BOUND,
    EnergyBudget,
    EncodingPolicy,
    advantage,
    capacity_single_mode,
    optimal_encoding,
    tmsv_capacity,
)
from .errors import UnphysicalStateError
from .monogamy import count_overlap, monogamy_scan
from .optimize import (
    MONOGAMY_COLUMNS,
    SCAN_COLUMNS,
    count_both_beat,
    minimize_variance_product,
    optimize_pipeline,
    refine_joint_squeeze,
    region_scan,
    rotate_pair,
    optimal_rotation,
    zero_displacement,
)
from .oracle import MCConfig, joint_gaussian_mi, monte_carlo_mi
from .stateio import emit_records, load_state
from .states import pure_three_mode, tmsv

PRESETS = {
    "fig1": {"a1": 1.2, "a2": 1.4, "a3": 0.9, "pair": "ab", "nbar": 10.0},
    "fig2": {"a1": 1.5, "nbar": 10.0, "grid": 201},
    "fig3a": {"a1": 1.5, "nbar": 10.0, "grid": 201, "compare": "coherent"},
    "fig3b": {"a1": 1.5, "nbar": 10.0, "grid": 201, "compare": "squeezed"},
    "fig4": {"a1": 1.5, "grid": 201},
}


def _apply_preset(args) -> None:
    preset = getattr(args, "preset", None)
    if not preset:
        return
    for key, value in PRESETS[preset].items():
        if getattr(args, key, None) is None:
            setattr(args, key, value)


def _value(nats: float, bits: bool) -> float:
    return nats / math.log(2.0) if bits else nats


def _unit(bits: bool) -> str:
    return "bits" if bits else "nats"


def _resolve_channel(args):
    """Two-mode state from --state, --s, or a pure three-mode triple."""
    if getattr(args, "state", None):
        state = load_state(args.state, allow_unphysical=args.allow_unphysical)
        if state.n_modes == 3:
            pair = getattr(args, "pair", None) or "ab"
            state = reduce_modes(state, [0, 1] if pair == "ab" else [0, 2])
        if state.n_modes != 2:
            raise ValueError("need a two-mode (or reducible three-mode) state")
        return state
    if getattr(args, "s", None) is not None:
        return tmsv(args.s)
    if getattr(args, "a1", None) is not None:
        if args.a2 is None and args.c2 is not None:
            args.a2 = 0.5 + args.c2 * (args.a1 - 0.5)
        if args.a3 is None and args.c3 is not None:
            args.a3 = 0.5 + args.c3 * (args.a1 - 0.5)
        if args.a2 is None or args.a3 is None:
            raise ValueError("give --a2/--a3 (or --c2/--c3) along with --a1")
        three = pure_three_mode(args.a1, args.a2, args.a3)
        pair = getattr(args, "pair", None) or "ab"
        return reduce_modes(three, [0, 1] if pair == "ab" else [0, 2])
    raise ValueError("no channel given: use --state, --s, or --a1/--a2/--a3")


def _dump(payload: dict, args) -> None:
    text = json.dumps(payload, indent=2, sort_keys=True, default=str)
    if getattr(args, "output", None):
        with open(args.output, "w") as fh:
            fh.write(text + "\n")
    print(text)


def _report_payload(report, bits: bool) -> dict:
    payload = dataclasses.asdict(report)
    if bits:
        for key in ("h_max", "c_coh", "c_sq", "c_fock"):
            payload[key] = payload[key] / math.log(2.0)
        payload["units"] = "bits"
    else:
        payload["units"] = "nats"
    return payload


def cmd_capacity(args) -> int:
    if args.scheme == "dense":
        value = tmsv_capacity(args.nbar)
    else:
        value = capacity_single_mode(args.scheme, args.nbar)
    _dump(
        {
            "scheme": args.scheme,
            "nbar": args.nbar,
            "capacity": _value(value, args.bits),
            "units": _unit(args.bits),
        },
        args,
    )
    return 0


def cmd_densecode(args) -> int:
    if args.state is None and args.s is None and args.a1 is None:
        value = tmsv_capacity(args.nbar)
        _dump(
            {
                "channel": "tmsv-optimal",
                "nbar": args.nbar,
                "capacity": _value(value, args.bits),
                "units": _unit(args.bits),
            },
            args,
        )
        return 0
    state = _resolve_channel(args)
    stats = pair_stats(state, 0, 1)
    report = advantage(stats, EnergyBudget.for_stats(args.nbar, stats))
    payload = _report_payload(report, args.bits)
    payload["nbar"] = args.nbar
    payload["n0"] = stats.n0
    _dump(payload, args)
    return 0


def cmd_criterion(args) -> int:
    state = _resolve_channel(args)
    stats = pair_stats(state, 0, 1)
    u_eff = math.sqrt(stats.det)
    _dump(
        {
            "v_xm": stats.v_xm,
            "v_pp": stats.v_pp,
            "v_xp": stats.v_xp,
            "n0": stats.n0,
            "u_eff": u_eff,
            "squeezed_bound": SQUEEZED_BOUND,
            "fock_bound": FOCK_BOUND,
            "beats_squeezed_asymptotically": u_eff < SQUEEZED_BOUND,
            "beats_fock_asymptotically": u_eff < FOCK_BOUND,
        },
        args,
    )
    return 0


def cmd_optimize(args) -> int:
    state = _resolve_channel(args)
    before = pair_stats(state, 0, 1)
    report_before = None
    try:
        report_before = advantage(before, EnergyBudget.for_stats(args.nbar, before))
    except ValueError:
        pass
    rotated = rotate_pair(zero_displacement(state, 0), 0, 1, optimal_rotation(before))
    search = minimize_variance_product(rotated)
    opt_state, report = optimize_pipeline(state, args.nbar, refine=args.refine)
    payload = {
        "nbar": args.nbar,
        "theta": optimal_rotation(before),
        "t_opt": search.t_opt,
        "r1": search.r1,
        "r2": search.r2,
        "crit_before": before.det,
        "crit_min": search.v_product_min,
        "h_before": None if report_before is None else _value(report_before.h_max, args.bits),
        "report": _report_payload(report, args.bits),
    }
    if args.refine:
        r1, r2, h = refine_joint_squeeze(rotated, args.nbar)
        payload["refined"] = {"r1": r1, "r2": r2, "h": _value(h, args.bits)}
    _dump(payload, args)
    return 0


def _scan_metadata(args, extra=None) -> dict:
    meta = {"tool": "cvdc", "version": __version__}
    for key in ("a1", "nbar", "grid", "compare"):
        value = getattr(args, key, None)
        if value is not None:
            meta[key] = value
    meta.update(extra or {})
    return meta


def cmd_scan(args) -> int:
    records = region_scan(args.a1, args.nbar, args.grid)
    summary = {
        "cells": len(records),
        "both_beat_coherent": count_both_beat(records, "coherent"),
        "both_beat_squeezed": count_both_beat(records, "squeezed"),
    }
    if args.output:
        emit_records(
            records,
            args.output,
            fmt=args.format,
            columns=SCAN_COLUMNS,
            metadata=_scan_metadata(args),
        )
        summary["output"] = args.output
    if args.compare:
        summary["compare"] = args.compare
        summary["both_beat_selected"] = count_both_beat(records, args.compare)
    print(json.dumps(summary, indent=2, sort_keys=True))
    return 0


def cmd_monogamy(args) -> int:
    records = monogamy_scan(args.a1, args.grid)
    overlap = count_overlap(records)
    red = sum(1 for r in records if r.crit_ab_opt < 1.0 / 16.0)
    blue = sum(1 for r in records if r.crit_ac_opt < 1.0 / 16.0)
    if args.output:
        emit_records(
            records,
            args.output,
            fmt=args.format,
            columns=MONOGAMY_COLUMNS,
            metadata=_scan_metadata(args, {"overlap_cells": overlap}),
        )
    print(
        json.dumps(
            {
                "cells": len(records),
                "advantaged_ab": red,
                "advantaged_ac": blue,
                "overlap_cells": overlap,
                "monogamy_satisfied": overlap == 0,
            },
            indent=2,
            sort_keys=True,
        )
    )
    return 2 if overlap else 0


def cmd_oracle_check(args) -> int:
    state = _resolve_channel(args)
    stats = pair_stats(state, 0, 1)
    if args.nbar is not None:
        enc = optimal_encoding(stats, args.nbar - stats.n0)
    else:
        enc = EncodingPolicy(sigma_x2=args.sigma2, sigma_p2=args.sigma2)
    from .densecode import mutual_information

    analytic = mutual_information(stats, enc)
    determinant = joint_gaussian_mi(state, enc)
    estimate, stderr = monte_carlo_mi(state, enc, MCConfig(args.samples, args.seed))
    det_dev = abs(analytic - determinant)
    mc_dev = abs(analytic - estimate)
    ok = det_dev < 1e-9 and (stderr == 0.0 or mc_dev <= 5.0 * stderr)
    _dump(
        {
            "analytic": analytic,
            "determinant_oracle": determinant,
            "monte_carlo": estimate,
            "mc_stderr": stderr,
            "samples": args.samples,
            "seed": args.seed,
            "rng": "numpy.random.PCG64",
            "determinant_deviation": det_dev,
            "mc_deviation_sigmas": (mc_dev / stderr) if stderr else 0.0,
            "agree": ok,
        },
        args,
    )
    return 0 if ok else 2


def _add_channel_flags(p: argparse.ArgumentParser, with_pair: bool = True) -> None:
    p.add_argument("--state", help="state file (JSON)")
    p.add_argument("--s", type=float, help="TMSV squeezing parameter")
    p.add_argument("--a1", type=float, help="first local variance of a pure three-mode state")
    p.add_argument("--a2", type=float, help="second local variance")
    p.add_argument("--a3", type=float, help="third local variance")
    p.add_argument("--c2", type=float, help="rescaled a2 coordinate")
    p.add_argument("--c3", type=float, help="rescaled a3 coordinate")
    if with_pair:
        p.add_argument("--pair", choices=["ab", "ac"], help="which pair to reduce to")
    p.add_argument(
        "--allow-unphysical",
        action="store_true",
        help="load state files that fail the physicality check",
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cvdc",
        description="Dense coding over two-mode Gaussian channels: "
        "capacities, advantage criteria, optimization, and monogamy scans.",
        epilog="Sign conventions and file formats are documented in the README.",
    )
    parser.add_argument("--version", action="version", version=f"cvdc {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("capacity", help="benchmark capacity at a photon budget")
    p.add_argument("--scheme", required=True, choices=["coherent", "squeezed", "fock", "dense"])
    p.add_argument("--nbar", type=float, required=True)
    p.add_argument("--bits", action="store_true", help="display in bits")
    p.add_argument("--output")
    p.set_defaults(func=cmd_capacity)

    p = sub.add_parser("densecode", help="capacity report of a two-mode channel")
    _add_channel_flags(p)
    p.add_argument("--nbar", type=float, required=True)
    p.add_argument("--bits", action="store_true")
    p.add_argument("--output")
    p.set_defaults(func=cmd_densecode)

    p = sub.add_parser("criterion", help="advantage criterion of a channel")
    _add_channel_flags(p)
    p.add_argument("--output")
    p.set_defaults(func=cmd_criterion)

    p = sub.add_parser("optimize", help="displacement/rotation/squeezing optimization")
    _add_channel_flags(p)
    p.add_argument("--nbar", type=float)
    p.add_argument("--refine", action="store_true", help="joint (r1, r2) direct search")
    p.add_argument("--preset", choices=["fig1"])
    p.add_argument("--bits", action="store_true")
    p.add_argument("--output")
    p.set_defaults(func=cmd_optimize)

    p = sub.add_parser("scan", help="(c2, c3) region scan at fixed a1 and nbar")
    p.add_argument("--a1", type=float)
    p.add_argument("--nbar", type=float)
    p.add_argument("--grid", type=int)
    p.add_argument("--compare", choices=["coherent", "squeezed"])
    p.add_argument("--preset", choices=["fig2", "fig3a", "fig3b"])
    p.add_argument("--output")
    p.add_argument("--format", choices=["csv", "json"], default="csv")
    p.set_defaults(func=cmd_scan)

    p = sub.add_parser("monogamy", help="per-pair criterion scan; exit 2 on overlap")
    p.add_argument("--a1", type=float)
    p.add_argument("--grid", type=int)
    p.add_argument("--preset", choices=["fig4"])
    p.add_argument("--output")
    p.add_argument("--format", choices=["csv", "json"], default="csv")
    p.set_defaults(func=cmd_monogamy)

    p = sub.add_parser("oracle-check", help="analytic vs determinant vs Monte Carlo")
    _add_channel_flags(p)
    p.add_argument("--nbar", type=float, help="use the optimal encoding at this budget")
    p.add_argument("--sigma2", type=float, default=1.0, help="flat per-quadrature encoding variance")
    p.add_argument("--samples", type=int, default=10**6)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--output")
    p.set_defaults(func=cmd_oracle_check)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    _apply_preset(args)
    if getattr(args, "command", None) in ("scan", "monogamy"):
        if args.a1 is None:
            parser.error(f"{args.command}: --a1 (or a preset) is required")
        if args.grid is None:
            args.grid = 201
        if args.command == "scan" and args.nbar is None:
            parser.error("scan: --nbar (or a preset) is required")
    if getattr(args, "command", None) == "optimize" and args.nbar is None:
        parser.error("optimize: --nbar (or a preset) is required")
    try:
        return args.func(args)
    except UnphysicalStateError as err:
        print(f"error: {err}", file=sys.stderr)
        return 1
    except (ValueError, OSError) as err:
        print(f"error: {err}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())

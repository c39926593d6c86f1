"""Command-line interface: run configs, execute presets and sweeps."""

from __future__ import annotations

import argparse
import sys

from .config import ConfigError, ExperimentConfig, apply_overrides, load_config
from .integrator import IntegrationError
from .presets import expand_preset, list_presets
from .runner import emit_summary_csv, run, run_many


def _add_override_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--dt", type=float, help="integrator step size")
    parser.add_argument("--t-end", type=float, dest="t_end", help="final time")
    parser.add_argument("--theta", type=float, help="survival-time threshold")
    parser.add_argument(
        "--pair-norm", choices=("all-pairs", "half-n"), dest="pair_norm",
        help="average-concurrence normalization",
    )
    parser.add_argument(
        "--pulse-norm", choices=("verbatim", "unit-l2"), dest="pulse_norm",
        help="pulse envelope normalization",
    )
    parser.add_argument(
        "--drive", choices=("none", "one-photon", "two-photon"),
        help="photon number of the input wavepacket",
    )


def _overridden(cfg: ExperimentConfig, args: argparse.Namespace) -> ExperimentConfig:
    return apply_overrides(
        cfg,
        dt=args.dt,
        t_end=args.t_end,
        threshold=args.theta,
        pair_norm=args.pair_norm,
        normalization=args.pulse_norm,
        mode=args.drive,
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="wgqed",
        description="Two-photon driven qubit chains in a bi-directional waveguide.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser("run", help="run a single config file")
    p_run.add_argument("--config", required=True, help="path to an INI config")
    p_run.add_argument("--out", help="output CSV path (overrides the config)")
    _add_override_flags(p_run)

    p_preset = sub.add_parser("preset", help="run every member of a preset")
    p_preset.add_argument("id", help="preset identifier (see list-presets)")
    p_preset.add_argument("--out", help="directory for CSV/metadata files")
    _add_override_flags(p_preset)

    p_sweep = sub.add_parser("sweep", help="run a preset family and aggregate a summary")
    p_sweep.add_argument("id", help="preset identifier (see list-presets)")
    p_sweep.add_argument("--out", help="directory for CSV/metadata/summary files")
    p_sweep.add_argument("--jobs", type=int, default=1, help="parallel worker processes")
    _add_override_flags(p_sweep)

    sub.add_parser("list-presets", help="show available presets")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "list-presets":
            for name, desc in list_presets().items():
                print(f"{name:14s} {desc}")
            return 0

        if args.command == "run":
            cfg = _overridden(load_config(args.config), args)
            if args.out is not None:
                cfg = apply_overrides(cfg, path=args.out)
            _, summary = run(cfg)
            print(
                f"{summary.label}: C_max(all-pairs)={summary.c_max_all_pairs:.6g} "
                f"at t={summary.t_at_c_max:.4g}, survival={summary.survival_all_pairs:.6g}, "
                f"peak P_1={summary.peak_p_one:.6g}, trace_err={summary.max_trace_err:.3g}"
            )
            return 0

        configs = [_overridden(cfg, args) for cfg in expand_preset(args.id)]
        if args.command == "preset":
            for cfg in configs:
                _, summary = run(cfg, out_dir=args.out)
                print(
                    f"{summary.label}: C_max(all-pairs)={summary.c_max_all_pairs:.6g}, "
                    f"survival={summary.survival_all_pairs:.6g}, "
                    f"peak P_e={summary.peak_p_excited:.6g}"
                )
            return 0

        # sweep
        summaries = run_many(configs, out_dir=args.out, jobs=args.jobs)
        for summary in summaries:
            print(
                f"{summary.label}: C_max(all-pairs)={summary.c_max_all_pairs:.6g}, "
                f"survival={summary.survival_all_pairs:.6g}"
            )
        if args.out is not None:
            import os

            path = os.path.join(args.out, f"{args.id}_summary.csv")
            emit_summary_csv(configs, summaries, path)
            print(f"summary written to {path}")
        return 0
    except (ConfigError, KeyError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except IntegrationError as exc:
        print(f"integration aborted: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    raise SystemExit(main())

"""Command-line entry point: one subcommand per reference experiment."""

from __future__ import annotations

import argparse
import sys

from .harness import Kind, SpecError, emit_csv, resolve, run, to_csv

_FLOAT_FLAGS = ("a", "sigma-v2", "sigma-q2", "sigma02", "mu0", "lambda", "gain2", "zeta", "a-sat", "beta")

_HELP = {
    Kind.MMSE_VS_TIME: "MMSE versus time over a static channel",
    Kind.TRADEOFF_STATIC: "MMSE/harvested-energy tradeoff over rho for several n",
    Kind.FADING_CDF: "empirical MMSE CDF under Rayleigh fading with the two closed-form bounds",
    Kind.FADING_TRADEOFF: "mean MMSE versus harvested energy under fading, with mean bounds",
    Kind.HPA_MMSE: "extended-Kalman MMSE versus time with an SSPA transmitter",
    Kind.MONTE_CARLO_MSE: "empirical filter MSE against the analytic MMSE",
}


def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--config", metavar="PATH", help="INI config file ([common] and per-experiment sections)")
    p.add_argument("--seed", type=int)
    p.add_argument("--trials", type=int)
    p.add_argument("--out", metavar="PATH", help="CSV output path (default: stdout)")
    p.add_argument("--threads", type=int, default=1)
    for flag in _FLOAT_FLAGS:
        p.add_argument(f"--{flag}", type=float, dest=flag.replace("-", "_"))
    p.add_argument("--sigma-u2", type=float, action="append", dest="sigma_u2",
                   help="excitation variance; repeatable for mmse-vs-time")
    p.add_argument("--rho", type=float, action="append", help="power-splitting factor; repeat for a grid")
    p.add_argument("--n-max", type=int, dest="n_max")
    p.add_argument("--n", action="append", help="time index for the tradeoff table (integer or 'inf'); repeatable")
    p.add_argument("--channel", choices=("static", "rayleigh"))
    p.add_argument("--dump-realizations", type=int, dest="dump_realizations", metavar="K",
                   help="hpa-mmse: also write the MMSE curves of the first K trials")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="swipt-kalman",
        description="Kalman estimation with power-splitting energy harvesting: reference experiments as CSV.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for kind in Kind:
        _add_common(sub.add_parser(kind.value, help=_HELP[kind], description=_HELP[kind]))
    return parser


_OVERRIDE_KEYS = (
    "seed", "trials", "out", "a", "sigma_v2", "sigma_q2", "sigma02", "mu0", "lambda", "gain2", "zeta",
    "a_sat", "beta", "sigma_u2", "rho", "n_max", "n", "channel", "dump_realizations",
)


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    kind = Kind(args.command)
    try:
        if args.threads < 1:
            raise SpecError(f"threads must be >= 1, got {args.threads}")
        config_text = None
        if args.config:
            with open(args.config, encoding="utf-8") as fh:
                config_text = fh.read()
        overrides = {k: getattr(args, k) for k in _OVERRIDE_KEYS}
        spec = resolve(kind, config_text, overrides)
        table = run(spec, threads=args.threads)
        if spec.out_path:
            emit_csv(table, spec.out_path)
            if table.realizations is not None:
                emit_csv(table.realizations, spec.out_path + ".realizations.csv")
        else:
            sys.stdout.write(to_csv(table))
    except (SpecError, ValueError, OSError) as exc:
        print(f"swipt-kalman {kind.value}: error: {exc}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())

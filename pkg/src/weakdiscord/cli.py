"""Command-line entry point: ``sweep``, ``verify`` and ``state`` subcommands.

Exit codes: 0 success, 1 verification failure, 2 usage error (including an
unwritable output path), 3 domain error.
"""

from __future__ import annotations

import argparse
import sys

import numpy as np

from . import discord, qmath, states, verify
from .errors import DimensionError, DomainError
from .sweep import (
    PATHWAY_ALIASES, StateSpec, SweepConfig, UsageError, format_csv, optimizer_from_env,
    parse_x_grid, run_sweep, summarize,
)

EXIT_OK, EXIT_VERIFY, EXIT_USAGE, EXIT_DOMAIN = 0, 1, 2, 3


def cmd_sweep(args) -> int:
    cfg = SweepConfig(
        state_spec=StateSpec.parse(args.state),
        x_grid=parse_x_grid(f"dense:{args.dense}" if args.dense is not None else args.x_grid),
        pathway=args.pathway,
        optimizer=optimizer_from_env(),
        output_path=args.out,
    )
    cfg.state_spec.build()  # surface domain errors before touching the output path
    if cfg.output_path in (None, "-"):
        sys.stdout.write(format_csv(run_sweep(cfg)))
        return EXIT_OK
    try:
        # Open before the (slower) sweep so a bad path fails immediately.
        fh = open(cfg.output_path, "w", encoding="utf-8", newline="")
    except OSError as exc:
        print(f"error: cannot write {cfg.output_path}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    with fh:
        rows = run_sweep(cfg)
        fh.write(format_csv(rows))
    print(summarize(cfg, rows))
    print(f"wrote {len(rows)} rows to {cfg.output_path}")
    return EXIT_OK


def cmd_verify(args) -> int:
    checks = verify.run_suite(args.suite)
    for check in checks:
        print(check.line())
    failed = sum(not c.passed for c in checks)
    print(f"{len(checks) - failed}/{len(checks)} checks passed")
    return EXIT_VERIFY if failed else EXIT_OK


def _matrix_lines(m: np.ndarray) -> list[str]:
    return ["  " + "  ".join(f"{z.real:+.4f}{z.imag:+.4f}j" for z in row) for row in m]


def cmd_state(args) -> int:
    spec = StateSpec.parse(args.preset)
    rho = spec.build()
    if args.json:
        print(states.dumps(rho, indent=2))
        return EXIT_OK
    rho_a, rho_b = states.marginals(rho)
    report = discord.quantum_discord(rho, optimizer_from_env())
    out = [f"state {spec}", "density matrix:"]
    out += _matrix_lines(rho)
    out.append("eigenvalues: " + ", ".join(f"{w:.6f}" for w in qmath.eigh(rho).eigenvalues))
    out.append("rho_A:")
    out += _matrix_lines(rho_a)
    out.append("rho_B:")
    out += _matrix_lines(rho_b)
    out.append(f"I(rho_AB) = {report.total_mutual_info:.6f} bits")
    out.append(f"QD        = {report.qd:.6f} bits "
               f"(theta={report.opt_basis.theta:.4f}, phi={report.opt_basis.phi:.4f})")
    print("\n".join(out))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="weakdiscord",
        description="Quantum discord, super discord and weak discord under weak measurements.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("sweep", help="sweep the measurement strength and write a CSV")
    p.add_argument("--state", required=True,
                   help="werner:Z, bd:C1,C2,C3, werner-paper or bd-paper")
    p.add_argument("--pathway", default="direct", choices=sorted(PATHWAY_ALIASES))
    p.add_argument("--x-grid", default="table1",
                   help="table1, dense:N, or a comma-separated list of strengths")
    p.add_argument("--dense", type=int, metavar="N",
                   help="shorthand for --x-grid dense:N (overrides --x-grid)")
    p.add_argument("--out", default="-", help="output CSV path ('-' for stdout)")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("verify", help="run consistency suites")
    p.add_argument("suite", choices=[*verify.SUITES, "all"])
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("state", help="print a state and its correlations")
    p.add_argument("preset", help="werner-paper, bd-paper, werner:Z or bd:C1,C2,C3")
    p.add_argument("--json", action="store_true", help="emit the density matrix as JSON")
    p.set_defaults(func=cmd_state)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (DomainError, DimensionError) as exc:
        print(f"domain error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN


if __name__ == "__main__":
    sys.exit(main())

"""Command-line front end.

Exit codes: 0 success, 1 verification failure, 2 configuration error,
3 degenerate model, 4 no energy crossing in the searched bracket.
"""

from __future__ import annotations

import argparse
import sys
from typing import Optional, Sequence

import numpy as np

from . import __version__
from .closed_form import expand_two_group, two_group_equilibrium
from .config import PRESETS, ConfigError, RunConfig, load_config
from .errors import DegenerateDenominator, NoSignChange, SingularMatrix
from .hardware import critical_scale, scale_energies
from .market import solve_equilibrium
from .sweeps import SweepTable, sweep_energy_constraint, sweep_ratio, sweep_scale
from .verification import run_suites

EXIT_OK, EXIT_VERIFY, EXIT_CONFIG, EXIT_DEGENERATE, EXIT_NO_CROSSING = 0, 1, 2, 3, 4

DEFAULT_THRESHOLD_BRACKET = (1e3, 1e4)


def _emit(table: SweepTable, cfg: RunConfig, out: Optional[str], to_stdout: bool = True) -> None:
    table.metadata["config"] = cfg.raw
    path = out or cfg.output_path
    if path:
        table.write(path)
        print(f"wrote {len(table.rows)} row(s) to {path}", file=sys.stderr)
    elif to_stdout:
        sys.stdout.write(table.to_csv())


def _require(cfg: RunConfig, section: str, variable: Optional[str] = None) -> None:
    if getattr(cfg, section) is None:
        raise ConfigError(f"this command needs a '{section}' section")
    if variable is not None and (cfg.sweep is None or cfg.sweep.variable != variable):
        raise ConfigError(f"this command needs 'sweep.variable' = '{variable}'")


def cmd_equilibrium(cfg: RunConfig, args) -> int:
    p = cfg.market
    eq = two_group_equilibrium(p)
    ref = solve_equilibrium(expand_two_group(p))
    closed = np.r_[np.full(p.n_q, eq.q_q), np.full(p.n_c, eq.q_c)]
    residual = float(np.abs(closed - ref.quantities).max())
    print(f"q_q* = {eq.q_q:.12g}   q_c* = {eq.q_c:.12g}")
    print(f"p_q* = {eq.p_q:.12g}   p_c* = {eq.p_c:.12g}")
    print(f"pi_q* = {eq.pi_q:.12g}   pi_c* = {eq.pi_c:.12g}")
    print(f"denominator = {eq.denominator:.12g}")
    print(f"quantum nonnegative: {eq.q_q >= 0 and eq.p_q >= 0}   "
          f"classical nonnegative: {eq.q_c >= 0 and eq.p_c >= 0}")
    print(f"oracle residual (closed form vs linear solve) = {residual:.3e}")
    for w in p.warnings:
        print(f"warning: {w}")
    table = SweepTable(["q_q_star", "q_c_star", "p_q_star", "p_c_star", "pi_q_star",
                        "pi_c_star", "denominator", "oracle_residual"])
    table.add([eq.q_q, eq.q_c, eq.p_q, eq.p_c, eq.pi_q, eq.pi_c, eq.denominator, residual],
              "" if eq.all_nonnegative else "negative")
    _emit(table, cfg, args.out, to_stdout=False)
    return EXIT_OK


def cmd_sweep_energy(cfg: RunConfig, args) -> int:
    _require(cfg, "energy", "cap_E")
    e = cfg.energy
    _emit(sweep_energy_constraint(cfg.market, e.model_q, e.model_c, cfg.sweep.values(), e.mode), cfg, args.out)
    return EXIT_OK


def cmd_sweep_ratio(cfg: RunConfig, args) -> int:
    _require(cfg, "energy", "n_q")
    e = cfg.energy
    _emit(sweep_ratio(cfg.market, e.model_q, e.model_c, cfg.sweep.values()), cfg, args.out)
    return EXIT_OK


def cmd_sweep_scale(cfg: RunConfig, args) -> int:
    _require(cfg, "hardware", "a")
    _emit(sweep_scale(cfg.market, cfg.sweep.values(), cfg.hardware.constants), cfg, args.out)
    return EXIT_OK


def cmd_threshold(cfg: RunConfig, args) -> int:
    _require(cfg, "hardware")
    hw = cfg.hardware
    lo, hi = hw.bracket or DEFAULT_THRESHOLD_BRACKET
    columns, values = [], []
    for kind in hw.quantum_kinds:
        try:
            a_star = critical_scale(cfg.market, kind, hw.classical_kind, lo, hi,
                                    constants=hw.constants, expand=hw.bracket is None)
        except NoSignChange as exc:
            print(f"{kind.value}: no energy crossing in explored bracket [{exc.lo:.6g}, {exc.hi:.6g}]",
                  file=sys.stderr)
            return EXIT_NO_CROSSING
        e_q, e_c = scale_energies(cfg.market, kind, hw.classical_kind, a_star, hw.constants)
        residual = abs(e_q - e_c) / max(e_q, e_c)
        print(f"{kind.value}: a* = {a_star:.10g}   E_q = {e_q:.10g} J   E_c = {e_c:.10g} J   "
              f"relative residual = {residual:.3e}")
        columns += [f"a_star_{kind.value}", f"residual_{kind.value}"]
        values += [a_star, residual]
    table = SweepTable(columns)
    table.add(values)
    _emit(table, cfg, args.out, to_stdout=False)
    return EXIT_OK


def cmd_verify(args) -> int:
    results = run_suites(seed=args.seed, trials=args.trials)
    ok = True
    for r in results:
        status = "PASS" if r.passed else "FAIL"
        print(f"{status} {r.name}: {r.trials - len(r.failures)}/{r.trials} within {r.tolerance:g}, "
              f"worst residual {r.worst:.3e} ({r.seconds:.2f} s)")
        for k, err, inst in r.failures[:10]:
            print(f"    seed {args.seed} trial {k}: residual {err:.3e} instance {inst}")
        ok &= r.passed
    worst = max(r.worst for r in results)
    print(f"worst residual overall: {worst:.3e}")
    return EXIT_OK if ok else EXIT_VERIFY


COMMANDS = {
    "equilibrium": cmd_equilibrium,
    "sweep-energy": cmd_sweep_energy,
    "sweep-ratio": cmd_sweep_ratio,
    "sweep-scale": cmd_sweep_scale,
    "threshold": cmd_threshold,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cournot-energy",
        description="Cournot equilibria of quantum/classical computing markets under energy caps.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("command", choices=[*COMMANDS, "verify"])
    parser.add_argument("--config", help="JSON run configuration")
    parser.add_argument("--preset", choices=sorted(PRESETS), help="built-in figure preset")
    parser.add_argument("--out", help="CSV output path (default: config output.path or stdout)")
    parser.add_argument("--seed", type=int, default=0, help="verify: random seed")
    parser.add_argument("--trials", type=int, default=500, help="verify: instances per suite")
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    if args.command == "verify":
        if args.trials < 1 or args.seed < 0:
            print("error: --trials must be >= 1 and --seed >= 0", file=sys.stderr)
            return EXIT_CONFIG
        return cmd_verify(args)
    try:
        cfg = load_config(args.config, args.preset)
        return COMMANDS[args.command](cfg, args)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (DegenerateDenominator, SingularMatrix) as exc:
        print(f"degenerate model: {exc}", file=sys.stderr)
        return EXIT_DEGENERATE


if __name__ == "__main__":
    sys.exit(main())

"""``numerov solve`` command line entry point.

Exit codes: 0 success, 2 configuration error, 3 solver failure in any state,
4 I/O failure.
"""

from __future__ import annotations

import argparse
import sys
import time
import warnings
from dataclasses import dataclass, field
from pathlib import Path

from .config import build_config, build_problem, read_pairs
from .eigensolver import ScanConfig, default_delta_e, solve_states
from .errors import ConfigError, SolveError
from .output import write_outputs
from .potentials import eps_to_ev

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_SOLVER = 3
EXIT_IO = 4


@dataclass
class StateSummary:
    index: int
    eps: float
    e_ev: float | None
    g_final: float
    iters: int


@dataclass
class StateFailure:
    where: str
    reason: str


@dataclass
class RunReport:
    solutions: list[StateSummary] = field(default_factory=list)
    failures: list[StateFailure] = field(default_factory=list)
    warnings: list[str] = field(default_factory=list)
    timing_ms: int = 0

    @property
    def ok(self) -> bool:
        return not self.failures


def run_solve(cfg) -> RunReport:
    """Solve the configured problem, write its output files and report.

    Solver failures are recorded per state in the report. Filesystem errors
    propagate as :class:`OSError`.
    """
    start = time.perf_counter()
    model, grid = build_problem(cfg)
    delta_e = cfg.delta_e if cfg.delta_e is not None else default_delta_e(model, grid)
    scan = ScanConfig(delta_e=delta_e, eps_tol=cfg.eps_tol, g_tol=cfg.g_tol,
                      max_bisect=cfg.max_bisect, n_states=cfg.n_states)

    report = RunReport()
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        try:
            solutions = solve_states(model, grid, scan)
        except SolveError as exc:
            solutions = exc.solutions
            report.failures = [StateFailure(where, why) for where, why in exc.failures]
    report.warnings = [str(w.message) for w in caught]
    accounted = len(solutions) + sum(f.where.startswith("level") for f in report.failures)
    for k in range(accounted, cfg.n_states):
        report.failures.append(StateFailure(f"level {k}", "not found"))

    hydrogen = cfg.problem == "hydrogen"
    report.solutions = [
        StateSummary(s.index, s.eps, eps_to_ev(s.eps) if hydrogen else None,
                     s.g_final, s.bisect_iters)
        for s in solutions
    ]
    write_outputs(report, solutions, cfg, model=model, grid=grid)
    report.timing_ms = int(round((time.perf_counter() - start) * 1000))
    return report


def _print_report(report: RunReport, out=None, err=None):
    out = out or sys.stdout
    err = err or sys.stderr
    with_ev = any(s.e_ev is not None for s in report.solutions)
    head = f"{'n':>3}  {'eps':>22}" + (f"  {'E (eV)':>12}" if with_ev else "") + \
        f"  {'g_final':>12}  {'iters':>5}"
    print(head, file=out)
    for s in report.solutions:
        line = f"{s.index:>3}  {s.eps:>22.15g}"
        if with_ev:
            line += f"  {s.e_ev:>12.6f}"
        line += f"  {s.g_final:>12.3e}  {s.iters:>5d}"
        print(line, file=out)
    for w in report.warnings:
        print(f"warning: {w}", file=err)
    for f in report.failures:
        print(f"error: {f.where}: {f.reason}", file=err)
    print(f"({report.timing_ms} ms)", file=out)


def _overrides(args) -> dict[str, tuple[str, None]]:
    mapping = {
        "problem": args.problem,
        "n_states": args.n_states,
        "l": args.l,
        "delta": args.delta,
        "out_dir": args.out_dir,
        "emit_svg": None if args.svg is None else ("true" if args.svg else "false"),
    }
    return {key: (str(value), None) for key, value in mapping.items() if value is not None}


def _parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="numerov",
        description="Bound states of 1D and radial Schrödinger equations by Numerov shooting.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    solve = sub.add_parser("solve", help="solve a configured problem and write outputs")
    solve.add_argument("--config", type=Path, help="key = value configuration file")
    solve.add_argument("--problem", choices=("harmonic", "hydrogen", "custom"))
    solve.add_argument("--n-states", type=int)
    solve.add_argument("--l", type=int)
    solve.add_argument("--delta", type=float)
    solve.add_argument("--out-dir")
    solve.add_argument("--svg", action=argparse.BooleanOptionalAction, default=None)
    return parser


def main(argv=None) -> int:
    args = _parser().parse_args(argv)
    try:
        text = args.config.read_text() if args.config is not None else ""
    except OSError as exc:
        print(f"error: cannot read config: {exc}", file=sys.stderr)
        return EXIT_IO
    try:
        pairs = read_pairs(text)
        pairs.update(_overrides(args))
        cfg = build_config(pairs)
        report = run_solve(cfg)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except OSError as exc:
        print(f"error: cannot write outputs: {exc}", file=sys.stderr)
        return EXIT_IO
    _print_report(report)
    return EXIT_OK if report.ok else EXIT_SOLVER


if __name__ == "__main__":
    sys.exit(main())

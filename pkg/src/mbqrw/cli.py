"""Command line interface.

Four subcommands:

* ``sweep``  Monte-Carlo grid over (mu, phi); writes the sweep CSV and,
  by default, success/disturbance figures next to it.
* ``trace``  one fully logged walk; per-step CSV plus a trajectory figure.
* ``model``  model-only curves on the same grid, no simulation.
* ``verify`` the built-in invariant suite.

Exit codes: 0 success, 2 invalid configuration or arguments, 3 output
I/O failure, 4 invariant-suite failure.

Any subcommand accepts ``--config FILE`` pointing at a flat key=value
file whose keys mirror the long flags (mu, iterations, grid, phi,
trials, seed, out, workers, full, figures).  Explicit flags win over
file values.
"""

from __future__ import annotations

import argparse
import math
import sys
from pathlib import Path

from .harness import (ExperimentConfig, emit_model_curves, run_single_trace,
                      run_sweep, sweep_csv_lines, trace_csv_lines,
                      model_csv_lines)

DESK_GRID_STEP = 0.01
FULL_GRID_STEP = 0.001

_CONFIG_KEYS = ("mu", "iterations", "grid", "phi", "trials", "seed", "out",
                "workers", "full", "figures")


class ConfigError(ValueError):
    """Bad flag or config-file value; maps to exit code 2."""


def _parse_mu_list(text: str) -> list[int]:
    try:
        values = [int(part) for part in text.split(",") if part.strip() != ""]
    except ValueError as exc:
        raise ConfigError(f"bad mu list {text!r}: {exc}") from None
    if not values:
        raise ConfigError("mu list is empty")
    return values


def _parse_grid(text: str) -> tuple[float, float, float]:
    parts = text.split(":")
    if len(parts) != 3:
        raise ConfigError(f"grid must be start:stop:step, got {text!r}")
    try:
        start, stop, step = (float(p) for p in parts)
    except ValueError as exc:
        raise ConfigError(f"bad grid {text!r}: {exc}") from None
    return start, stop, step


def _parse_phi_list(text: str) -> list[float]:
    try:
        values = [float(p) for p in text.split(",") if p.strip() != ""]
    except ValueError as exc:
        raise ConfigError(f"bad phi list {text!r}: {exc}") from None
    if not values:
        raise ConfigError("phi list is empty")
    return values


def _parse_bool(text: str, key: str) -> bool:
    lowered = text.strip().lower()
    if lowered in ("1", "true", "yes", "on"):
        return True
    if lowered in ("0", "false", "no", "off"):
        return False
    raise ConfigError(f"config key {key!r} must be boolean, got {text!r}")


def load_config_file(path: str) -> dict[str, str]:
    """Flat key=value file; # comments and blank lines are skipped."""
    data: dict[str, str] = {}
    for raw in Path(path).read_text().splitlines():
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise ConfigError(f"config line is not key=value: {raw!r}")
        key, _, value = line.partition("=")
        key = key.strip()
        if key not in _CONFIG_KEYS:
            raise ConfigError(
                f"unknown config key {key!r}; allowed: {', '.join(_CONFIG_KEYS)}")
        data[key] = value.strip()
    return data


class _Settings:
    """Flag values merged over config-file values over defaults."""

    def __init__(self, args: argparse.Namespace):
        self.file = load_config_file(args.config) if args.config else {}
        self.args = args

    def get(self, key: str, parse, default):
        flag = getattr(self.args, key, None)
        if flag is not None:
            return flag
        if key in self.file:
            return parse(self.file[key])
        return default


def _figures_enabled(settings: _Settings, args: argparse.Namespace) -> bool:
    if getattr(args, "no_figures", False):
        return False
    if "figures" in settings.file:
        return _parse_bool(settings.file["figures"], "figures")
    return True


def _resolve_grid(settings: _Settings):
    """Explicit phi list wins over a grid spec; --full tightens the step."""
    phi = settings.get("phi", _parse_phi_list, None)
    grid = settings.get("grid", _parse_grid, None)
    if phi is not None and grid is not None:
        raise ConfigError("give either a phi list or a grid, not both")
    if phi is not None:
        return list(phi)
    if grid is not None:
        return tuple(grid)
    full = settings.get(
        "full", lambda v: _parse_bool(v, "full"), False)
    step = FULL_GRID_STEP if full else DESK_GRID_STEP
    return (0.0, 1.0, step)


def cmd_sweep(args: argparse.Namespace) -> int:
    settings = _Settings(args)
    config = ExperimentConfig(
        mu_list=settings.get("mu", _parse_mu_list, [1, 10, 50]),
        iterations=settings.get("iterations", int, 100),
        phi_grid=_resolve_grid(settings),
        trials_per_point=settings.get("trials", int, 1000),
        master_seed=settings.get("seed", int, 42),
        output_path=settings.get("out", str, None),
        mode="sweep",
    )
    workers = settings.get("workers", int, 1)
    try:
        config.validate()
        if workers < 1:
            raise ValueError(f"workers must be >= 1, got {workers}")
    except ValueError as exc:
        raise ConfigError(str(exc)) from None
    result = run_sweep(config, workers=workers)
    if config.output_path is None:
        print("\n".join(sweep_csv_lines(result)))
        return 0
    print(f"wrote {config.output_path} ({len(result.points)} grid points)")
    if _figures_enabled(settings, args):
        from .plots import render_sweep_figures
        for fig_path in render_sweep_figures(result, config.output_path):
            print(f"wrote {fig_path}")
    return 0


def cmd_trace(args: argparse.Namespace) -> int:
    settings = _Settings(args)
    mu = settings.get("mu", int, 10)
    phi = settings.get("phi", float, math.pi / 4)
    iterations = settings.get("iterations", int, 200)
    seed = settings.get("seed", int, 42)
    out = settings.get("out", str, None)
    try:
        trace = run_single_trace(mu, phi, iterations, seed, output_path=out)
    except ValueError as exc:
        raise ConfigError(str(exc)) from None
    if out is None:
        print("\n".join(trace_csv_lines(trace, seed)))
        return 0
    print(f"wrote {out} ({len(trace.steps)} steps, "
          f"j0={trace.j0}, j1={trace.j1}, verdict={trace.verdict})")
    if _figures_enabled(settings, args):
        from .plots import render_trace_figure
        print(f"wrote {render_trace_figure(trace, out)}")
    return 0


def cmd_model(args: argparse.Namespace) -> int:
    settings = _Settings(args)
    mu_list = settings.get("mu", _parse_mu_list, [1, 10, 50])
    iterations = settings.get("iterations", int, 100)
    out = settings.get("out", str, None)
    try:
        points = emit_model_curves(mu_list, iterations,
                                   _resolve_grid(settings), output_path=out)
    except ValueError as exc:
        raise ConfigError(str(exc)) from None
    if out is None:
        print("\n".join(model_csv_lines(points)))
        return 0
    print(f"wrote {out} ({len(points)} rows)")
    if _figures_enabled(settings, args):
        from .plots import render_model_figures
        for fig_path in render_model_figures(points, out):
            print(f"wrote {fig_path}")
    return 0


def cmd_verify(args: argparse.Namespace) -> int:
    from .selfcheck import run_all
    failures = run_all(verbose=True)
    if failures:
        print(f"{failures} invariant check(s) failed", file=sys.stderr)
        return 4
    print("all invariant checks passed")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="mbqrw",
        description="Measurement-based quantum random walk experiments")
    sub = parser.add_subparsers(dest="command", required=True)

    sweep = sub.add_parser("sweep", help="Monte-Carlo sweep over a phi grid")
    sweep.add_argument("--mu", type=_parse_mu_list, default=None,
                       help="comma list of dummy counts (default 1,10,50)")
    sweep.add_argument("--iterations", type=int, default=None,
                       help="walk steps per trial (default 100)")
    sweep.add_argument("--grid", type=_parse_grid, default=None,
                       help="start:stop:step over sin^2 phi (default 0:1:0.01)")
    sweep.add_argument("--phi", type=_parse_phi_list, default=None,
                       help="explicit comma list of phi angles instead of a grid")
    sweep.add_argument("--trials", type=int, default=None,
                       help="trials per grid point (default 1000)")
    sweep.add_argument("--seed", type=int, default=None,
                       help="master seed (default 42)")
    sweep.add_argument("--out", type=str, default=None,
                       help="CSV path; omit to print to stdout")
    sweep.add_argument("--workers", type=int, default=None,
                       help="process count for grid cells (default 1)")
    sweep.add_argument("--full", action="store_true", default=None,
                       help="full-scale grid step 0.001 instead of 0.01")
    sweep.add_argument("--no-figures", action="store_true",
                       help="skip PNG rendering next to the CSV")
    sweep.add_argument("--config", type=str, default=None,
                       help="key=value file mirroring the flags")
    sweep.set_defaults(func=cmd_sweep)

    trace = sub.add_parser("trace", help="one fully logged walk")
    trace.add_argument("--mu", type=int, default=None,
                       help="dummy count (default 10)")
    trace.add_argument("--phi", type=float, default=None,
                       help="qubit angle in radians (default pi/4)")
    trace.add_argument("--iterations", type=int, default=None,
                       help="walk steps (default 200)")
    trace.add_argument("--seed", type=int, default=None,
                       help="PCG64 seed for this trace (default 42)")
    trace.add_argument("--out", type=str, default=None,
                       help="CSV path; omit to print to stdout")
    trace.add_argument("--no-figures", action="store_true",
                       help="skip PNG rendering next to the CSV")
    trace.add_argument("--config", type=str, default=None,
                       help="key=value file mirroring the flags")
    trace.set_defaults(func=cmd_trace)

    model = sub.add_parser("model", help="model curves without simulation")
    model.add_argument("--mu", type=_parse_mu_list, default=None,
                       help="comma list of dummy counts (default 1,10,50)")
    model.add_argument("--iterations", type=int, default=None,
                       help="step budget J for the model (default 100)")
    model.add_argument("--grid", type=_parse_grid, default=None,
                       help="start:stop:step over sin^2 phi (default 0:1:0.01)")
    model.add_argument("--phi", type=_parse_phi_list, default=None,
                       help="explicit comma list of phi angles instead of a grid")
    model.add_argument("--full", action="store_true", default=None,
                       help="grid step 0.001 instead of 0.01")
    model.add_argument("--out", type=str, default=None,
                       help="CSV path; omit to print to stdout")
    model.add_argument("--no-figures", action="store_true",
                       help="skip PNG rendering next to the CSV")
    model.add_argument("--config", type=str, default=None,
                       help="key=value file mirroring the flags")
    model.set_defaults(func=cmd_model)

    verify = sub.add_parser("verify", help="run the built-in invariant suite")
    verify.set_defaults(func=cmd_verify)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"I/O error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    raise SystemExit(main())

"""Reproducible Monte-Carlo experiments over the walk.

A sweep runs ``trials_per_point`` independent walks at every (mu, phi)
grid point and reports, per point, the empirical majority-vote success
and disturbance next to the model predictions.  Determinism contract:

* every trial's seed is ``derive_seed(master_seed, mu_index, phi_index,
  trial_index)`` (see ``seeding``), so results do not depend on execution
  order and cells may run in parallel;
* each trial consumes exactly ``iterations`` uniforms from its own PCG64
  stream, in step order;
* CSV output is byte-identical for identical configs and seeds.  Floats
  are printed with 17 significant digits so they round-trip exactly.

Scoring: a trial succeeds iff the strictly larger counter points at the
branch the qubit is actually closer to (j0 > j1 for sin^2 phi < 1/2,
j1 > j0 above it).  Ties score as failures.  At sin^2 phi = 1/2 exactly
there is no wrong answer, so every trial scores correct there; model
comparisons treat that point separately.

The per-trial loop is vectorized across trials but performs the exact
same float operations in the exact same order as ``walk.run_walk``, so a
cell's counters are reproducible one trial at a time.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from ._version import __version__
from .analysis import partial_gain
from .seeding import RNG_FAMILY, SEED_SCHEME, derive_seed
from .states import make_params, WalkParams
from .walk import run_walk, VERDICT_CLOSER0, VERDICT_CLOSER1, WalkTrace

SWEEP_HEADER = ("mu,J,phi,sin2phi,trials,j0_mean,empirical_success,se,"
                "model_success,empirical_disturbance,model_disturbance")
TRACE_HEADER = "step,outcome,j0,j1,delta_j,pr_psi0,pr_ax0"
MODEL_HEADER = "mu,J,phi,sin2phi,model_success,model_disturbance"

# sin^2 phi this close to 1/2 counts as the no-wrong-answer midpoint
CENTER_TOL = 1e-12

_MODES = ("sweep", "single-trace", "model-only")


@dataclass
class ExperimentConfig:
    """Everything a sweep needs, and nothing runtime-dependent.

    ``phi_grid`` is either a (start, stop, step) triple over sin^2 phi or
    an explicit list of phi angles in radians.
    """

    mu_list: list[int]
    iterations: int = 100
    phi_grid: tuple[float, float, float] | list[float] = (0.0, 1.0, 0.01)
    trials_per_point: int = 1000
    master_seed: int = 42
    output_path: str | Path | None = None
    mode: str = "sweep"

    def validate(self) -> None:
        if not self.mu_list:
            raise ValueError("mu_list must not be empty")
        for mu in self.mu_list:
            if not isinstance(mu, (int, np.integer)) or isinstance(mu, bool) or mu < 1:
                raise ValueError(f"every mu must be an integer >= 1, got {mu!r}")
        if self.iterations < 1:
            raise ValueError(f"iterations must be >= 1, got {self.iterations}")
        if self.trials_per_point < 1:
            raise ValueError(
                f"trials_per_point must be >= 1, got {self.trials_per_point}")
        if not isinstance(self.master_seed, (int, np.integer)) or isinstance(self.master_seed, bool):
            raise ValueError(f"master_seed must be an integer, got {self.master_seed!r}")
        if self.mode not in _MODES:
            raise ValueError(f"mode must be one of {_MODES}, got {self.mode!r}")
        grid_points(self.phi_grid)  # raises on malformed grids


@dataclass(frozen=True)
class TrialRecord:
    """Outcome of one walk trial."""

    mu: int
    phi: float
    seed: int
    j0: int
    j1: int
    verdict: str
    final_pr_psi0: float
    disturbance: float


@dataclass(frozen=True)
class SweepPoint:
    """Aggregates for one (mu, phi) cell of a sweep."""

    mu: int
    iterations: int
    phi: float
    sin2phi: float
    trials: int
    j0_mean: float
    empirical_success: float
    standard_error: float
    model_success: float
    empirical_disturbance: float
    model_disturbance: float


@dataclass
class SweepResult:
    """All cells of a sweep plus the provenance needed to rerun it."""

    config: ExperimentConfig
    points: list[SweepPoint] = field(default_factory=list)

    def metadata(self) -> list[tuple[str, str]]:
        return _metadata_pairs(self.config)


def grid_points(phi_grid) -> list[tuple[float, float]]:
    """Expand a grid spec into [(sin2phi, phi), ...].

    A (start, stop, step) triple walks sin^2 phi from start by step while
    staying within stop; an explicit list is taken as phi angles.
    """
    if isinstance(phi_grid, (tuple,)) and len(phi_grid) == 3 \
            and all(isinstance(v, (int, float)) for v in phi_grid):
        start, stop, step = (float(v) for v in phi_grid)
        if not (0.0 <= start <= stop <= 1.0):
            raise ValueError(
                f"grid must satisfy 0 <= start <= stop <= 1, got {phi_grid}")
        if step <= 0.0:
            raise ValueError(f"grid step must be > 0, got {step}")
        count = int(math.floor((stop - start + step * 1e-9) / step)) + 1
        out = []
        for k in range(count):
            s = start + k * step
            if s > 1.0:
                s = 1.0
            out.append((s, math.asin(math.sqrt(s))))
        return out
    if isinstance(phi_grid, (list, tuple)):
        out = []
        for phi in phi_grid:
            phi = float(phi)
            if not (0.0 <= phi <= math.pi / 2):
                raise ValueError(f"phi must lie in [0, pi/2], got {phi}")
            s = math.sin(phi) ** 2
            out.append((s, phi))
        if not out:
            raise ValueError("phi list must not be empty")
        return out
    raise ValueError(f"phi_grid must be a 3-tuple or a list, got {phi_grid!r}")


def simulate_trials(params: WalkParams, phi: float, iterations: int,
                    seeds: list[int]) -> tuple[np.ndarray, np.ndarray]:
    """Run one walk per seed, vectorized across trials.

    Returns (j0, final_pr_psi0) arrays, one entry per seed.  Performs the
    same arithmetic as ``walk.run_walk`` step for step, on each trial's
    own PCG64 stream, so the results match the scalar engine exactly.
    """
    n = len(seeds)
    uniforms = np.empty((n, iterations))
    for i, seed in enumerate(seeds):
        uniforms[i] = np.random.Generator(np.random.PCG64(seed)).random(iterations)
    c0 = math.cos(params.theta0)
    c1 = math.cos(params.theta1)
    s0 = math.sin(params.theta0)
    s1 = math.sin(params.theta1)
    c0sq = c0 * c0
    c1sq = c1 * c1
    s0sq = s0 * s0
    s1sq = s1 * s1
    alpha = np.full(n, math.cos(phi))
    beta = np.full(n, math.sin(phi))
    j1 = np.zeros(n, dtype=np.int64)
    for step in range(iterations):
        a2 = alpha * alpha
        b2 = beta * beta
        p0 = a2 * c0sq + b2 * c1sq
        p1 = a2 * s0sq + b2 * s1sq
        ones = uniforms[:, step] >= p0
        root0 = np.sqrt(p0)
        root1 = np.sqrt(p1)
        alpha = np.where(ones, alpha * s0 / root1, alpha * c0 / root0)
        beta = np.where(ones, beta * s1 / root1, beta * c1 / root0)
        j1 += ones
    j0 = iterations - j1
    return j0, alpha * alpha


def run_trial(params: WalkParams, phi: float, iterations: int,
              seed: int) -> TrialRecord:
    """One walk on the scalar engine, wrapped with its score inputs."""
    rng = np.random.Generator(np.random.PCG64(seed))
    trace = run_walk(phi, params, iterations, rng)
    final = trace.steps[-1]
    pr0 = final.alpha_after * final.alpha_after
    return TrialRecord(
        mu=params.mu, phi=phi, seed=seed, j0=trace.j0, j1=trace.j1,
        verdict=trace.verdict, final_pr_psi0=pr0,
        disturbance=abs(math.cos(phi) ** 2 - pr0))


def score_success(j0: np.ndarray, j1: np.ndarray, sin2phi: float) -> np.ndarray:
    """Strict-majority scoring; the midpoint has no wrong answer."""
    if abs(sin2phi - 0.5) < CENTER_TOL:
        return np.ones(j0.shape, dtype=bool)
    if sin2phi < 0.5:
        return j0 > j1
    return j1 > j0


def _cell(args) -> SweepPoint:
    (mu_index, mu, phi_index, sin2phi, phi,
     iterations, trials, master_seed) = args
    params = make_params(mu)
    seeds = [derive_seed(master_seed, mu_index, phi_index, t)
             for t in range(trials)]
    j0, final_pr0 = simulate_trials(params, phi, iterations, seeds)
    j1 = iterations - j0
    correct = score_success(j0, j1, sin2phi)
    p_hat = float(np.count_nonzero(correct)) / trials
    se = math.sqrt(p_hat * (1.0 - p_hat) / trials)
    emp_dist = float(np.mean(np.abs(math.cos(phi) ** 2 - final_pr0)))
    try:
        model = partial_gain(phi, params, iterations)
        model_success = model.success
        model_dist = model.disturbance
    except ValueError:
        # odd or oversized step budgets have no tail model; keep the
        # columns present
        model_success = math.nan
        model_dist = math.nan
    return SweepPoint(
        mu=mu, iterations=iterations, phi=phi, sin2phi=sin2phi,
        trials=trials, j0_mean=float(np.mean(j0)),
        empirical_success=p_hat, standard_error=se,
        model_success=model_success,
        empirical_disturbance=emp_dist, model_disturbance=model_dist)


def run_sweep(config: ExperimentConfig, workers: int = 1) -> SweepResult:
    """Run the full grid and, if configured, write the sweep CSV.

    ``workers`` > 1 distributes grid cells over processes; because every
    trial's seed is a pure function of its coordinates and aggregation is
    per cell, the result is identical to a serial run.
    """
    config.validate()
    if workers < 1:
        raise ValueError(f"workers must be >= 1, got {workers}")
    points = grid_points(config.phi_grid)
    cells = []
    for mu_index, mu in enumerate(config.mu_list):
        for phi_index, (sin2phi, phi) in enumerate(points):
            cells.append((mu_index, mu, phi_index, sin2phi, phi,
                          config.iterations, config.trials_per_point,
                          config.master_seed))
    if workers == 1:
        rows = [_cell(c) for c in cells]
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            rows = list(pool.map(_cell, cells))
    result = SweepResult(config=config, points=rows)
    if config.output_path is not None:
        write_sweep_csv(result, config.output_path)
    return result


def run_single_trace(mu: int, phi: float, iterations: int, seed: int,
                     output_path: str | Path | None = None) -> WalkTrace:
    """One fully logged walk; optionally writes the per-step CSV.

    The seed feeds PCG64 directly (no derivation step), so a trace is
    pinned by (mu, phi, iterations, seed) alone.  CSV rows carry, per
    step: the outcome, both counters after the step, their difference,
    the post-step Pr(psi0), and the Pr(aux=0) the draw was tested
    against.
    """
    params = make_params(mu)
    rng = np.random.Generator(np.random.PCG64(seed))
    trace = run_walk(phi, params, iterations, rng)
    if output_path is not None:
        write_trace_csv(trace, output_path, seed=seed)
    return trace


@dataclass(frozen=True)
class ModelPoint:
    """Model-only predictions for one (mu, phi) grid point."""

    mu: int
    iterations: int
    phi: float
    sin2phi: float
    model_success: float
    model_disturbance: float


def emit_model_curves(mu_list: list[int], iterations: int, phi_grid,
                      output_path: str | Path | None = None) -> list[ModelPoint]:
    """Model curves on the same grid a sweep would use, for overlays."""
    points = grid_points(phi_grid)
    out = []
    for mu in mu_list:
        params = make_params(mu)
        for sin2phi, phi in points:
            model = partial_gain(phi, params, iterations)
            out.append(ModelPoint(
                mu=mu, iterations=iterations, phi=phi, sin2phi=sin2phi,
                model_success=model.success,
                model_disturbance=model.disturbance))
    if output_path is not None:
        write_model_csv(out, output_path)
    return out


def _fmt(x: float) -> str:
    return format(float(x), ".17g")


def _metadata_pairs(config: ExperimentConfig) -> list[tuple[str, str]]:
    return [
        ("generator", f"mbqrw {__version__}"),
        ("rng", RNG_FAMILY),
        ("seed_scheme", SEED_SCHEME),
        ("master_seed", str(config.master_seed)),
        ("mode", config.mode),
    ]


def _write_lines(path: str | Path, lines: list[str]) -> None:
    text = "\n".join(lines) + "\n"
    Path(path).write_text(text, encoding="ascii", newline="\n")


def sweep_csv_lines(result: SweepResult) -> list[str]:
    lines = [f"# {k}={v}" for k, v in result.metadata()]
    lines.append(SWEEP_HEADER)
    for p in result.points:
        lines.append(",".join([
            str(p.mu), str(p.iterations), _fmt(p.phi), _fmt(p.sin2phi),
            str(p.trials), _fmt(p.j0_mean), _fmt(p.empirical_success),
            _fmt(p.standard_error), _fmt(p.model_success),
            _fmt(p.empirical_disturbance), _fmt(p.model_disturbance)]))
    return lines


def write_sweep_csv(result: SweepResult, path: str | Path) -> None:
    _write_lines(path, sweep_csv_lines(result))


def trace_csv_lines(trace: WalkTrace, seed: int) -> list[str]:
    lines = [
        f"# generator=mbqrw {__version__}",
        f"# rng={RNG_FAMILY}",
        f"# seed={seed}",
        f"# mu={trace.params.mu}",
        f"# phi={_fmt(trace.phi)}",
        TRACE_HEADER,
    ]
    j0 = 0
    j1 = 0
    for step_index, step in enumerate(trace.steps, start=1):
        if step.outcome == 0:
            j0 += 1
        else:
            j1 += 1
        pr0 = step.alpha_after * step.alpha_after
        lines.append(",".join([
            str(step_index), str(step.outcome), str(j0), str(j1),
            str(j1 - j0), _fmt(pr0), _fmt(step.p0_before)]))
    return lines


def write_trace_csv(trace: WalkTrace, path: str | Path, seed: int) -> None:
    _write_lines(path, trace_csv_lines(trace, seed))


def model_csv_lines(points: list[ModelPoint]) -> list[str]:
    lines = [f"# generator=mbqrw {__version__}", MODEL_HEADER]
    for p in points:
        lines.append(",".join([
            str(p.mu), str(p.iterations), _fmt(p.phi), _fmt(p.sin2phi),
            _fmt(p.model_success), _fmt(p.model_disturbance)]))
    return lines


def write_model_csv(points: list[ModelPoint], path: str | Path) -> None:
    _write_lines(path, model_csv_lines(points))

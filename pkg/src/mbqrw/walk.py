"""The measurement random walk and its closed-form outcome laws.

Each step probes the register and measures the aux qubit.  Outcome 0
multiplies the branch amplitudes by (cos theta0, cos theta1), outcome 1 by
(sin theta0, sin theta1), both renormalized.  Conditioned on the counters
(j0, j1) the state is therefore known in closed form, and with
tan(theta0) < 1 the posterior probability of the |0> branch depends only
on delta_j = j1 - j0:

    Pr(psi0 | delta_j) = tan(theta0)^(2 delta_j)
                         / (tan(phi)^2 + tan(theta0)^(2 delta_j)).

Both closed forms are evaluated in log space so counter imbalances in the
thousands neither overflow nor underflow, and phi = pi/2 (where tan(phi)^2
diverges) costs nothing special.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .states import WalkParams, WalkState, prepare_analytic

VERDICT_CLOSER0 = "closer0"
VERDICT_CLOSER1 = "closer1"

# below this, a branch is numerically dead and renormalizing by it is noise
_DEGENERATE_PROB = 1e-300


class DegenerateOutcomeError(RuntimeError):
    """Conditioning on an outcome whose probability is numerically zero."""


@dataclass(frozen=True)
class StepOutcome:
    """One step of the walk: the draw's law and the state it left behind."""

    outcome: int
    p0_before: float
    p1_before: float
    alpha_after: float
    beta_after: float


@dataclass
class WalkTrace:
    """Full record of one walk: per-step outcomes, counters, verdict."""

    params: WalkParams
    phi: float
    steps: list[StepOutcome] = field(default_factory=list)
    j0: int = 0
    j1: int = 0
    verdict: str = VERDICT_CLOSER0


def outcome_probs(state: WalkState, params: WalkParams) -> tuple[float, float]:
    """Aux outcome probabilities for the next probe of ``state``.

    p0 = alpha^2 cos^2(theta0) + beta^2 cos^2(theta1) and p1 likewise with
    sines.  For a normalized state they sum to 1 exactly in real
    arithmetic; in floats the sum stays within a few ulp.
    """
    c0 = math.cos(params.theta0)
    c1 = math.cos(params.theta1)
    s0 = math.sin(params.theta0)
    s1 = math.sin(params.theta1)
    a2 = state.alpha * state.alpha
    b2 = state.beta * state.beta
    p0 = a2 * (c0 * c0) + b2 * (c1 * c1)
    p1 = a2 * (s0 * s0) + b2 * (s1 * s1)
    return p0, p1


def update_on_outcome(state: WalkState, params: WalkParams, outcome: int) -> WalkState:
    """Collapse the walk state on one aux outcome and bump its counter.

    Outcome 0 scales (alpha, beta) by (cos theta0, cos theta1)/sqrt(p0),
    outcome 1 by (sin theta0, sin theta1)/sqrt(p1).  Conditioning on an
    outcome of numerically zero probability raises DegenerateOutcomeError
    rather than dividing by zero.
    """
    if outcome not in (0, 1):
        raise ValueError(f"outcome must be 0 or 1, got {outcome!r}")
    p0, p1 = outcome_probs(state, params)
    prob = p0 if outcome == 0 else p1
    if prob < _DEGENERATE_PROB:
        raise DegenerateOutcomeError(
            f"outcome {outcome} has probability {prob:.3e}; "
            "cannot renormalize a dead branch")
    root = math.sqrt(prob)
    if outcome == 0:
        alpha = state.alpha * math.cos(params.theta0) / root
        beta = state.beta * math.cos(params.theta1) / root
        return WalkState(alpha=alpha, beta=beta,
                         j0=state.j0 + 1, j1=state.j1, phi=state.phi)
    alpha = state.alpha * math.sin(params.theta0) / root
    beta = state.beta * math.sin(params.theta1) / root
    return WalkState(alpha=alpha, beta=beta,
                     j0=state.j0, j1=state.j1 + 1, phi=state.phi)


def run_walk(phi: float, params: WalkParams, steps: int, rng) -> WalkTrace:
    """Run the walk for ``steps`` probes and return the full trace.

    Parameters
    ----------
    phi : float
        Unknown qubit angle in [0, pi/2].
    params : WalkParams
        Walk constants from ``make_params``.
    steps : int
        Number of probe/measure rounds, >= 1.
    rng : numpy.random.Generator
        Source of uniforms; one draw u in [0, 1) is consumed per step and
        the outcome is 1 iff u >= p0.

    The verdict is "closer1" iff j1 > j0; a tie reads as "closer0".
    """
    if steps < 1:
        raise ValueError(f"steps must be >= 1, got {steps}")
    state = prepare_analytic(phi, params)
    trace = WalkTrace(params=params, phi=state.phi)
    for _ in range(steps):
        p0, p1 = outcome_probs(state, params)
        u = rng.random()
        outcome = 1 if u >= p0 else 0
        state = update_on_outcome(state, params, outcome)
        trace.steps.append(StepOutcome(
            outcome=outcome, p0_before=p0, p1_before=p1,
            alpha_after=state.alpha, beta_after=state.beta))
    trace.j0 = state.j0
    trace.j1 = state.j1
    trace.verdict = VERDICT_CLOSER1 if state.j1 > state.j0 else VERDICT_CLOSER0
    return trace


def _log_weights(phi: float) -> tuple[float, float]:
    """(log cos^2 phi, log sin^2 phi) with exact -inf at the endpoints."""
    c = math.cos(phi)
    s = math.sin(phi)
    lw0 = 2.0 * math.log(c) if c > 0.0 else -math.inf
    lw1 = 2.0 * math.log(s) if s > 0.0 else -math.inf
    return lw0, lw1


def closed_form_probs(phi: float, params: WalkParams,
                      j0: int, j1: int) -> tuple[float, float, float, float]:
    """State and next-outcome probabilities after j0 zeros and j1 ones.

    Returns (pr_psi0, pr_psi1, pr_ax0, pr_ax1): the posterior weights of
    the unknown qubit's branches given the counters, and the aux outcome
    law for the next probe.  Only the counts matter, not the order.
    Evaluated in log space, so j0, j1 in the thousands are fine.
    """
    if j0 < 0 or j1 < 0:
        raise ValueError(f"counters must be >= 0, got j0={j0}, j1={j1}")
    lw0, lw1 = _log_weights(phi)
    lc0 = 2.0 * math.log(math.cos(params.theta0))
    ls0 = 2.0 * math.log(math.sin(params.theta0))
    lc1 = 2.0 * math.log(math.cos(params.theta1))
    ls1 = 2.0 * math.log(math.sin(params.theta1))
    branch0 = lw0 + j0 * lc0 + j1 * ls0
    branch1 = lw1 + j0 * lc1 + j1 * ls1
    norm = np.logaddexp(branch0, branch1)
    pr_psi0 = float(np.exp(branch0 - norm))
    pr_psi1 = float(np.exp(branch1 - norm))
    pr_ax0 = float(np.exp(np.logaddexp(branch0 + lc0, branch1 + lc1) - norm))
    pr_ax1 = float(np.exp(np.logaddexp(branch0 + ls0, branch1 + ls1) - norm))
    return pr_psi0, pr_psi1, pr_ax0, pr_ax1


def delta_form_probs(phi: float, params: WalkParams,
                     delta_j: float) -> tuple[float, float, float, float]:
    """Same laws as ``closed_form_probs`` but as a function of j1 - j0 only.

    Returns (pr_ax0, pr_ax1, pr_psi0, pr_psi1).  ``delta_j`` may be any
    real number; the analysis layer feeds it non-integer typical
    displacements.  Log-space evaluation keeps phi = pi/2 and |delta_j|
    in the thousands exact.
    """
    lw0, lw1 = _log_weights(phi)
    log_tan0 = math.log(math.tan(params.theta0))
    branch0 = lw0 + 2.0 * delta_j * log_tan0
    branch1 = lw1
    norm = np.logaddexp(branch0, branch1)
    pr_psi0 = float(np.exp(branch0 - norm))
    pr_psi1 = float(np.exp(branch1 - norm))
    c0sq = math.cos(params.theta0) ** 2
    s0sq = math.sin(params.theta0) ** 2
    # theta1 is the complement of theta0, so the branch-1 coefficients are
    # the swapped pair
    pr_ax0 = pr_psi0 * c0sq + pr_psi1 * s0sq
    pr_ax1 = pr_psi0 * s0sq + pr_psi1 * c0sq
    return pr_ax0, pr_ax1, pr_psi0, pr_psi1

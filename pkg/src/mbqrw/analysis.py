"""Drift analysis of the walk: stability, required strength, expected gain.

Three questions about a walk with branch angle theta0 = pi/4 - eps:

* How many wrong-direction steps can the walk absorb before the next
  outcome stops favoring the majority branch?  (``stability_bound``)
* How many steps does it take to effectively project the qubit, and how
  does that scale with the dummy count?  (``strength_scale``)
* For a fixed budget of J steps, what success probability and what
  disturbance should a simulation show?  (``partial_gain``)

The gain model treats the J outcomes as i.i.d. with the outcome law
frozen at the walk's typical displacement delta_J = +-sqrt(2J/pi), and
evaluates the majority vote as a binomial tail.  The tail is summed
term by term in log space with compensated summation, exact for
J <= 10_000.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .states import WalkParams
from .walk import delta_form_probs

_MAX_EXACT_TAIL_J = 10_000


@dataclass(frozen=True)
class StabilityBound:
    """Wrong-direction tolerance of the walk at a given phi."""

    phi: float
    params: WalkParams
    max_wrong_steps: float


@dataclass(frozen=True)
class StrengthScale:
    """Steps needed to project the qubit to within epsilon_proj."""

    params: WalkParams
    epsilon_proj: float
    phi_ref: float
    delta_j_required: float
    j_proj: float


@dataclass(frozen=True)
class PartialGainModel:
    """Predicted majority-vote performance for a fixed step budget J."""

    J: int
    p0_model: float
    success: float
    disturbance: float


def stability_bound(phi: float, params: WalkParams) -> StabilityBound:
    """Counter imbalance at which the next-outcome law crosses 1/2.

    For phi < pi/4 the walk drifts toward outcome 0; the drift survives a
    deficit of up to log(tan phi)/log(tan theta0) excess wrong outcomes.
    Angles above pi/4 mirror to pi/2 - phi.  phi = 0 gives +inf (the walk
    can never be pushed off a pole), phi = pi/4 gives 0.
    """
    phi = float(phi)
    if not math.isfinite(phi) or phi < 0.0 or phi > math.pi / 2:
        raise ValueError(f"phi must lie in [0, pi/2], got {phi}")
    mirrored = phi if phi <= math.pi / 4 else math.pi / 2 - phi
    tan_phi = math.tan(mirrored)
    if tan_phi <= 0.0:
        bound = math.inf
    else:
        bound = math.log(tan_phi) / math.log(math.tan(params.theta0))
    return StabilityBound(phi=phi, params=params, max_wrong_steps=bound)


def strength_scale(params: WalkParams, epsilon_proj: float,
                   phi_ref: float) -> StrengthScale:
    """Displacement and step count needed to project within epsilon_proj.

    delta_j_required = (2/pi)^2 * log(tan^2(phi_ref) * (1 - e)/e) * (2mu+1)
    and, with the typical displacement after j steps being sqrt(2j/pi),
    j_proj = (pi/2) * delta_j_required^2.  The quadratic dependence on
    2mu + 1 is what makes weaker probes last quadratically longer.

    epsilon_proj in (0, 0.5]; 0.5 asks for no projection at all and gives
    0 at phi_ref = pi/4.  phi_ref must avoid the poles of tan.
    """
    epsilon_proj = float(epsilon_proj)
    phi_ref = float(phi_ref)
    if not (0.0 < epsilon_proj <= 0.5):
        raise ValueError(
            f"epsilon_proj must lie in (0, 0.5], got {epsilon_proj}")
    if not (0.0 < phi_ref < math.pi / 2):
        raise ValueError(
            f"phi_ref must lie strictly inside (0, pi/2), got {phi_ref}")
    ratio = math.tan(phi_ref) ** 2 * (1.0 - epsilon_proj) / epsilon_proj
    delta_j_required = (2.0 / math.pi) ** 2 * math.log(ratio) * (2 * params.mu + 1)
    j_proj = (math.pi / 2.0) * delta_j_required * delta_j_required
    return StrengthScale(params=params, epsilon_proj=epsilon_proj,
                         phi_ref=phi_ref,
                         delta_j_required=delta_j_required, j_proj=j_proj)


def _log_binom_tail_above_half(J: int, p: float) -> float:
    """Pr(X > J/2) for X ~ Binomial(J, p), term-by-term in log space."""
    if p <= 0.0:
        return 0.0
    if p >= 1.0:
        return 1.0
    log_p = math.log(p)
    log_q = math.log1p(-p)
    lgamma_n = math.lgamma(J + 1)
    terms = []
    for k in range(J // 2 + 1, J + 1):
        log_term = (lgamma_n - math.lgamma(k + 1) - math.lgamma(J - k + 1)
                    + k * log_p + (J - k) * log_q)
        terms.append(math.exp(log_term))
    return min(1.0, math.fsum(terms))


def partial_gain(phi: float, params: WalkParams, J: int) -> PartialGainModel:
    """Majority-vote success and disturbance model for J steps.

    The typical counter imbalance after J steps has magnitude
    sqrt(2J/pi), the mean absolute displacement of an unbiased walk.
    For the vote, the outcome law is frozen at the displacement signed
    toward the qubit's nearer pole (negative below pi/4, positive above,
    zero at pi/4), giving

        success = sin^2(phi) + cos(2 phi) * Pr(Binomial(J, p0) > J/2).

    For the disturbance, trials split between the two displacement
    endpoints with the conserved branch weights, so the expectation
    averages |cos^2(phi) - pr_psi0| over both signs:

        d = cos^2(phi) * d(-sqrt(2J/pi)) + sin^2(phi) * d(+sqrt(2J/pi)).

    A one-sided disturbance would predict zero at phi = pi/4 where the
    simulated walk wanders most; the two-sided average tracks the
    simulation across the whole grid.  J must be even (the majority
    threshold J/2 must be a whole count) and at most 10_000, beyond
    which the exact tail sum is refused.
    """
    phi = float(phi)
    if not math.isfinite(phi) or phi < 0.0 or phi > math.pi / 2:
        raise ValueError(f"phi must lie in [0, pi/2], got {phi}")
    if J < 2 or J % 2 != 0:
        raise ValueError(f"J must be an even integer >= 2, got {J}")
    if J > _MAX_EXACT_TAIL_J:
        raise ValueError(
            f"J = {J} exceeds the exact-tail limit {_MAX_EXACT_TAIL_J}")
    quarter = math.pi / 4
    magnitude = math.sqrt(2.0 * J / math.pi)
    if phi < quarter:
        delta_j = -magnitude
    elif phi > quarter:
        delta_j = magnitude
    else:
        delta_j = 0.0
    pr_ax0 = delta_form_probs(phi, params, delta_j)[0]
    tail = _log_binom_tail_above_half(J, pr_ax0)
    sin2 = math.sin(phi) ** 2
    cos2 = math.cos(phi) ** 2
    success = sin2 + math.cos(2.0 * phi) * tail
    pr_psi0_down = delta_form_probs(phi, params, -magnitude)[2]
    pr_psi0_up = delta_form_probs(phi, params, magnitude)[2]
    dist = cos2 * disturbance(phi, pr_psi0_down) \
        + sin2 * disturbance(phi, pr_psi0_up)
    return PartialGainModel(J=J, p0_model=pr_ax0, success=success,
                            disturbance=dist)


def disturbance(phi: float, pr_psi0_now: float) -> float:
    """How far the walk has dragged Pr(psi0) from its prepared value."""
    return abs(math.cos(phi) ** 2 - pr_psi0_now)

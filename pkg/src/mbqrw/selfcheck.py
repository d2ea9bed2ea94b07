"""Built-in invariant suite behind ``mbqrw verify``.

Runs the package's structural invariants with small independent oracles
(repeated matrix multiplication, step-by-step recurrence iteration,
exhaustive path enumeration, a dense statevector) and reports one line
per check.  This is not a replacement for the pytest suite; it is the
self-contained subset a deployment can run without test infrastructure.
"""

from __future__ import annotations

import itertools
import math
from typing import Callable

import numpy as np

from .analysis import partial_gain, stability_bound, strength_scale
from .gates import aux_outcome_probs, gate_power, make_gate, PAULI_X
from .harness import simulate_trials
from .seeding import derive_seed
from .states import (apply_probe, extract_analytic, make_params,
                     measure_aux, prepare_analytic, prepare_full)
from .walk import (closed_form_probs, delta_form_probs, outcome_probs,
                   update_on_outcome)

_FORCE_ZERO = 0.0
_FORCE_ONE = 1.0 - 1e-12


def _check_gate_algebra() -> str:
    eye = np.eye(2)
    for c in range(1, 21):
        gate = make_gate(c)
        m = gate.matrix
        unit = np.max(np.abs(m.conj().T @ m - eye))
        if unit > 1e-12:
            raise AssertionError(f"c={c}: V not unitary (dev {unit:.2e})")
        power = eye.astype(complex)
        for d in range(1, c + 1):
            power = m @ power
            closed = gate_power(c, d).matrix
            dev = np.max(np.abs(power - closed))
            if dev > 1e-12:
                raise AssertionError(
                    f"c={c}, d={d}: closed form vs product dev {dev:.2e}")
        root_dev = np.max(np.abs(power - PAULI_X))
        if root_dev > 1e-12:
            raise AssertionError(f"c={c}: V^c != X (dev {root_dev:.2e})")
        for a, b in ((1, 2), (2, 3), (c - 1, 1)):
            comp = gate_power(c, a).matrix @ gate_power(c, b).matrix
            dev = np.max(np.abs(comp - gate_power(c, a + b).matrix))
            if dev > 1e-12:
                raise AssertionError(f"c={c}: power composition dev {dev:.2e}")
    return "c up to 20: unitarity, V^c = X, closed form, composition"


def _check_outcome_probs_bridge() -> str:
    for c in range(1, 21):
        for d in range(0, 2 * c + 1):
            m = gate_power(c, d).matrix
            p0, p1 = aux_outcome_probs(c, d)
            if abs(abs(m[0, 0]) ** 2 - p0) > 1e-12:
                raise AssertionError(f"c={c}, d={d}: p0 mismatch")
            if abs(abs(m[1, 0]) ** 2 - p1) > 1e-12:
                raise AssertionError(f"c={c}, d={d}: p1 mismatch")
            if abs(p0 + p1 - 1.0) > 1e-12:
                raise AssertionError(f"c={c}, d={d}: p0 + p1 != 1")
    return "matrix entries match cos^2/sin^2 law for c up to 20"


def _check_params_identities() -> str:
    for mu in range(1, 31):
        p = make_params(mu)
        if abs(p.theta0 + p.theta1 - math.pi / 2) > 1e-15:
            raise AssertionError(f"mu={mu}: theta0 + theta1 != pi/2")
        if abs(p.theta0 - (math.pi / 4 - p.epsilon)) > 1e-14:
            raise AssertionError(f"mu={mu}: theta0 != pi/4 - eps")
        if abs(math.cos(p.theta1) - math.sin(p.theta0)) > 1e-14:
            raise AssertionError(f"mu={mu}: cos(theta1) != sin(theta0)")
        ratio = (math.cos(p.theta1) * math.sin(p.theta1)) / \
                (math.cos(p.theta0) * math.sin(p.theta0))
        if abs(ratio ** 100 - 1.0) > 1e-12:
            raise AssertionError(f"mu={mu}: product identity drifts")
    return "theta identities and complement symmetry for mu up to 30"


def _check_engine_equivalence() -> str:
    worst = 0.0
    for mu in (1, 2, 3):
        params = make_params(mu)
        for phi in (0.0, math.pi / 8, math.pi / 4, 3 * math.pi / 8, math.pi / 2):
            for seq in itertools.product((0, 1), repeat=4):
                state = prepare_analytic(phi, params)
                reg = prepare_full(phi, mu)
                for outcome in seq:
                    p0, _ = outcome_probs(state, params)
                    reg = apply_probe(reg, params)
                    amps = reg.amplitudes
                    even = amps[0::2]
                    reg_p0 = float(np.sum(np.abs(even) ** 2))
                    worst = max(worst, abs(reg_p0 - p0))
                    draw = _FORCE_ONE if outcome == 1 else _FORCE_ZERO
                    got, reg = measure_aux(reg, draw)
                    if got != outcome:
                        raise AssertionError("forced draw produced wrong outcome")
                    state = update_on_outcome(state, params, outcome)
                    a, b = extract_analytic(reg)
                    worst = max(worst, abs(a - state.alpha), abs(b - state.beta))
    if worst > 1e-10:
        raise AssertionError(f"engines diverge by {worst:.2e}")
    return f"dense vs two-amplitude, all length-4 paths, max dev {worst:.1e}"


def _check_reversibility() -> str:
    rng = np.random.default_rng(20260814)
    worst = 0.0
    for mu in (1, 7, 20):
        params = make_params(mu)
        for phi in np.linspace(0.0, math.pi / 2, 9):
            for half in (1, 3, 5):
                seq = [0] * half + [1] * half
                rng.shuffle(seq)
                state = prepare_analytic(float(phi), params)
                for outcome in seq:
                    state = update_on_outcome(state, params, outcome)
                worst = max(worst, abs(state.alpha ** 2 - math.cos(phi) ** 2))
    if worst > 1e-10:
        raise AssertionError(f"balanced record fails to restore ({worst:.2e})")
    return f"j0 = j1 restores the prepared state, max dev {worst:.1e}"


def _check_closed_forms() -> str:
    rng = np.random.default_rng(414213)
    worst = 0.0
    for _ in range(200):
        mu = int(rng.integers(1, 31))
        params = make_params(mu)
        phi = float(rng.uniform(0.0, math.pi / 2))
        length = int(rng.integers(1, 61))
        seq = rng.integers(0, 2, size=length)
        state = prepare_analytic(phi, params)
        for outcome in seq:
            state = update_on_outcome(state, params, int(outcome))
        pr0, pr1, pax0, pax1 = closed_form_probs(phi, params, state.j0, state.j1)
        p0, p1 = outcome_probs(state, params)
        worst = max(worst,
                    abs(pr0 - state.alpha ** 2), abs(pr1 - state.beta ** 2),
                    abs(pax0 - p0), abs(pax1 - p1))
        dax0, dax1, dpsi0, dpsi1 = delta_form_probs(
            phi, params, state.j1 - state.j0)
        worst = max(worst, abs(dax0 - pax0), abs(dax1 - pax1),
                    abs(dpsi0 - pr0), abs(dpsi1 - pr1))
    if worst > 1e-9:
        raise AssertionError(f"closed forms deviate by {worst:.2e}")
    return f"200 random records vs recurrences, max dev {worst:.1e}"


def _check_martingale() -> str:
    worst = 0.0
    for mu, phi in ((1, math.pi / 6), (3, math.pi / 3)):
        params = make_params(mu)
        total = []
        expect = []
        for seq in itertools.product((0, 1), repeat=6):
            state = prepare_analytic(phi, params)
            log_prob = 0.0
            for outcome in seq:
                p0, p1 = outcome_probs(state, params)
                log_prob += math.log(p0 if outcome == 0 else p1)
                state = update_on_outcome(state, params, outcome)
            prob = math.exp(log_prob)
            total.append(prob)
            expect.append(prob * state.alpha ** 2)
        worst = max(worst, abs(math.fsum(total) - 1.0))
        worst = max(worst, abs(math.fsum(expect) - math.cos(phi) ** 2))
    if worst > 1e-10:
        raise AssertionError(f"path expectation drifts by {worst:.2e}")
    return f"exhaustive length-6 paths: sum 1, E[Pr(psi0)] conserved ({worst:.1e})"


def _check_stability() -> str:
    params = make_params(1)
    exact = stability_bound(math.atan(1.0 / 3.0), params).max_wrong_steps
    if exact != 2.0:
        raise AssertionError(f"exact integer case gave {exact!r}")
    rng = np.random.default_rng(5771)
    for _ in range(50):
        mu = int(rng.integers(1, 41))
        params = make_params(mu)
        phi = float(rng.uniform(0.02, math.pi / 4 - 0.02))
        bound = stability_bound(phi, params).max_wrong_steps
        at_bound = delta_form_probs(phi, params, bound)[0]
        if abs(at_bound - 0.5) > 1e-9:
            raise AssertionError("law does not cross 1/2 at the bound")
        below = delta_form_probs(phi, params, math.floor(bound))[0]
        above = delta_form_probs(phi, params, math.floor(bound) + 1)[0]
        if below < 0.5 - 1e-9 or above >= 0.5:
            raise AssertionError("bracketing around the bound failed")
    return "single 1/2 crossing at the bound; exact case equals 2"


def _check_gain_model() -> str:
    refs = {1: 1.0, 10: 0.74224, 50: 0.52233}
    for mu, ref in refs.items():
        model = partial_gain(0.0, make_params(mu), 100)
        if abs(model.success - ref) > 5e-4:
            raise AssertionError(
                f"mu={mu}: phi=0 success {model.success:.5f} != {ref}")
    center = partial_gain(math.pi / 4, make_params(10), 100)
    if abs(center.success - 0.5) > 1e-12:
        raise AssertionError("midpoint success is not 1/2")
    params = make_params(10)
    for phi in (0.2, 0.5, 0.7):
        d = partial_gain(phi, params, 100).disturbance
        d_mirror = partial_gain(math.pi / 2 - phi, params, 100).disturbance
        if abs(d - d_mirror) > 1e-12:
            raise AssertionError("disturbance is not symmetric about pi/4")
    scale = strength_scale(make_params(10), 0.5, math.pi / 4)
    if abs(scale.j_proj) > 1e-12:
        raise AssertionError("epsilon 0.5 at pi/4 should need zero steps")
    return "phi=0 references, midpoint 1/2, mirror symmetry"


def _check_seeding() -> str:
    a = derive_seed(42, 0, 1, 2)
    b = derive_seed(42, 0, 1, 2)
    if a != b:
        raise AssertionError("seed derivation is not deterministic")
    seen = {derive_seed(42, i, j, k)
            for i in range(4) for j in range(4) for k in range(4)}
    if len(seen) != 64:
        raise AssertionError("seed derivation collides on a tiny lattice")
    params = make_params(3)
    seeds = [derive_seed(7, 0, 0, t) for t in range(20)]
    j0_vec, pr0_vec = simulate_trials(params, 0.9, 50, seeds)
    from .harness import run_trial
    for i, seed in enumerate(seeds):
        rec = run_trial(params, 0.9, 50, seed)
        if rec.j0 != int(j0_vec[i]) or rec.final_pr_psi0 != float(pr0_vec[i]):
            raise AssertionError("vectorized trials diverge from scalar walk")
    return "derivation deterministic and collision-free; engines agree"


CHECKS: list[tuple[str, Callable[[], str]]] = [
    ("gate-algebra", _check_gate_algebra),
    ("outcome-probability-bridge", _check_outcome_probs_bridge),
    ("params-identities", _check_params_identities),
    ("engine-equivalence", _check_engine_equivalence),
    ("reversibility", _check_reversibility),
    ("closed-forms", _check_closed_forms),
    ("martingale", _check_martingale),
    ("stability-bound", _check_stability),
    ("gain-model", _check_gain_model),
    ("seeding", _check_seeding),
]


def run_all(verbose: bool = True) -> int:
    """Run every check; return the number of failures."""
    failures = 0
    for name, fn in CHECKS:
        try:
            detail = fn()
        except AssertionError as exc:
            failures += 1
            if verbose:
                print(f"FAIL {name}: {exc}")
        else:
            if verbose:
                print(f"PASS {name}: {detail}")
    return failures

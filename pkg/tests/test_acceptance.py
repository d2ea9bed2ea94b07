"""Acceptance gate: the ten release criteria, one test and one line each.

Run with ``pytest tests/test_acceptance.py -v -s`` to see the per-criterion
report lines; each test also fails loudly on its own.
"""

import itertools
import math
import time

import numpy as np

from mbqrw import (ExperimentConfig, PAULI_X, apply_probe, aux_outcome_probs,
                   closed_form_probs, delta_form_probs, derive_seed,
                   extract_analytic, gate_power, make_gate, make_params,
                   measure_aux, outcome_probs, prepare_analytic, prepare_full,
                   run_sweep, simulate_trials, stability_bound,
                   strength_scale, update_on_outcome)
from mbqrw.harness import sweep_csv_lines


def _report(num: int, name: str, ok: bool, detail: str = "") -> bool:
    status = "PASS" if ok else "FAIL"
    suffix = f" -- {detail}" if detail else ""
    print(f"[criterion {num:2d}] {status} {name}{suffix}")
    return ok


# ---------------------------------------------------------------------------

def test_criterion_01_gate_identities():
    t0 = time.perf_counter()
    worst = 0.0
    eye = np.eye(2)
    for mu in range(1, 21):
        c = 2 * mu + 1
        gate = make_gate(c)
        v = gate.matrix
        worst = max(worst, float(np.max(np.abs(v @ v.conj().T - eye))))
        worst = max(worst, float(np.max(np.abs(
            np.linalg.matrix_power(v, c) - PAULI_X))))
        acc = np.eye(2, dtype=complex)
        for d in range(c + 1):
            power = gate_power(c, d).matrix
            worst = max(worst, float(np.max(np.abs(power - acc))))
            p0, p1 = aux_outcome_probs(c, d)
            worst = max(worst, abs(p0 - abs(power[0, 0]) ** 2))
            worst = max(worst, abs(p1 - abs(power[1, 0]) ** 2))
            acc = v @ acc
    elapsed = time.perf_counter() - t0
    ok = worst <= 1e-12 and elapsed < 1.0
    assert _report(1, "gate identities, mu 1..20", ok,
                   f"max deviation {worst:.2e}, {elapsed:.2f}s")


def test_criterion_02_engine_equivalence():
    t0 = time.perf_counter()
    worst = 0.0
    angles = (0.0, math.pi / 8, math.pi / 4, 3 * math.pi / 8, math.pi / 2)
    for mu in range(1, 7):
        params = make_params(mu)
        for phi in angles:
            for seq in itertools.product((0, 1), repeat=6):
                state = prepare_analytic(phi, params)
                reg = prepare_full(phi, mu)
                for forced in seq:
                    p0_analytic, _ = outcome_probs(state, params)
                    reg = apply_probe(reg, params)
                    p0_dense = float(
                        np.sum(np.abs(reg.amplitudes[0::2]) ** 2))
                    worst = max(worst, abs(p0_dense - p0_analytic))
                    draw = 0.0 if forced == 0 else 1.0 - 1e-12
                    outcome, reg = measure_aux(reg, draw)
                    assert outcome == forced
                    state = update_on_outcome(state, params, forced)
                    a, b = extract_analytic(reg)
                    worst = max(worst, abs(a - state.alpha),
                                abs(b - state.beta))
    elapsed = time.perf_counter() - t0
    ok = worst <= 1e-10 and elapsed < 10.0
    assert _report(2, "engine equivalence, all forced length-6 paths", ok,
                   f"max deviation {worst:.2e}, {elapsed:.2f}s")


def test_criterion_03_reversibility():
    t0 = time.perf_counter()
    rng = np.random.default_rng(303)
    phis = np.linspace(0.0, math.pi / 2, 50)
    worst = 0.0

    def run_balanced(mu, phi, seq):
        params = make_params(mu)
        state = prepare_analytic(phi, params)
        for outcome in seq:
            state = update_on_outcome(state, params, outcome)
        pr0 = state.alpha * state.alpha
        return abs(pr0 - math.cos(phi) ** 2)

    # every balanced sequence up to length 6 at a spread of settings
    for half in (1, 2, 3):
        base = (0,) * half + (1,) * half
        for seq in set(itertools.permutations(base)):
            for mu in (1, 7, 20):
                for phi in phis[::7]:
                    worst = max(worst, run_balanced(mu, float(phi), seq))
    # shuffled balanced sequences of every even length up to 10,
    # across all mu up to 20 and all 50 phi values
    for mu in range(1, 21):
        for phi in phis:
            for half in (1, 2, 3, 4, 5):
                seq = [0] * half + [1] * half
                rng.shuffle(seq)
                worst = max(worst, run_balanced(mu, float(phi), seq))
    elapsed = time.perf_counter() - t0
    ok = worst <= 1e-10 and elapsed < 5.0
    assert _report(3, "balanced sequences restore the state", ok,
                   f"max residual disturbance {worst:.2e}, {elapsed:.2f}s")


def test_criterion_04_closed_form_equality():
    rng = np.random.default_rng(404)
    worst = 0.0
    for _ in range(1000):
        mu = int(rng.integers(1, 21))
        params = make_params(mu)
        phi = float(rng.uniform(0.0, math.pi / 2))
        seq = list(rng.integers(0, 2, size=int(rng.integers(1, 31))))
        state = prepare_analytic(phi, params)
        for outcome in seq:
            state = update_on_outcome(state, params, int(outcome))
        pr0, pr1, ax0, ax1 = closed_form_probs(phi, params,
                                               state.j0, state.j1)
        p0, p1 = outcome_probs(state, params)
        worst = max(worst,
                    abs(pr0 - state.alpha * state.alpha),
                    abs(pr1 - state.beta * state.beta),
                    abs(ax0 - p0), abs(ax1 - p1))
        dax0, _, dpr0, _ = delta_form_probs(phi, params,
                                            float(state.j1 - state.j0))
        worst = max(worst, abs(dpr0 - pr0), abs(dax0 - ax0))
        # permuting the outcome order must land on the same state
        shuffled = list(seq)
        rng.shuffle(shuffled)
        other = prepare_analytic(phi, params)
        for outcome in shuffled:
            other = update_on_outcome(other, params, int(outcome))
        worst = max(worst, abs(other.alpha - state.alpha),
                    abs(other.beta - state.beta))
    ok = worst <= 1e-9
    assert _report(4, "closed forms equal iterated recurrences", ok,
                   f"max deviation {worst:.2e} over 1000 random triples")


def test_criterion_05_martingale_normalization():
    worst_norm = 0.0
    worst_drift = 0.0
    for mu in (1, 3, 10):
        params = make_params(mu)
        for phi in (0.0, 0.3, math.pi / 4, 1.2, math.pi / 2):
            level = [(1.0, prepare_analytic(phi, params))]
            for _ in range(8):
                nxt = []
                for weight, state in level:
                    p0, p1 = outcome_probs(state, params)
                    nxt.append((weight * p0,
                                update_on_outcome(state, params, 0)))
                    nxt.append((weight * p1,
                                update_on_outcome(state, params, 1)))
                level = nxt
                total = math.fsum(w for w, _ in level)
                mean_pr0 = math.fsum(w * s.alpha * s.alpha for w, s in level)
                worst_norm = max(worst_norm, abs(total - 1.0))
                worst_drift = max(worst_drift,
                                  abs(mean_pr0 - math.cos(phi) ** 2))
    ok = worst_norm <= 1e-10 and worst_drift <= 1e-10
    assert _report(5, "exhaustive paths: normalization and martingale", ok,
                   f"norm off by {worst_norm:.2e}, "
                   f"drift {worst_drift:.2e}, depth 8")


def test_criterion_06_stability_bound():
    rng = np.random.default_rng(606)
    ok = True
    worst_mid = 0.0
    for _ in range(200):
        params = make_params(int(rng.integers(1, 31)))
        phi = float(rng.uniform(0.02, math.pi / 4 - 0.02))
        bound = stability_bound(phi, params).max_wrong_steps
        at = delta_form_probs(phi, params, bound)[0]
        below = delta_form_probs(phi, params, bound - 0.5)[0]
        above = delta_form_probs(phi, params, bound + 0.5)[0]
        worst_mid = max(worst_mid, abs(at - 0.5))
        ok = ok and below > 0.5 > above and abs(at - 0.5) < 1e-9
    exact = stability_bound(math.atan(1.0 / 3.0), make_params(1))
    ok = ok and exact.max_wrong_steps == 2.0
    assert _report(6, "stability bound brackets the 1/2 crossing", ok,
                   f"max |pr_ax0(bound) - 1/2| = {worst_mid:.2e}, "
                   f"exact case = {exact.max_wrong_steps}")


def test_criterion_07_pole_reference_numbers():
    t0 = time.perf_counter()
    config = ExperimentConfig(mu_list=[1, 10, 50], iterations=100,
                              phi_grid=[0.0], trials_per_point=1000,
                              master_seed=42)
    result = run_sweep(config)
    succ = {p.mu: p.empirical_success for p in result.points}
    elapsed = time.perf_counter() - t0
    ok = (succ[1] >= 0.99
          and 0.70 <= succ[10] <= 0.79
          and 0.49 <= succ[50] <= 0.56
          and elapsed < 30.0)
    assert _report(7, "phi=0 reference success rates", ok,
                   f"mu=1: {succ[1]:.3f}, mu=10: {succ[10]:.3f}, "
                   f"mu=50: {succ[50]:.3f}, {elapsed:.1f}s")


def test_criterion_08_curve_comparison_desk_grid():
    t0 = time.perf_counter()
    config = ExperimentConfig(mu_list=[1, 10, 50], iterations=100,
                              phi_grid=(0.0, 1.0, 0.01),
                              trials_per_point=1000, master_seed=42)
    result = run_sweep(config)
    compared = [p for p in result.points if p.sin2phi != 0.5]
    succ_ok = dist_ok = 0
    for p in compared:
        allowance = 3.0 * p.standard_error + 0.05
        succ_ok += abs(p.empirical_success - p.model_success) <= allowance
        dist_ok += (abs(p.empirical_disturbance - p.model_disturbance)
                    <= allowance)
    succ_frac = succ_ok / len(compared)
    dist_frac = dist_ok / len(compared)

    mean_succ = {}
    mean_dist = {}
    for mu in (1, 10, 50):
        rows = [p for p in result.points if p.mu == mu]
        mean_succ[mu] = float(np.mean([p.empirical_success for p in rows]))
        mean_dist[mu] = float(np.mean([p.empirical_disturbance
                                       for p in rows]))
    succ_order = mean_succ[1] > mean_succ[10] > mean_succ[50]
    dist_order = mean_dist[1] > mean_dist[10] > mean_dist[50]
    elapsed = time.perf_counter() - t0
    ok = (succ_frac >= 0.95 and dist_frac >= 0.95
          and succ_order and dist_order and elapsed < 300.0)
    assert _report(8, "model tracks the desk-scale grid", ok,
                   f"success within band {succ_frac:.1%}, disturbance "
                   f"{dist_frac:.1%}, success order {succ_order}, "
                   f"disturbance order {dist_order}, {elapsed:.1f}s "
                   f"({len(compared)} points, midpoint excluded)")


def test_criterion_09_strength_scaling():
    ratios = {}
    for mu in (20, 40, 80):
        a = strength_scale(make_params(mu), 0.01, 0.49 * math.pi).j_proj
        b = strength_scale(make_params(2 * mu), 0.01, 0.49 * math.pi).j_proj
        ratios[mu] = b / a
    ratios_ok = all(3.6 <= r <= 4.4 for r in ratios.values())

    params = make_params(10)
    scale = strength_scale(params, 0.05, math.pi / 3)
    steps = math.ceil(scale.j_proj)
    seeds = [derive_seed(909, t) for t in range(1000)]
    _, final_pr0 = simulate_trials(params, math.pi / 3, steps, seeds)
    median_pr1 = float(np.median(1.0 - final_pr0))
    ok = ratios_ok and median_pr1 >= 0.95
    assert _report(9, "projection cost scales as mu^2", ok,
                   f"ratios {[f'{r:.2f}' for r in ratios.values()]}, "
                   f"median pr_psi1 after {steps} steps = {median_pr1:.3f}")


def test_criterion_10_determinism(tmp_path):
    config_kwargs = dict(mu_list=[1, 10], iterations=100,
                         phi_grid=(0.0, 1.0, 0.2), trials_per_point=300,
                         master_seed=42)
    first = tmp_path / "first.csv"
    second = tmp_path / "second.csv"
    run_sweep(ExperimentConfig(output_path=first, **config_kwargs))
    run_sweep(ExperimentConfig(output_path=second, **config_kwargs))
    bytes_equal = first.read_bytes() == second.read_bytes()

    serial = run_sweep(ExperimentConfig(**config_kwargs), workers=1)
    parallel = run_sweep(ExperimentConfig(**config_kwargs), workers=2)
    parallel_equal = sweep_csv_lines(serial) == sweep_csv_lines(parallel)
    ok = bytes_equal and parallel_equal
    assert _report(10, "byte-identical CSV, parallel equals serial", ok,
                   f"rerun bytes equal: {bytes_equal}, "
                   f"parallel equals serial: {parallel_equal}")

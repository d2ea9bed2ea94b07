"""Measurement-based quantum random walk simulator.

Estimate which pole an unknown qubit cos(phi)|0> + sin(phi)|1> is closer
to by repeatedly nudging an auxiliary qubit with a fractional NOT and
measuring only the aux.  Each measurement barely disturbs the qubit; the
outcome record performs a biased random walk whose majority vote reveals
the answer, and a balanced record provably restores the prepared state.

Layers:

* ``gates``     the partial negation operator X^(1/c) and its powers
* ``states``    register preparation; two-amplitude and dense engines
* ``walk``      the measurement walk and its closed-form outcome laws
* ``analysis``  stability bound, projection strength scale, gain model
* ``harness``   reproducible Monte-Carlo sweeps and CSV emission
* ``cli``       the ``mbqrw`` command line tool
"""

from ._version import __version__
from .gates import (GatePower, PartialNegationGate, PAULI_X,
                    aux_outcome_probs, gate_power, make_gate)
from .states import (EngineDivergenceError, FullRegister, MU_MAX_FULL,
                     WalkParams, WalkState, apply_probe, extract_analytic,
                     make_params, measure_aux, prepare_analytic, prepare_full)
from .walk import (DegenerateOutcomeError, StepOutcome, WalkTrace,
                   VERDICT_CLOSER0, VERDICT_CLOSER1, closed_form_probs,
                   delta_form_probs, outcome_probs, run_walk,
                   update_on_outcome)
from .analysis import (PartialGainModel, StabilityBound, StrengthScale,
                       disturbance, partial_gain, stability_bound,
                       strength_scale)
from .seeding import RNG_FAMILY, SEED_SCHEME, derive_seed, trial_generator
from .harness import (ExperimentConfig, ModelPoint, SweepPoint, SweepResult,
                      TrialRecord, emit_model_curves, grid_points,
                      run_single_trace, run_sweep, run_trial, score_success,
                      simulate_trials)

__all__ = [
    "__version__",
    "PAULI_X", "PartialNegationGate", "GatePower",
    "make_gate", "gate_power", "aux_outcome_probs",
    "WalkParams", "WalkState", "FullRegister", "MU_MAX_FULL",
    "EngineDivergenceError", "make_params", "prepare_analytic",
    "prepare_full", "apply_probe", "measure_aux", "extract_analytic",
    "StepOutcome", "WalkTrace", "DegenerateOutcomeError",
    "VERDICT_CLOSER0", "VERDICT_CLOSER1",
    "outcome_probs", "update_on_outcome", "run_walk",
    "closed_form_probs", "delta_form_probs",
    "StabilityBound", "StrengthScale", "PartialGainModel",
    "stability_bound", "strength_scale", "partial_gain", "disturbance",
    "RNG_FAMILY", "SEED_SCHEME", "derive_seed", "trial_generator",
    "ExperimentConfig", "TrialRecord", "SweepPoint", "SweepResult",
    "ModelPoint", "grid_points", "simulate_trials", "run_trial",
    "run_sweep", "run_single_trace", "emit_model_curves", "score_success",
]

"""Deterministic per-trial seed derivation.

Every Monte-Carlo trial gets its own 64-bit seed derived from the master
seed and the trial's coordinates (mu index, grid index, trial index) with
a SplitMix64 chain.  The derivation is a pure function, so any cell can
be recomputed in isolation and the execution order never matters.

Derivation, in pseudocode anyone can port:

    state = master_seed mod 2^64
    for index in coordinates:
        state = (state + 0x9E3779B97F4A7C15) mod 2^64   # golden gamma
        state = mix64(state xor index)
    seed = state

where mix64 is the SplitMix64 finalizer (Steele, Lea & Flood 2014):

    z = (z xor (z >> 30)) * 0xBF58476D1E3E5B97 mod 2^64
    z = (z xor (z >> 27)) * 0x94D049BB133111EB mod 2^64
    z = z xor (z >> 31)

The derived seed feeds numpy's PCG64 bit generator; uniforms come from
``Generator.random()``, which yields 53-bit doubles in [0, 1), one per
walk step, in step order.
"""

from __future__ import annotations

import numpy as np

_MASK64 = (1 << 64) - 1
_GOLDEN_GAMMA = 0x9E3779B97F4A7C15

RNG_FAMILY = "pcg64"
SEED_SCHEME = "splitmix64-chain"


def mix64(z: int) -> int:
    """SplitMix64 finalizer: a 64-bit avalanche permutation."""
    z &= _MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1E3E5B97) & _MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
    return z ^ (z >> 31)


def derive_seed(master_seed: int, *coordinates: int) -> int:
    """Mix a master seed and integer coordinates into one 64-bit seed."""
    state = master_seed & _MASK64
    for index in coordinates:
        state = (state + _GOLDEN_GAMMA) & _MASK64
        state = mix64(state ^ (index & _MASK64))
    return state


def trial_generator(master_seed: int, mu_index: int, phi_index: int,
                    trial_index: int) -> np.random.Generator:
    """The RNG for one trial at (mu_index, phi_index, trial_index)."""
    seed = derive_seed(master_seed, mu_index, phi_index, trial_index)
    return np.random.Generator(np.random.PCG64(seed))

"""Fractional NOT gates.

A full NOT on a qubit is the Pauli-X matrix.  Splitting it into c equal
slices gives the partial negation operator V with V^c = X.  Writing
t = exp(i*pi/c) for the principal c-th root of -1, V and its powers are

    V^d = 1/2 * [[1 + t^d, 1 - t^d],
                 [1 - t^d, 1 + t^d]]

Applying V^d to an auxiliary qubit prepared in |0> and then measuring it
yields outcome 0 with probability cos^2(d*pi/(2c)) and outcome 1 with
probability sin^2(d*pi/(2c)).  Those two numbers drive everything else in
this package.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

PAULI_X = np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex)
PAULI_X.flags.writeable = False


def _symmetric_matrix(td: complex) -> np.ndarray:
    """Build 1/2 [[1+td, 1-td], [1-td, 1+td]] as a read-only array."""
    m = 0.5 * np.array([[1 + td, 1 - td], [1 - td, 1 + td]], dtype=complex)
    m.flags.writeable = False
    return m


@dataclass(frozen=True)
class PartialNegationGate:
    """One c-th slice of Pauli-X.

    Attributes
    ----------
    c : int
        Negation is split into c slices; c = 1 recovers X itself.
    t : complex
        Principal c-th root of -1, exp(i*pi/c).
    matrix : np.ndarray
        The 2x2 unitary, read-only.
    """

    c: int
    t: complex
    matrix: np.ndarray


@dataclass(frozen=True)
class GatePower:
    """The d-th power of a partial negation gate, in closed form."""

    c: int
    d: int
    matrix: np.ndarray


def make_gate(c: int) -> PartialNegationGate:
    """Construct V = X^(1/c) on the principal branch.

    Parameters
    ----------
    c : int
        Number of slices, c >= 1.
    """
    if not isinstance(c, (int, np.integer)) or isinstance(c, bool):
        raise TypeError(f"c must be an integer, got {type(c).__name__}")
    if c < 1:
        raise ValueError(f"c must be >= 1, got {c}")
    t = cmath.exp(1j * math.pi / c)
    return PartialNegationGate(c=int(c), t=t, matrix=_symmetric_matrix(t))


def gate_power(c: int, d: int) -> GatePower:
    """Closed-form V^d without repeated multiplication.

    t^d is evaluated as exp(i*pi*d/c) so large d loses no accuracy.
    d = 0 gives the identity, d = c gives Pauli-X.
    """
    if not isinstance(c, (int, np.integer)) or isinstance(c, bool):
        raise TypeError(f"c must be an integer, got {type(c).__name__}")
    if not isinstance(d, (int, np.integer)) or isinstance(d, bool):
        raise TypeError(f"d must be an integer, got {type(d).__name__}")
    if c < 1:
        raise ValueError(f"c must be >= 1, got {c}")
    if d < 0:
        raise ValueError(f"d must be >= 0, got {d}")
    td = cmath.exp(1j * math.pi * d / c)
    return GatePower(c=int(c), d=int(d), matrix=_symmetric_matrix(td))


def aux_outcome_probs(c: int, d: int) -> tuple[float, float]:
    """Measurement probabilities for an aux qubit hit by V^d from |0>.

    Returns (p0, p1) with p0 = cos^2(d*pi/(2c)) and p1 = sin^2(d*pi/(2c)).
    They sum to 1 by construction.
    """
    gp = gate_power(c, d)  # reuse the validation
    half_angle = gp.d * math.pi / (2 * gp.c)
    p0 = math.cos(half_angle) ** 2
    p1 = math.sin(half_angle) ** 2
    return p0, p1

"""Register preparation and the two walk engines' state types.

The register holds one unknown qubit cos(phi)|0> + sin(phi)|1>, mu dummy
qubits pinned to |1>, and one auxiliary qubit starting in |0>.  Each probe
applies the partial negation V = X^(1/c), c = 2*mu + 1, to the aux qubit
once per register qubit in |1>.  The unknown qubit's branch therefore
drives the aux through V^d0 (d0 = mu, branch |0>) or V^d1 (d1 = mu + 1,
branch |1>), giving the two branch angles

    theta0 = pi*mu/(2c) = pi/4 - eps,   theta1 = pi*(mu+1)/(2c) = pi/4 + eps,

with eps = pi/(4c).  Because theta0 + theta1 = pi/2, cos(theta1) equals
sin(theta0) and vice versa; the whole analysis leans on that.

Two representations coexist:

* ``WalkState`` tracks just the two branch amplitudes (alpha, beta) plus
  the outcome counters.  It is exact for this circuit and works at any mu.
* ``FullRegister`` is a dense statevector over all mu + 2 qubits.  It is
  deliberately naive and capped at mu <= 12; it exists to cross-check the
  two-amplitude engine, not to be fast.

Basis ordering for ``FullRegister``: the unknown qubit is the most
significant bit, the aux qubit the least significant, dummies in between.
So |0,1...1,0> sits at index ((1 << mu) - 1) << 1.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .gates import make_gate

MU_MAX_FULL = 12

# residual amplitude allowed outside the two legal basis states
_LEGALITY_TOL = 1e-10


class EngineDivergenceError(RuntimeError):
    """Dense register left the two-amplitude subspace it must live in."""


@dataclass(frozen=True)
class WalkParams:
    """Derived constants of the walk, fixed by the dummy count mu.

    Attributes
    ----------
    mu : int
        Number of dummy qubits.
    c : int
        Slices of the partial negation, 2*mu + 1.
    d0, d1 : int
        Aux gate powers on the |0> and |1> branches of the unknown qubit.
    theta0, theta1 : float
        Branch angles pi*d0/(2c) and pi*d1/(2c).
    epsilon : float
        Half-gap pi/(4c); theta0 = pi/4 - epsilon, theta1 = pi/4 + epsilon.
    """

    mu: int
    c: int
    d0: int
    d1: int
    theta0: float
    theta1: float
    epsilon: float


def make_params(mu: int) -> WalkParams:
    """Derive the walk constants for mu >= 1 dummy qubits."""
    if not isinstance(mu, (int, np.integer)) or isinstance(mu, bool):
        raise TypeError(f"mu must be an integer, got {type(mu).__name__}")
    if mu < 1:
        raise ValueError(f"mu must be >= 1, got {mu}")
    mu = int(mu)
    c = 2 * mu + 1
    d0 = mu
    d1 = mu + 1
    theta0 = math.pi * d0 / (2 * c)
    theta1 = math.pi * d1 / (2 * c)
    epsilon = math.pi / (4 * c)
    return WalkParams(mu=mu, c=c, d0=d0, d1=d1,
                      theta0=theta0, theta1=theta1, epsilon=epsilon)


@dataclass
class WalkState:
    """Two-amplitude walk state.

    alpha and beta are the real, non-negative branch amplitudes of the
    unknown qubit conditioned on the outcome record so far; j0 and j1
    count aux outcomes 0 and 1.
    """

    alpha: float
    beta: float
    j0: int
    j1: int
    phi: float


def _check_phi(phi: float) -> float:
    phi = float(phi)
    if not math.isfinite(phi):
        raise ValueError(f"phi must be finite, got {phi}")
    if phi < 0.0 or phi > math.pi / 2:
        raise ValueError(f"phi must lie in [0, pi/2], got {phi}")
    return phi


def prepare_analytic(phi: float, params: WalkParams) -> WalkState:
    """Fresh two-amplitude state (cos(phi), sin(phi)) with zeroed counters."""
    phi = _check_phi(phi)
    return WalkState(alpha=math.cos(phi), beta=math.sin(phi),
                     j0=0, j1=0, phi=phi)


@dataclass
class FullRegister:
    """Dense statevector over unknown + mu dummies + aux.

    ``amplitudes`` has length 2**(mu + 2), complex, unit norm.  Bit layout
    is documented in the module docstring.
    """

    mu: int
    amplitudes: np.ndarray

    @property
    def num_qubits(self) -> int:
        return self.mu + 2


def _legal_indices(mu: int) -> tuple[int, int]:
    """Indices of |0,1..1,0> and |1,1..1,0> in the dense vector."""
    idx0 = ((1 << mu) - 1) << 1
    idx1 = idx0 | (1 << (mu + 1))
    return idx0, idx1


def prepare_full(phi: float, mu: int) -> FullRegister:
    """Dense register cos(phi)|0,1..1,0> + sin(phi)|1,1..1,0>.

    Capped at mu <= MU_MAX_FULL; this engine is an oracle, not a workhorse.
    """
    phi = _check_phi(phi)
    if not isinstance(mu, (int, np.integer)) or isinstance(mu, bool):
        raise TypeError(f"mu must be an integer, got {type(mu).__name__}")
    if mu < 1:
        raise ValueError(f"mu must be >= 1, got {mu}")
    if mu > MU_MAX_FULL:
        raise ValueError(
            f"dense register supports mu <= {MU_MAX_FULL}, got {mu}; "
            "use the two-amplitude engine for larger mu")
    mu = int(mu)
    amps = np.zeros(1 << (mu + 2), dtype=complex)
    idx0, idx1 = _legal_indices(mu)
    amps[idx0] = math.cos(phi)
    amps[idx1] = math.sin(phi)
    return FullRegister(mu=mu, amplitudes=amps)


def apply_probe(reg: FullRegister, params: WalkParams) -> FullRegister:
    """One probe: controlled-V onto the aux from every other qubit.

    Register qubits in |1> each advance the aux by one slice of X, so a
    basis state with d ones drives the aux through V^d.  Returns a new
    register; the input is not modified.
    """
    if params.mu != reg.mu:
        raise ValueError(
            f"params built for mu={params.mu} but register has mu={reg.mu}")
    v = make_gate(params.c).matrix
    amps = reg.amplitudes.copy()
    n = reg.num_qubits
    idx = np.arange(amps.size)
    for control_bit in range(1, n):  # every qubit except the aux at bit 0
        sel = ((idx >> control_bit) & 1 == 1) & (idx & 1 == 0)
        i0 = idx[sel]
        i1 = i0 + 1
        a0 = amps[i0].copy()
        a1 = amps[i1].copy()
        amps[i0] = v[0, 0] * a0 + v[0, 1] * a1
        amps[i1] = v[1, 0] * a0 + v[1, 1] * a1
    return FullRegister(mu=reg.mu, amplitudes=amps)


def measure_aux(reg: FullRegister, random_draw: float) -> tuple[int, FullRegister]:
    """Measure the aux qubit, collapse, renormalize, and reset it to |0>.

    The outcome is 1 iff ``random_draw`` >= Pr(aux = 0); passing a draw in
    [0, 1) therefore realizes the Born rule, and passing 0.0 or a value
    close to 1 forces outcome 0 or 1.  The reset is the classical bit flip
    a measured aux admits, so amplitudes on aux = 1 move to aux = 0.
    """
    amps = reg.amplitudes
    even = amps[0::2]
    odd = amps[1::2]
    p0 = float(np.sum(even.real * even.real + even.imag * even.imag))
    outcome = 1 if random_draw >= p0 else 0
    branch = odd if outcome == 1 else even
    weight = float(np.sum(branch.real * branch.real + branch.imag * branch.imag))
    if weight <= 0.0:
        # unreachable under the draw rule: a zero-probability branch can
        # never be selected because p0 = 1 keeps every draw below it and
        # p0 = 0 keeps every draw at or above it
        raise RuntimeError("selected a zero-probability measurement branch")
    new = np.zeros_like(amps)
    new[0::2] = branch / math.sqrt(weight)
    return outcome, FullRegister(mu=reg.mu, amplitudes=new)


def extract_analytic(reg: FullRegister) -> tuple[float, float]:
    """Branch amplitude moduli (|alpha|, |beta|) from a dense register.

    The register must still live on the two legal basis states (dummies
    all |1>, aux |0>); anything else beyond 1e-10 raises
    EngineDivergenceError because it means the engines no longer agree on
    what state they are simulating.
    """
    idx0, idx1 = _legal_indices(reg.mu)
    amps = reg.amplitudes
    a = abs(amps[idx0])
    b = abs(amps[idx1])
    mask = np.ones(amps.size, dtype=bool)
    mask[idx0] = False
    mask[idx1] = False
    residual = float(np.max(np.abs(amps[mask]))) if amps.size > 2 else 0.0
    if residual > _LEGALITY_TOL:
        raise EngineDivergenceError(
            f"amplitude {residual:.3e} outside the legal subspace "
            "(dummies |1>, aux |0>)")
    return float(a), float(b)

"""Closed-form results for the five-amplitude standard form of three qubits."""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .emb import MeasureResult, emb_tripartite_best
from .measures import binary_entropy, bipartite_entanglement
from .optimize import OptimizerConfig
from .state import Partition, StateTensor, standard_form_state

SQRT5 = math.sqrt(5.0)
K_MIN = 0.5 * (1.0 - SQRT5)
K_MAX = 0.5 * (1.0 + SQRT5)

CLASS_TOL = 1e-10
COMMUTATOR_TOL = 1e-10
SANDWICH_EXACT_TOL = 1e-4


@dataclass(frozen=True)
class StandardFormParams:
    """Amplitudes q0..q4 >= 0 with sum of squares 1 and phase gamma on |111>."""

    q0: float
    q1: float
    q2: float
    q3: float
    q4: float
    gamma: float = 0.0

    def __post_init__(self):
        q = self.q_values
        if min(q) < -1e-12:
            raise ValueError("standard-form amplitudes must be nonnegative")
        total = sum(x * x for x in q)
        if abs(total - 1.0) > 1e-10:
            raise ValueError(f"q amplitudes have squared sum {total}, expected 1")
        if not -math.pi / 2 - 1e-12 <= self.gamma <= math.pi / 2 + 1e-12:
            raise ValueError("gamma must lie in [-pi/2, pi/2]")

    @property
    def q_values(self) -> tuple[float, float, float, float, float]:
        return (self.q0, self.q1, self.q2, self.q3, self.q4)

    @classmethod
    def ghz_w(cls, alpha: float) -> "StandardFormParams":
        """Standard-form parameters of cos(a)GHZ + sin(a)W' for a in [0, pi/2]."""
        sa = math.sin(alpha)
        if sa < -1e-12:
            raise ValueError("standard-form amplitudes require sin(alpha) >= 0")
        ca = math.sqrt(max(0.0, 1.0 - sa * sa))
        g = ca / math.sqrt(2.0)
        w = sa / math.sqrt(3.0)
        return cls(q0=g, q1=w, q2=w, q3=w, q4=g, gamma=0.0)

    def as_state(self) -> StateTensor:
        return standard_form_state(self)

    def branch_generators(self) -> tuple[np.ndarray, np.ndarray]:
        """First-party slices A0 = diag(q0, q1), A1 = [[0, q2], [q3, q4 e^ig]]."""
        a0 = np.array([[self.q0, 0.0], [0.0, self.q1]], dtype=complex)
        a1 = np.array(
            [[0.0, self.q2], [self.q3, self.q4 * cmath.exp(1j * self.gamma)]],
            dtype=complex,
        )
        return a0, a1


def residual_concurrences(
    p: StandardFormParams, theta: float, phi: float
) -> tuple[float, float | None, float, float | None]:
    """Branch probabilities and residual concurrences for a first-party basis.

    Returns (p0, C0, p1, C1); a concurrence is None when its branch
    probability is below 1e-14.
    """
    st, ct = math.sin(theta), math.cos(theta)
    head = (p.q0**2 + p.q1**2)
    tail = (p.q2**2 + p.q3**2 + p.q4**2)
    cross = 2.0 * p.q1 * p.q4 * st * ct * math.cos(p.gamma + phi)
    p0 = head * ct * ct + tail * st * st + cross
    p1 = head * st * st + tail * ct * ct - cross

    phase = cmath.exp(1j * (p.gamma + phi))
    twist = cmath.exp(2j * phi)
    det0 = p.q0 * p.q1 * ct * ct + p.q0 * p.q4 * st * ct * phase - p.q2 * p.q3 * st * st * twist
    det1 = p.q0 * p.q1 * st * st - p.q0 * p.q4 * st * ct * phase - p.q2 * p.q3 * ct * ct * twist

    c0 = 2.0 * abs(det0) / p0 if p0 > 1e-14 else None
    c1 = 2.0 * abs(det1) / p1 if p1 > 1e-14 else None
    return p0, c0, p1, c1


@dataclass(frozen=True)
class OmegaBranchSpectrum:
    """Branch eigenvalues of the symmetric five-term state at a given basis."""

    K: float
    lambda0_plus: float
    lambda0_minus: float
    lambda1_plus: float
    lambda1_minus: float

    @property
    def values(self) -> np.ndarray:
        return np.array(
            [
                self.lambda0_plus,
                self.lambda0_minus,
                self.lambda1_plus,
                self.lambda1_minus,
            ]
        )


def omega_eigenvalues(theta: float, phi: float) -> OmegaBranchSpectrum:
    """Closed-form branch spectrum: K = sin^2(t) + sin(2t) cos(p).

    The first branch contributes (2 + K +- sqrt(5) K)/10 and the second
    (3 - K -+ sqrt(5)(1 - K))/10.  The +-/-+ labels are paired so that the
    K-independent sums hold: lambda0_plus + lambda1_minus = (5 + sqrt5)/10
    and lambda0_minus + lambda1_plus = (5 - sqrt5)/10, which is why the
    summed branch entropy is extremized at the extreme values of K.
    """
    k = math.sin(theta) ** 2 + math.sin(2.0 * theta) * math.cos(phi)
    return OmegaBranchSpectrum(
        K=k,
        lambda0_plus=(2.0 + k + SQRT5 * k) / 10.0,
        lambda0_minus=(2.0 + k - SQRT5 * k) / 10.0,
        lambda1_plus=(3.0 - k - SQRT5 * (1.0 - k)) / 10.0,
        lambda1_minus=(3.0 - k + SQRT5 * (1.0 - k)) / 10.0,
    )


def _max_commutator_norm(p: StandardFormParams, samples: int = 8) -> float:
    a0, a1 = p.branch_generators()
    total = a0 @ a0.conj().T + a1 @ a1.conj().T
    worst = 0.0
    for theta in np.linspace(0.0, math.pi / 2.0, samples):
        for phi in np.linspace(0.0, 2.0 * math.pi, samples, endpoint=False):
            c0 = math.cos(theta)
            c1 = math.sin(theta) * cmath.exp(1j * phi)
            b0 = c0 * a0 + c1 * a1
            m = b0 @ b0.conj().T
            worst = max(worst, float(np.max(np.abs(m @ total - total @ m))))
    return worst


def commutator_condition(
    p: StandardFormParams, tol: float = CLASS_TOL
) -> tuple[bool, str]:
    """Classify whether branch densities commute for every first-party basis.

    Returns (holds_for_all_measurements, class) with class one of
    "Omega1-type" (q0 = q1, q2 = q3, gamma = 0), "Omega2-type" (q2 = q3 = 0)
    or "none".  A non-none class is cross-checked numerically on sampled
    bases.  Pass a looser tolerance (e.g. 1e-6) to report near-misses for
    inexact experimental parameters.
    """
    label = "none"
    if abs(p.q0 - p.q1) <= tol and abs(p.q2 - p.q3) <= tol and abs(p.gamma) <= tol:
        label = "Omega1-type"
    elif abs(p.q2) <= tol and abs(p.q3) <= tol:
        label = "Omega2-type"
    if label == "none":
        return False, label
    worst = _max_commutator_norm(p)
    if worst >= max(COMMUTATOR_TOL, 10.0 * tol):
        raise RuntimeError(
            f"classified {label} but sampled commutator norm is {worst:.3e}"
        )
    return True, label


def omega1_emb(q0: float, q2: float, q4: float) -> tuple[float, float]:
    """Quoted closed form H2((1 + sqrt(1 - C^2)) / 2) for the q0=q1, q2=q3 family.

    Returns (value, C^2) with C^2 = 4 q0^2 [2 (1 - 2 q0^2) - q4^2].  Note the
    closed form matches the adaptive minimum only on the q0 = q2 sub-family;
    it always equals the smallest one-qubit-cut entanglement.
    """
    total = 2.0 * q0 * q0 + 2.0 * q2 * q2 + q4 * q4
    if abs(total - 1.0) > 1e-10:
        raise ValueError(f"2 q0^2 + 2 q2^2 + q4^2 = {total}, expected 1")
    c_squared = 4.0 * q0 * q0 * (2.0 * (1.0 - 2.0 * q0 * q0) - q4 * q4)
    if not -1e-10 <= c_squared <= 1.0 + 1e-10:
        raise ValueError(f"C^2 = {c_squared} outside [0, 1]")
    c_squared = min(max(c_squared, 0.0), 1.0)
    value = binary_entropy(0.5 * (1.0 + math.sqrt(1.0 - c_squared)))
    return value, c_squared


@dataclass(frozen=True)
class SandwichBounds:
    """Two-sided bracket on the relative entropy of entanglement."""

    lower: float
    upper: float
    exact: float | None
    emb_result: MeasureResult


def relative_entropy_sandwich(
    s: StateTensor, cfg: OptimizerConfig | None = None
) -> SandwichBounds:
    """Bracket the relative entropy of entanglement of a three-qubit state.

    Lower bound: the largest bipartition entanglement entropy (the bipartite
    relative entropy of a pure state is the cut entropy).  Upper bound: the
    adaptive measurement minimum.  When the bracket closes within 1e-4 the
    common value is reported as exact.
    """
    if s.dims != (2, 2, 2):
        raise ValueError("relative_entropy_sandwich requires three qubits")
    lower = max(
        bipartite_entanglement(s, Partition.bipartition((m,), 3)) for m in range(3)
    )
    emb_result = emb_tripartite_best(s, cfg)
    upper = emb_result.value
    exact = lower if upper - lower < SANDWICH_EXACT_TOL else None
    return SandwichBounds(lower=lower, upper=upper, exact=exact, emb_result=emb_result)

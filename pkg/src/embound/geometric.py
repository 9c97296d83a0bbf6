"""Geometric measure of entanglement and the GHZ-W' tangle."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .emb import MeasureResult
from .optimize import OptimizerConfig, minimize_periodic
from .state import StateTensor, permute_parties

SYMMETRY_TOL = 1e-8
SWEEP_LIMIT = 500
SWEEP_GAIN_TOL = 1e-12

GENERAL_CFG = OptimizerConfig(restart_count=32)


@dataclass(frozen=True)
class ProductAnsatz:
    """One unit vector per party, the candidate closest product state."""

    vectors: tuple[np.ndarray, ...]

    def __post_init__(self):
        vecs = []
        for v in self.vectors:
            v = np.asarray(v, dtype=complex).ravel()
            if abs(np.linalg.norm(v) - 1.0) > 1e-12:
                raise ValueError("ansatz vectors must be unit norm")
            v = v.copy()
            v.flags.writeable = False
            vecs.append(v)
        object.__setattr__(self, "vectors", tuple(vecs))

    def fidelity(self, s: StateTensor) -> float:
        overlap = s.tensor
        for v in self.vectors:
            overlap = np.tensordot(v.conj(), overlap, axes=(0, 0))
        return float(abs(overlap) ** 2)


def _is_permutation_symmetric(s: StateTensor, tol: float) -> bool:
    n = s.n_parties
    for i in range(n - 1):
        perm = list(range(n))
        perm[i], perm[i + 1] = perm[i + 1], perm[i]
        swapped = permute_parties(s, perm)
        if np.max(np.abs(swapped.amplitudes - s.amplitudes)) > tol:
            return False
    return True


def geometric_measure_symmetric(
    s: StateTensor, cfg: OptimizerConfig | None = None
) -> MeasureResult:
    """-log2 of the best overlap with |phi>^x3 for a symmetric 3-qubit state.

    The symmetric-optimum property lets the product ansatz collapse to a
    single qubit, so only two angles are searched.
    """
    if s.dims != (2, 2, 2):
        raise ValueError("symmetric geometric measure requires three qubits")
    if not _is_permutation_symmetric(s, SYMMETRY_TOL):
        raise ValueError(
            "state is not permutation-symmetric; use geometric_measure_general"
        )
    cfg = cfg or OptimizerConfig()
    conj_amp = s.tensor.conj()

    def objective(angles):
        angles = np.atleast_2d(angles)
        kets = np.empty((angles.shape[0], 2), dtype=complex)
        kets[:, 0] = np.cos(angles[:, 0])
        kets[:, 1] = np.sin(angles[:, 0]) * np.exp(1j * angles[:, 1])
        overlap = np.einsum("ijk,mi,mj,mk->m", conj_amp, kets, kets, kets)
        fidelity = np.clip(np.abs(overlap) ** 2, 1e-300, None)
        return -np.log2(fidelity)

    value, angles, diag = minimize_periodic(objective, (math.pi, 2.0 * math.pi), cfg)
    return MeasureResult(value=max(value, 0.0), argmin=angles, diagnostics=diag)


def _alternating_ascent(s: StateTensor, start, max_sweeps: int):
    """Cyclic closest-product ascent; returns (fidelity, vectors, history)."""
    tensor = s.tensor
    n = s.n_parties
    vectors = [v.copy() for v in start]
    history = []
    fidelity = 0.0
    for _ in range(max_sweeps):
        for j in range(n):
            partial = tensor
            # contract every party except j, in descending axis order
            for k in range(n - 1, -1, -1):
                if k == j:
                    continue
                partial = np.tensordot(partial, vectors[k].conj(), axes=(k, 0))
            norm = np.linalg.norm(partial)
            if norm > 0.0:
                vectors[j] = partial / norm
            fidelity = float(norm * norm)
        history.append(fidelity)
        if len(history) > 1 and history[-1] - history[-2] < SWEEP_GAIN_TOL:
            break
    return fidelity, vectors, history


def geometric_measure_general(
    s: StateTensor, cfg: OptimizerConfig | None = None
) -> MeasureResult:
    """Geometric measure by multi-start alternating fidelity ascent."""
    cfg = cfg or GENERAL_CFG
    rng = np.random.default_rng(cfg.seed)
    best_f = -1.0
    best_vectors = None
    best_history = None
    for _ in range(cfg.restart_count):
        start = []
        for d in s.dims:
            z = rng.standard_normal((d, 2))
            v = z[:, 0] + 1j * z[:, 1]
            start.append(v / np.linalg.norm(v))
        fidelity, vectors, history = _alternating_ascent(s, start, SWEEP_LIMIT)
        if fidelity > best_f:
            best_f, best_vectors, best_history = fidelity, vectors, history
    value = max(-math.log2(max(best_f, 1e-300)), 0.0)
    converged = len(best_history) < SWEEP_LIMIT
    return MeasureResult(
        value=value,
        extras={
            "ansatz": ProductAnsatz(tuple(best_vectors)),
            "fidelity": best_f,
            "fidelity_history": best_history,
            "converged": converged,
        },
    )


def tangle_ghz_w(alpha: float) -> float:
    """Tangle |cos^4 a + (8/9) sqrt(6) sin^3 a cos a| of cos(a)GHZ + sin(a)W'."""
    if not -math.pi / 2 - 1e-12 <= alpha <= math.pi / 2 + 1e-12:
        raise ValueError("alpha must lie in [-pi/2, pi/2]")
    sa = math.sin(alpha)
    ca = math.sqrt(max(0.0, 1.0 - sa * sa))
    return abs(ca**4 + (8.0 / 9.0) * math.sqrt(6.0) * sa**3 * ca)

"""Entropies, Schmidt decomposition and pure-state concurrences.

All logarithms are base 2; every returned quantity is in bits.  Eigenvalues
and squared singular values below 1e-12 are clamped to zero before entropy
evaluation so roundoff never produces log of a negative number.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .state import Partition, StateTensor, reduced_density

EIG_CLAMP = 1e-12


def entropy_bits(values) -> float:
    """-sum(v log2 v) with the 0 log 0 = 0 convention; no sum-to-1 check."""
    v = np.asarray(values, dtype=float)
    v = np.where(v < EIG_CLAMP, 0.0, v)
    nz = v[v > 0.0]
    if nz.size == 0:
        return 0.0
    return float(-(nz * np.log2(nz)).sum())


def binary_entropy(x: float) -> float:
    """Binary entropy H2(x) in bits."""
    if not -1e-12 <= x <= 1.0 + 1e-12:
        raise ValueError(f"binary_entropy argument {x} outside [0, 1]")
    x = min(max(x, 0.0), 1.0)
    return entropy_bits([x, 1.0 - x])


def probability_vector(p) -> np.ndarray:
    """Validate and clamp a probability vector (sum 1 within 1e-10)."""
    p = np.asarray(p, dtype=float)
    if p.ndim != 1:
        raise ValueError("probability vector must be one-dimensional")
    if np.any(p < -1e-12):
        raise ValueError("negative probability entry")
    p = np.clip(p, 0.0, None)
    if abs(p.sum() - 1.0) > 1e-10:
        raise ValueError(f"probabilities sum to {p.sum()}, not 1")
    return p


def shannon_entropy(p) -> float:
    """Shannon entropy in bits of a probability vector."""
    return entropy_bits(probability_vector(p))


@dataclass(frozen=True)
class SchmidtSpectrum:
    """Schmidt values (nonincreasing, summing to 1) and the paired bases."""

    values: np.ndarray
    left_basis: np.ndarray
    right_basis: np.ndarray

    @property
    def rank(self) -> int:
        return int(np.sum(self.values > EIG_CLAMP))

    def reconstruct(self) -> np.ndarray:
        """Amplitude matrix sum_k sqrt(l_k) |left_k><right_k^*|."""
        root = np.sqrt(np.clip(self.values, 0.0, None))
        return (self.left_basis * root) @ self.right_basis.T


def _cut_matrix(s: StateTensor, cut: Partition) -> np.ndarray:
    cut.validate(s.n_parties)
    if len(cut.blocks) != 2:
        raise ValueError("cut must have exactly two blocks")
    left, right = cut.blocks
    d_left = math.prod(s.dims[i] for i in left)
    return s.tensor.transpose(left + right).reshape(d_left, -1)


def schmidt_decompose(s: StateTensor, cut: Partition) -> SchmidtSpectrum:
    """Schmidt decomposition across a bipartite cut via SVD."""
    m = _cut_matrix(s, cut)
    u, sv, vh = np.linalg.svd(m, full_matrices=False)
    values = np.where(sv * sv < EIG_CLAMP, 0.0, sv * sv)
    return SchmidtSpectrum(values=values, left_basis=u, right_basis=vh.T)


def bipartite_entanglement(s: StateTensor, cut: Partition) -> float:
    """Entanglement entropy across a cut: Shannon entropy of Schmidt values."""
    return entropy_bits(schmidt_decompose(s, cut).values)


def projective_outcome_entropy(s: StateTensor, block, basis: np.ndarray) -> float:
    """Entropy of measuring a party block jointly in the given basis.

    ``basis`` is a unitary whose columns are the measured kets of the block
    (block indices ascending, row-major).
    """
    n = s.n_parties
    cut = Partition.bipartition(block, n)
    m = _cut_matrix(s, cut)
    basis = np.asarray(basis, dtype=complex)
    probs = np.sum(np.abs(basis.conj().T @ m) ** 2, axis=1)
    return entropy_bits(probs)


def pure_concurrence_one_vs_rest(s: StateTensor, party: int) -> float:
    """Concurrence of one qubit against the rest: 2 sqrt|det rho_party|."""
    if s.dims[party] != 2:
        raise ValueError("concurrence requires a qubit party")
    rho = reduced_density(s, (party,))
    c = 2.0 * math.sqrt(abs(np.linalg.det(rho)))
    return min(max(c, 0.0), 1.0)


def bipartite_lower_bound(s: StateTensor) -> float:
    """min_m H2((1 + sqrt(1 - C_m^2)) / 2) over the three one-qubit cuts."""
    if s.dims != (2, 2, 2):
        raise ValueError("bipartite lower bound is defined for three qubits")
    best = math.inf
    for m in range(3):
        c = pure_concurrence_one_vs_rest(s, m)
        x = 0.5 * (1.0 + math.sqrt(max(0.0, 1.0 - c * c)))
        best = min(best, binary_entropy(x))
    return best

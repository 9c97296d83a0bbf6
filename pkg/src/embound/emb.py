"""Minimal measurement entropy over adaptive hierarchies and its relatives.

For three qubits the adaptive minimum reduces to a two-angle search over the
first party's basis: each outcome branch leaves a bipartite pure state whose
optimal continuation is the closed-form entanglement entropy.  The objective
is the summed von Neumann entropy of the two unnormalized branch matrices
B_i B_i^dagger.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import minimize as _nelder_mead

from .measures import bipartite_entanglement
from .optimize import Diagnostics, OptimizerConfig, minimize_periodic, maximize_periodic
from .state import (
    MeasurementBasis,
    OutcomeTree,
    Partition,
    StateTensor,
    ZERO_PROB,
    coarse_grain,
    project_party,
    reduced_density,
)

TRIPARTITE_PERIODS = (math.pi / 2.0, 2.0 * math.pi)
HMIN_PERIODS = (math.pi / 2.0, 2.0 * math.pi, math.pi / 2.0, 2.0 * math.pi)

DEFAULT_CFG = OptimizerConfig()
HMIN_CFG = OptimizerConfig(grid_resolution=16, restart_count=10)


@dataclass(frozen=True)
class BranchMatrices:
    """Unnormalized residual amplitude matrices after the first measurement."""

    b0: np.ndarray
    b1: np.ndarray

    @classmethod
    def build(cls, a_first: np.ndarray, a0: complex, a1: complex) -> "BranchMatrices":
        m0, m1 = a_first[0], a_first[1]
        return cls(
            b0=a0 * m0 + a1 * m1,
            b1=-np.conj(a1) * m0 + np.conj(a0) * m1,
        )

    def total(self) -> np.ndarray:
        """B0 B0+ + B1 B1+; equals the unmeasured-pair reduced density."""
        return self.b0 @ self.b0.conj().T + self.b1 @ self.b1.conj().T


@dataclass
class MeasureResult:
    """A computed entanglement value plus the optimizing parameters."""

    value: float
    argmin: np.ndarray | None = None
    outcome_tree: OutcomeTree | None = None
    diagnostics: Diagnostics | None = None
    extras: dict = field(default_factory=dict)

    @property
    def converged(self) -> bool:
        return self.diagnostics.converged if self.diagnostics else True


def _qubit_coefficient_rows(theta, phi):
    """Outcome coefficient rows for each (theta, phi); shape (m, 2, 2)."""
    theta = np.asarray(theta, dtype=float)
    phi = np.asarray(phi, dtype=float)
    a0 = np.cos(theta).astype(complex)
    a1 = np.sin(theta) * np.exp(1j * phi)
    rows = np.empty(theta.shape + (2, 2), dtype=complex)
    rows[..., 0, 0] = a0
    rows[..., 0, 1] = a1
    rows[..., 1, 0] = -np.conj(a1)
    rows[..., 1, 1] = np.conj(a0)
    return rows


def _hermitian2_eigvals(m):
    """Eigenvalues of stacked 2x2 Hermitian matrices, closed form."""
    tr = np.real(m[..., 0, 0] + m[..., 1, 1])
    det = np.real(
        m[..., 0, 0] * m[..., 1, 1] - m[..., 0, 1] * m[..., 1, 0]
    )
    disc = np.sqrt(np.clip(tr * tr - 4.0 * det, 0.0, None))
    return 0.5 * (tr - disc), 0.5 * (tr + disc)


def _entropy_of(*eigs):
    out = 0.0
    for lam in eigs:
        lam = np.where(lam < 1e-12, 1.0, lam)  # log(1) = 0 stands in for 0 log 0
        out = out - lam * np.log2(lam)
    return out


def _branch_objective(a_first):
    """Summed branch entropies S(B0 B0+) + S(B1 B1+), vectorized over rows."""
    m0, m1 = a_first[0], a_first[1]

    def objective(angles):
        angles = np.atleast_2d(angles)
        rows = _qubit_coefficient_rows(angles[:, 0], angles[:, 1])
        a0 = rows[:, 0, 0][:, None, None]
        a1 = rows[:, 0, 1][:, None, None]
        b0 = a0 * m0 + a1 * m1
        b1 = -np.conj(a1) * m0 + np.conj(a0) * m1
        lo0, hi0 = _hermitian2_eigvals(b0 @ np.conj(np.swapaxes(b0, -1, -2)))
        lo1, hi1 = _hermitian2_eigvals(b1 @ np.conj(np.swapaxes(b1, -1, -2)))
        return _entropy_of(lo0, hi0, lo1, hi1)

    return objective


def branch_matrices(s: StateTensor, first_party: int, theta: float, phi: float) -> BranchMatrices:
    """Branch matrices of a three-qubit state for a first-party qubit basis."""
    if s.dims != (2, 2, 2):
        raise ValueError("branch matrices are defined for three qubits")
    a_first = np.moveaxis(s.tensor, first_party, 0)
    a0 = complex(math.cos(theta))
    a1 = math.sin(theta) * np.exp(1j * phi)
    return BranchMatrices.build(a_first, a0, a1)


def _perp_qubit(v: np.ndarray) -> np.ndarray:
    return np.array([-np.conj(v[1]), np.conj(v[0])], dtype=complex)


def _tripartite_outcome_tree(
    s: StateTensor, first_party: int, theta: float, phi: float
) -> OutcomeTree:
    rest = tuple(i for i in range(3) if i != first_party)
    order = (first_party,) + rest
    root = MeasurementBasis.qubit(theta, phi)
    bases = {(): root}
    leaves: dict[tuple[int, int, int], float] = {}
    identity = MeasurementBasis.from_unitary(np.eye(2))
    for i in range(2):
        p_i, residual = project_party(s, first_party, root.vectors[:, i])
        if residual is None:
            bases[(i,)] = identity
            for j in range(2):
                bases[(i, j)] = identity
                leaves[(i, j, 0)] = 0.0
                leaves[(i, j, 1)] = 0.0
            continue
        rho = reduced_density(residual, (0,))
        evals, evecs = np.linalg.eigh(rho)
        evecs = evecs[:, ::-1]  # largest eigenvalue first
        bases[(i,)] = MeasurementBasis.from_unitary(evecs)
        for j in range(2):
            p_j, chi = project_party(residual, 0, evecs[:, j])
            if chi is None:
                bases[(i, j)] = identity
                leaves[(i, j, 0)] = 0.0
                leaves[(i, j, 1)] = 0.0
                continue
            vec = chi.amplitudes
            bases[(i, j)] = MeasurementBasis.from_unitary(
                np.column_stack([vec, _perp_qubit(vec)])
            )
            leaves[(i, j, 0)] = p_i * p_j
            leaves[(i, j, 1)] = 0.0
    return OutcomeTree(party_order=order, bases=bases, leaf_probabilities=leaves)


def emb_tripartite_qubit(
    s: StateTensor, first_party: int = 0, cfg: OptimizerConfig | None = None
) -> MeasureResult:
    """Adaptive-measurement minimal entropy with a fixed first party.

    Minimizes S(B0 B0+) + S(B1 B1+) over the first party's basis angles; each
    branch's continuation is the closed-form bipartite entanglement.
    """
    if s.dims != (2, 2, 2):
        raise ValueError("emb_tripartite_qubit requires a three-qubit state")
    if first_party not in (0, 1, 2):
        raise ValueError("first_party must be 0, 1 or 2")
    cfg = cfg or DEFAULT_CFG
    a_first = np.moveaxis(s.tensor, first_party, 0)
    value, angles, diag = minimize_periodic(_branch_objective(a_first), TRIPARTITE_PERIODS, cfg)
    value = max(value, 0.0)
    tree = _tripartite_outcome_tree(s, first_party, angles[0], angles[1])
    return MeasureResult(
        value=value,
        argmin=angles,
        outcome_tree=tree,
        diagnostics=diag,
        extras={"first_party": first_party},
    )


def emb_tripartite_best(s: StateTensor, cfg: OptimizerConfig | None = None) -> MeasureResult:
    """Minimum of emb_tripartite_qubit over the three first-party choices."""
    results = [emb_tripartite_qubit(s, f, cfg) for f in range(3)]
    return min(results, key=lambda r: r.value)


# --- general adaptive hierarchy -------------------------------------------


def _unitary_from_params(x: np.ndarray, dim: int) -> np.ndarray:
    """Unitary exp(iH) from dim^2 real parameters filling a Hermitian H."""
    h = np.zeros((dim, dim), dtype=complex)
    idx = 0
    for i in range(dim):
        h[i, i] = x[idx]
        idx += 1
    for i in range(dim):
        for j in range(i + 1, dim):
            h[i, j] = x[idx] + 1j * x[idx + 1]
            h[j, i] = x[idx] - 1j * x[idx + 1]
            idx += 2
    evals, evecs = np.linalg.eigh(h)
    return (evecs * np.exp(1j * evals)) @ evecs.conj().T


def _hierarchy_cost(s: StateTensor, order: tuple[int, ...], cfg: OptimizerConfig) -> float:
    """Cost of the best adaptive hierarchy for a fixed party order."""
    n = s.n_parties
    if n == 2:
        return bipartite_entanglement(s, Partition.finest(2))
    first = order[0]
    rest = tuple(i - (1 if i > first else 0) for i in order[1:])
    dim = s.dims[first]

    def branch_cost(basis_columns: np.ndarray) -> float:
        total = 0.0
        for k in range(basis_columns.shape[1]):
            p, residual = project_party(s, first, basis_columns[:, k])
            if residual is None:
                continue
            total += -p * math.log2(p) + p * _hierarchy_cost(residual, rest, cfg)
        return total

    if dim == 2:

        def objective(angles):
            angles = np.atleast_2d(angles)
            out = np.empty(angles.shape[0])
            for i, (th, ph) in enumerate(angles):
                out[i] = branch_cost(MeasurementBasis.qubit(th, ph).vectors)
            return out

        value, _, _ = minimize_periodic(objective, TRIPARTITE_PERIODS, cfg)
        return max(value, 0.0)

    # non-qubit first party: multi-start simplex over a unitary parametrization
    rng = np.random.default_rng(cfg.seed)
    k = dim * dim
    best = branch_cost(np.eye(dim, dtype=complex))
    for _ in range(cfg.restart_count):
        x0 = rng.uniform(-math.pi, math.pi, size=k)
        res = _nelder_mead(
            lambda x: branch_cost(_unitary_from_params(x, dim)),
            x0,
            method="Nelder-Mead",
            options={
                "maxfev": cfg.max_evaluations,
                "fatol": cfg.objective_tolerance,
                "xatol": cfg.parameter_tolerance,
            },
        )
        best = min(best, float(res.fun))
    return max(best, 0.0)


def emb_general(
    s: StateTensor,
    part: Partition | None = None,
    cfg: OptimizerConfig | None = None,
    orders=None,
) -> MeasureResult:
    """Adaptive-measurement minimal entropy for an arbitrary partition.

    Coarse-grains by ``part``, then minimizes over adaptive hierarchies and
    party orderings.  Two-party states use the closed form; three qubits use
    the fast branch-matrix path; larger systems recurse (all orders are
    enumerated up to four parties, beyond that ``orders`` must be supplied).
    """
    cfg = cfg or DEFAULT_CFG
    part = part or Partition.finest(s.n_parties)
    grained = coarse_grain(s, part)
    n = grained.n_parties
    if n < 2:
        raise ValueError("need at least two parties after coarse-graining")
    if n == 2:
        value = bipartite_entanglement(grained, Partition.finest(2))
        return MeasureResult(value=value, extras={"closed_form": True})
    if grained.dims == (2, 2, 2):
        result = emb_tripartite_best(grained, cfg)
        return result
    if orders is None:
        if n > 4:
            raise ValueError("supply candidate party orders for more than 4 parties")
        orders = list(itertools.permutations(range(n)))
    best = math.inf
    best_order = None
    for order in orders:
        cost = _hierarchy_cost(grained, tuple(order), cfg)
        if cost < best:
            best, best_order = cost, tuple(order)
    return MeasureResult(value=best, extras={"party_order": best_order})


# --- independent (non-adaptive) measurement entropy ------------------------


def _hmin_objective(t):
    """Entropy of the four-outcome distribution for independent bases.

    ``t`` is the amplitude tensor reordered to (measured a, measured b, rest).
    """

    def objective(angles):
        angles = np.atleast_2d(angles)
        a_rows = _qubit_coefficient_rows(angles[:, 0], angles[:, 1])
        b_rows = _qubit_coefficient_rows(angles[:, 2], angles[:, 3])
        amp = np.einsum("mli,mnj,ijk->mlnk", a_rows, b_rows, t)
        probs = np.sum(np.abs(amp) ** 2, axis=3).reshape(angles.shape[0], 4)
        return _entropy_of(probs[:, 0], probs[:, 1], probs[:, 2], probs[:, 3])

    return objective


def e_hmin(s: StateTensor, cfg: OptimizerConfig | None = None) -> MeasureResult:
    """Minimal outcome entropy for independent bases on two of three qubits."""
    if s.dims != (2, 2, 2):
        raise ValueError("e_hmin requires a three-qubit state")
    cfg = cfg or HMIN_CFG
    best: MeasureResult | None = None
    for leave in range(3):
        measured = tuple(m for m in range(3) if m != leave)
        t = np.moveaxis(s.tensor, (measured[0], measured[1], leave), (0, 1, 2))
        value, angles, diag = minimize_periodic(_hmin_objective(t), HMIN_PERIODS, cfg)
        candidate = MeasureResult(
            value=max(value, 0.0),
            argmin=angles,
            diagnostics=diag,
            extras={"measured_parties": measured},
        )
        if best is None or candidate.value < best.value:
            best = candidate
    return best


# --- LOCC quantities -------------------------------------------------------


def _average_residual_entanglement(a_first):
    """Vectorized sum_i p_i E(psi_i) for a first-party qubit measurement."""
    m0, m1 = a_first[0], a_first[1]

    def objective(angles):
        angles = np.atleast_2d(angles)
        rows = _qubit_coefficient_rows(angles[:, 0], angles[:, 1])
        a0 = rows[:, 0, 0][:, None, None]
        a1 = rows[:, 0, 1][:, None, None]
        out = np.zeros(angles.shape[0])
        for b in (
            a0 * m0 + a1 * m1,
            -np.conj(a1) * m0 + np.conj(a0) * m1,
        ):
            lo, hi = _hermitian2_eigvals(b @ np.conj(np.swapaxes(b, -1, -2)))
            p = lo + hi
            safe_p = np.where(p > ZERO_PROB, p, 1.0)
            frac = np.clip(hi / safe_p, 0.0, 1.0)
            ent = _entropy_of(frac, 1.0 - frac)
            out = out + np.where(p > ZERO_PROB, p * ent, 0.0)
        return out

    return objective


def e_locc(s: StateTensor, cfg: OptimizerConfig | None = None) -> MeasureResult:
    """Maximal average residual entanglement after one local measurement."""
    if s.dims != (2, 2, 2):
        raise ValueError("e_locc requires a three-qubit state")
    cfg = cfg or DEFAULT_CFG
    best: MeasureResult | None = None
    for party in range(3):
        a_first = np.moveaxis(s.tensor, party, 0)
        value, angles, diag = maximize_periodic(
            _average_residual_entanglement(a_first), TRIPARTITE_PERIODS, cfg
        )
        candidate = MeasureResult(
            value=max(value, 0.0),
            argmin=angles,
            diagnostics=diag,
            extras={"measured_party": party},
        )
        if best is None or candidate.value > best.value:
            best = candidate
    return best


@dataclass(frozen=True)
class LoccMonotoneReport:
    emb: float
    e_locc: float
    monotone: bool
    emb_result: MeasureResult
    locc_result: MeasureResult


def check_locc_monotone(
    s: StateTensor, cfg: OptimizerConfig | None = None, tol: float = 1e-5
) -> LoccMonotoneReport:
    """Check that the adaptive minimum dominates the LOCC average."""
    emb_result = emb_tripartite_best(s, cfg)
    locc_result = e_locc(s, cfg)
    return LoccMonotoneReport(
        emb=emb_result.value,
        e_locc=locc_result.value,
        monotone=emb_result.value >= locc_result.value - tol,
        emb_result=emb_result,
        locc_result=locc_result,
    )

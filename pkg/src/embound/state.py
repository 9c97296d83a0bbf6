"""Pure multipartite quantum states and the operations acting on them.

Amplitudes are stored flat in row-major order with the last party's index
varying fastest.  All operations are pure functions over immutable values.
"""

from __future__ import annotations

import json
import math
import warnings
from dataclasses import dataclass, field

import numpy as np

NORM_TOL = 1e-12
NORM_REPAIR_LIMIT = 1e-3
ZERO_PROB = 1e-14
BASIS_TOL = 1e-12


@dataclass(frozen=True)
class StateTensor:
    """Normalized pure state of N parties with arbitrary local dimensions.

    ``amplitudes`` is a flat complex vector of length ``prod(dims)``.  States
    whose norm deviates from 1 by more than 1e-12 but less than 1e-3 are
    renormalized with a warning (hand-typed amplitude files are inexact);
    larger deviations are rejected.
    """

    dims: tuple[int, ...]
    amplitudes: np.ndarray
    norm_factor: float = 1.0

    def __post_init__(self):
        dims = tuple(int(d) for d in self.dims)
        if any(d < 2 for d in dims):
            raise ValueError("every party dimension must be >= 2")
        amps = np.asarray(self.amplitudes, dtype=complex).ravel()
        expected = math.prod(dims)
        if amps.size != expected:
            raise ValueError(
                f"amplitude count {amps.size} does not match dims product {expected}"
            )
        norm = float(np.linalg.norm(amps))
        if norm == 0.0:
            raise ValueError("all-zero amplitude vector")
        factor = 1.0
        deviation = abs(norm - 1.0)
        if deviation > NORM_REPAIR_LIMIT:
            raise ValueError(f"state norm {norm} deviates too far from 1")
        if deviation > NORM_TOL:
            warnings.warn(
                f"renormalizing state: norm deviated by {deviation:.3e}",
                stacklevel=2,
            )
            factor = 1.0 / norm
            amps = amps * factor
        amps = amps.copy()
        amps.flags.writeable = False
        object.__setattr__(self, "dims", dims)
        object.__setattr__(self, "amplitudes", amps)
        object.__setattr__(self, "norm_factor", factor)

    @property
    def n_parties(self) -> int:
        return len(self.dims)

    @property
    def tensor(self) -> np.ndarray:
        """Amplitudes reshaped to one axis per party."""
        return self.amplitudes.reshape(self.dims)


@dataclass(frozen=True)
class MeasurementBasis:
    """Single-party orthonormal measurement basis.

    Qubit bases are parametrized by two angles: the first outcome has
    projection coefficients (cos(theta), sin(theta) e^{i phi}) and the second
    the orthogonal pair (-sin(theta) e^{-i phi}, cos(theta)).  Higher
    dimensions carry an explicit unitary of column vectors.
    """

    dim: int
    theta: float | None = None
    phi: float | None = None
    unitary: np.ndarray | None = None

    def __post_init__(self):
        if self.unitary is not None:
            u = np.asarray(self.unitary, dtype=complex)
            if u.shape != (self.dim, self.dim):
                raise ValueError("unitary shape does not match dim")
            if np.max(np.abs(u.conj().T @ u - np.eye(self.dim))) > BASIS_TOL:
                raise ValueError("basis columns are not orthonormal")
            u = u.copy()
            u.flags.writeable = False
            object.__setattr__(self, "unitary", u)
        elif self.dim == 2:
            if self.theta is None or self.phi is None:
                raise ValueError("qubit basis requires theta and phi")
        else:
            raise ValueError("dim > 2 requires an explicit unitary")

    @classmethod
    def qubit(cls, theta: float, phi: float) -> "MeasurementBasis":
        return cls(dim=2, theta=float(theta), phi=float(phi))

    @classmethod
    def from_unitary(cls, unitary: np.ndarray) -> "MeasurementBasis":
        unitary = np.asarray(unitary, dtype=complex)
        return cls(dim=unitary.shape[0], unitary=unitary)

    @property
    def vectors(self) -> np.ndarray:
        """Basis kets as columns of a unitary matrix."""
        if self.unitary is not None:
            return self.unitary
        a0 = math.cos(self.theta)
        a1 = math.sin(self.theta) * np.exp(1j * self.phi)
        return np.array(
            [[np.conj(a0), -a1], [np.conj(a1), a0]], dtype=complex
        )

    @property
    def coefficients(self) -> np.ndarray:
        """Row ``l`` holds the projection coefficients of outcome ``l``."""
        return self.vectors.conj().T


@dataclass(frozen=True)
class Partition:
    """Disjoint, exhaustive grouping of party indices (0-based)."""

    blocks: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        blocks = tuple(tuple(sorted(int(i) for i in b)) for b in self.blocks)
        object.__setattr__(self, "blocks", blocks)

    @classmethod
    def finest(cls, n_parties: int) -> "Partition":
        return cls(tuple((i,) for i in range(n_parties)))

    @classmethod
    def bipartition(cls, block, n_parties: int) -> "Partition":
        block = tuple(sorted(block))
        rest = tuple(i for i in range(n_parties) if i not in block)
        return cls((block, rest))

    def validate(self, n_parties: int) -> None:
        seen: set[int] = set()
        for block in self.blocks:
            if not block:
                raise ValueError("empty block in partition")
            for i in block:
                if i < 0 or i >= n_parties:
                    raise ValueError(f"party index {i} out of range")
                if i in seen:
                    raise ValueError(f"party index {i} appears twice")
                seen.add(i)
        if len(seen) != n_parties:
            raise ValueError("partition does not cover all parties")

    def is_finer_than(self, other: "Partition") -> bool:
        """Refinement partial order: every block here fits in one of `other`."""
        other_sets = [set(b) for b in other.blocks]
        return all(
            any(set(block) <= o for o in other_sets) for block in self.blocks
        )


@dataclass(frozen=True)
class OutcomeTree:
    """Adaptive measurement hierarchy: one basis per outcome prefix.

    ``bases`` maps the tuple of already-observed outcomes to the basis used
    for the next party in ``party_order``; ``leaf_probabilities`` maps full
    outcome tuples to their probabilities.
    """

    party_order: tuple[int, ...]
    bases: dict[tuple[int, ...], MeasurementBasis] = field(default_factory=dict)
    leaf_probabilities: dict[tuple[int, ...], float] = field(default_factory=dict)

    @property
    def n_bases(self) -> int:
        return len(self.bases)

    def total_probability(self) -> float:
        return float(sum(self.leaf_probabilities.values()))


def from_json(text) -> StateTensor:
    """Parse the external JSON state format.

    Format: ``{"dims": [d1, ..., dN], "amplitudes": [[re, im], ...]}`` with
    amplitudes flat in row-major order (last party fastest).
    """
    if isinstance(text, bytes):
        text = text.decode("utf-8")
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ValueError(f"malformed JSON state: {exc}") from exc
    try:
        dims = tuple(int(d) for d in doc["dims"])
        pairs = doc["amplitudes"]
        amps = np.array(
            [complex(float(re), float(im)) for re, im in pairs], dtype=complex
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise ValueError(f"malformed JSON state: {exc}") from exc
    return StateTensor(dims=dims, amplitudes=amps)


def to_json(s: StateTensor) -> str:
    pairs = [[float(a.real), float(a.imag)] for a in s.amplitudes]
    return json.dumps({"dims": list(s.dims), "amplitudes": pairs})


def _three_qubit(entries: dict[tuple[int, int, int], complex]) -> StateTensor:
    amps = np.zeros(8, dtype=complex)
    for (i, j, k), v in entries.items():
        amps[4 * i + 2 * j + k] = v
    return StateTensor((2, 2, 2), amps)


def ghz_w_superposition(alpha: float) -> StateTensor:
    """cos(a)|GHZ> + sin(a)|W'> with |W'> = (|011>+|101>+|110>)/sqrt(3)."""
    if not -math.pi / 2 - 1e-12 <= alpha <= math.pi / 2 + 1e-12:
        raise ValueError("alpha must lie in [-pi/2, pi/2]")
    sa = math.sin(alpha)
    ca = math.sqrt(max(0.0, 1.0 - sa * sa))
    g = ca / math.sqrt(2.0)
    w = sa / math.sqrt(3.0)
    return _three_qubit(
        {(0, 0, 0): g, (1, 1, 1): g, (0, 1, 1): w, (1, 0, 1): w, (1, 1, 0): w}
    )


def named_state(name: str, params=None) -> StateTensor:
    """Build a catalog state by name.

    Names: GHZ, W, Wprime, Omega, Omega1, Omega2, Bell, GHZ-W.  GHZ-W takes
    one parameter (the mixing angle alpha), Omega1 takes (q0, q2, q4) and
    Omega2 takes (q0, q1, q4, gamma).
    """
    key = name.strip().lower().replace("_", "-")
    params = list(params) if params is not None else []
    inv = 1.0 / math.sqrt(2.0)
    if key == "bell":
        return StateTensor((2, 2), np.array([inv, 0, 0, inv], dtype=complex))
    if key == "ghz":
        return _three_qubit({(0, 0, 0): inv, (1, 1, 1): inv})
    if key == "w":
        w = 1.0 / math.sqrt(3.0)
        return _three_qubit({(0, 0, 1): w, (0, 1, 0): w, (1, 0, 0): w})
    if key == "wprime":
        w = 1.0 / math.sqrt(3.0)
        return _three_qubit({(0, 1, 1): w, (1, 0, 1): w, (1, 1, 0): w})
    if key == "omega":
        q = 1.0 / math.sqrt(5.0)
        return _three_qubit(
            {(0, 0, 0): q, (0, 1, 1): q, (1, 0, 1): q, (1, 1, 0): q, (1, 1, 1): q}
        )
    if key == "ghz-w":
        if len(params) != 1:
            raise ValueError("GHZ-W requires one parameter alpha")
        return ghz_w_superposition(params[0])
    if key == "omega1":
        if len(params) != 3:
            raise ValueError("Omega1 requires parameters (q0, q2, q4)")
        q0, q2, q4 = params
        if min(q0, q2, q4) < -1e-12:
            raise ValueError("Omega1 amplitudes must be nonnegative")
        return _three_qubit(
            {(0, 0, 0): q0, (0, 1, 1): q0, (1, 0, 1): q2, (1, 1, 0): q2, (1, 1, 1): q4}
        )
    if key == "omega2":
        if len(params) != 4:
            raise ValueError("Omega2 requires parameters (q0, q1, q4, gamma)")
        q0, q1, q4, gamma = params
        if min(q0, q1, q4) < -1e-12:
            raise ValueError("Omega2 amplitudes must be nonnegative")
        return _three_qubit(
            {(0, 0, 0): q0, (0, 1, 1): q1, (1, 1, 1): q4 * np.exp(1j * gamma)}
        )
    raise ValueError(f"unknown state name: {name!r}")


def standard_form_state(p) -> StateTensor:
    """State q0|000> + q1|011> + q2|101> + q3|110> + q4 e^{i gamma}|111>.

    Accepts anything exposing q0..q4 and gamma (see
    ``closedform.StandardFormParams``) or a plain 6-sequence.
    """
    if hasattr(p, "q0"):
        q = [p.q0, p.q1, p.q2, p.q3, p.q4]
        gamma = p.gamma
    else:
        *q, gamma = p
    if len(q) != 5:
        raise ValueError("expected five amplitudes and a phase")
    if min(q) < -1e-12:
        raise ValueError("standard-form amplitudes must be nonnegative")
    if abs(sum(x * x for x in q) - 1.0) > 1e-10:
        raise ValueError("standard-form amplitudes must be normalized")
    return _three_qubit(
        {
            (0, 0, 0): q[0],
            (0, 1, 1): q[1],
            (1, 0, 1): q[2],
            (1, 1, 0): q[3],
            (1, 1, 1): q[4] * np.exp(1j * gamma),
        }
    )


def project_party(s: StateTensor, party: int, vector) -> tuple[float, StateTensor | None]:
    """Project one party onto a unit vector.

    Returns the outcome probability and the normalized residual state of the
    remaining parties (``None`` when the probability is below 1e-14).
    """
    vector = np.asarray(vector, dtype=complex).ravel()
    if vector.size != s.dims[party]:
        raise ValueError("projection vector length does not match party dim")
    if abs(np.linalg.norm(vector) - 1.0) > 1e-10:
        raise ValueError("projection vector must be unit norm")
    if s.n_parties < 2:
        raise ValueError("need at least two parties to project")
    residual = np.tensordot(vector.conj(), s.tensor, axes=(0, party))
    prob = float(np.sum(np.abs(residual) ** 2))
    if prob < ZERO_PROB:
        return 0.0, None
    dims = s.dims[:party] + s.dims[party + 1 :]
    residual = residual.ravel() / math.sqrt(prob)
    return prob, StateTensor(dims, residual)


def reduced_density(s: StateTensor, block) -> np.ndarray:
    """Reduced density matrix of the given party block (traces out the rest)."""
    block = tuple(sorted(set(int(i) for i in block)))
    n = s.n_parties
    if not block or len(block) >= n:
        raise ValueError("block must be a nonempty proper subset of parties")
    if block[0] < 0 or block[-1] >= n:
        raise ValueError("party index out of range")
    rest = tuple(i for i in range(n) if i not in block)
    d_block = math.prod(s.dims[i] for i in block)
    m = s.tensor.transpose(block + rest).reshape(d_block, -1)
    return m @ m.conj().T


def permute_parties(s: StateTensor, perm) -> StateTensor:
    """Reorder parties; new party k is old party perm[k]."""
    perm = tuple(int(i) for i in perm)
    if sorted(perm) != list(range(s.n_parties)):
        raise ValueError("perm is not a permutation of the parties")
    tensor = s.tensor.transpose(perm)
    dims = tuple(s.dims[i] for i in perm)
    return StateTensor(dims, tensor.ravel())


def coarse_grain(s: StateTensor, part: Partition) -> StateTensor:
    """Merge parties into blocks; block m becomes one party of merged dim."""
    part.validate(s.n_parties)
    axes = tuple(i for block in part.blocks for i in block)
    dims = tuple(math.prod(s.dims[i] for i in block) for block in part.blocks)
    tensor = s.tensor.transpose(axes)
    return StateTensor(dims, tensor.ravel())


def random_pure_state(dims, rng: np.random.Generator) -> StateTensor:
    """Haar-like random pure state from the documented generator contract.

    Draws ``rng.standard_normal((D, 2))``: column 0 gives real parts, column 1
    imaginary parts, in row-major amplitude order; the vector is normalized.
    """
    dims = tuple(int(d) for d in dims)
    z = rng.standard_normal((math.prod(dims), 2))
    amps = z[:, 0] + 1j * z[:, 1]
    return StateTensor(dims, amps / np.linalg.norm(amps))

"""Shared fixtures and frozen reference values."""

import math

import numpy as np
import pytest

import embound as eb

# Closed-form value shared by several measures on the symmetric five-term state.
OMEGA_VALUE = eb.binary_entropy(0.5 * (1.0 + 1.0 / math.sqrt(5.0)))
SQRT5 = math.sqrt(5.0)


@pytest.fixture
def ghz():
    return eb.named_state("GHZ")


@pytest.fixture
def omega():
    return eb.named_state("Omega")


@pytest.fixture
def wprime():
    return eb.named_state("Wprime")


@pytest.fixture
def product_000():
    amps = np.zeros(8, dtype=complex)
    amps[0] = 1.0
    return eb.StateTensor((2, 2, 2), amps)


def random_omega1_params(rng):
    """Valid (q0, q2, q4) with 2 q0^2 + 2 q2^2 + q4^2 = 1."""
    g = np.abs(rng.standard_normal(3))
    g /= math.sqrt(2.0 * g[0] ** 2 + 2.0 * g[1] ** 2 + g[2] ** 2)
    return float(g[0]), float(g[1]), float(g[2])


def random_unitary(dim, rng):
    z = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    q, r = np.linalg.qr(z)
    return q * (np.diag(r) / np.abs(np.diag(r)))

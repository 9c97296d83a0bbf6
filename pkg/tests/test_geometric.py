"""Geometric measure of entanglement and the analytic tangle curve."""

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import embound as eb

W_PRIME_VALUE = math.log2(9.0 / 4.0)


class TestProductAnsatz:
    def test_fidelity_of_exact_product(self, product_000):
        ansatz = eb.ProductAnsatz(
            (np.array([1.0, 0.0]), np.array([1.0, 0.0]), np.array([1.0, 0.0]))
        )
        assert ansatz.fidelity(product_000) == pytest.approx(1.0, abs=1e-14)

    def test_ghz_best_product_overlap(self, ghz):
        zero = np.array([1.0, 0.0])
        assert eb.ProductAnsatz((zero,) * 3).fidelity(ghz) == pytest.approx(0.5, abs=1e-12)

    def test_rejects_non_unit_vectors(self):
        with pytest.raises(ValueError, match="unit norm"):
            eb.ProductAnsatz((np.array([1.0, 1.0]),))


class TestSymmetricPath:
    def test_ghz(self, ghz):
        assert eb.geometric_measure_symmetric(ghz).value == pytest.approx(1.0, abs=1e-8)

    def test_wprime(self, wprime):
        assert eb.geometric_measure_symmetric(wprime).value == pytest.approx(
            W_PRIME_VALUE, abs=1e-8
        )

    def test_w(self):
        w = eb.named_state("W")
        assert eb.geometric_measure_symmetric(w).value == pytest.approx(
            W_PRIME_VALUE, abs=1e-8
        )

    def test_product(self, product_000):
        assert eb.geometric_measure_symmetric(product_000).value == pytest.approx(
            0.0, abs=1e-10
        )

    def test_rejects_asymmetric_state(self):
        amps = np.zeros(8, dtype=complex)
        amps[1] = 1.0
        s = eb.StateTensor((2, 2, 2), amps)
        with pytest.raises(ValueError, match="not permutation-symmetric"):
            eb.geometric_measure_symmetric(s)

    def test_three_qubits_only(self):
        with pytest.raises(ValueError):
            eb.geometric_measure_symmetric(eb.named_state("Bell"))


class TestGeneralPath:
    def test_agrees_with_symmetric_on_ghz(self, ghz):
        assert eb.geometric_measure_general(ghz).value == pytest.approx(1.0, abs=1e-6)

    def test_agrees_with_symmetric_on_wprime(self, wprime):
        assert eb.geometric_measure_general(wprime).value == pytest.approx(
            W_PRIME_VALUE, abs=1e-6
        )

    def test_fidelity_history_monotone(self):
        rng = np.random.default_rng(14)
        s = eb.random_pure_state((2, 2, 2), rng)
        result = eb.geometric_measure_general(s)
        history = result.extras["fidelity_history"]
        assert all(b >= a - 1e-12 for a, b in zip(history, history[1:]))
        assert result.extras["converged"]

    def test_reported_ansatz_achieves_value(self):
        rng = np.random.default_rng(15)
        s = eb.random_pure_state((2, 2, 2), rng)
        result = eb.geometric_measure_general(s)
        fidelity = result.extras["ansatz"].fidelity(s)
        assert -math.log2(fidelity) == pytest.approx(result.value, abs=1e-9)

    def test_handles_qutrits(self):
        rng = np.random.default_rng(16)
        s = eb.random_pure_state((3, 3), rng)
        # for bipartite states the best product overlap is the top Schmidt value
        top = eb.schmidt_decompose(s, eb.Partition.finest(2)).values[0]
        assert eb.geometric_measure_general(s).value == pytest.approx(
            -math.log2(top), abs=1e-8
        )

    def test_bounded_by_adaptive_minimum(self, omega):
        e_g = eb.geometric_measure_general(omega).value
        e_mb = eb.emb_tripartite_best(omega).value
        assert e_g <= e_mb + 1e-5


class TestTangle:
    def test_pure_ghz(self):
        assert eb.tangle_ghz_w(0.0) == 1.0

    def test_pure_wprime_exactly_zero(self):
        assert eb.tangle_ghz_w(math.pi / 2.0) == 0.0

    def test_special_mixing_angle(self):
        alpha = math.asin(math.sqrt(3.0 / 5.0))
        expected = 4.0 / 25.0 + (8.0 / 9.0) * math.sqrt(6.0) * (3.0 / 5.0) ** 1.5 * math.sqrt(
            2.0 / 5.0
        )
        assert eb.tangle_ghz_w(alpha) == pytest.approx(expected, abs=1e-14)
        assert expected == pytest.approx(0.8, abs=1e-12)

    def test_negative_branch_can_vanish(self):
        # the absolute value folds the sign-change of the odd term
        values = [eb.tangle_ghz_w(a) for a in np.linspace(-math.pi / 2, 0.0, 201)]
        assert min(values) < 1e-3

    def test_domain(self):
        with pytest.raises(ValueError):
            eb.tangle_ghz_w(2.0)

    @given(st.floats(min_value=-math.pi / 2, max_value=math.pi / 2))
    @settings(max_examples=100, deadline=None)
    def test_range(self, alpha):
        assert 0.0 <= eb.tangle_ghz_w(alpha) <= 1.0 + 1e-12

"""Grid + simplex search over periodic angle domains."""

import math

import numpy as np
import pytest

import embound as eb
from embound.optimize import MAX_DIMENSIONS


def cosine_valley(center):
    def f(x):
        x = np.atleast_2d(x)
        return 1.0 - np.cos(x[:, 0] - center)

    return f


class TestConfigValidation:
    def test_defaults_valid(self):
        cfg = eb.OptimizerConfig()
        assert cfg.grid_resolution == 48 and cfg.restart_count == 5

    @pytest.mark.parametrize(
        "kwargs",
        [
            {"grid_resolution": 0},
            {"grid_resolution": (8, 0)},
            {"restart_count": 0},
            {"max_evaluations": 0},
            {"objective_tolerance": 0.0},
            {"parameter_tolerance": 2.0},
        ],
    )
    def test_rejects_bad_budgets(self, kwargs):
        with pytest.raises(ValueError):
            eb.OptimizerConfig(**kwargs)

    def test_resolution_per_axis(self):
        cfg = eb.OptimizerConfig(grid_resolution=(8, 16))
        assert cfg.resolution_for(2) == (8, 16)
        with pytest.raises(ValueError, match="axes"):
            cfg.resolution_for(3)


class TestMinimize:
    def test_constant_objective(self):
        value, argmin, diag = eb.minimize_periodic(
            lambda x: np.full(np.atleast_2d(x).shape[0], 3.25),
            (2.0 * math.pi,),
        )
        assert value == 3.25
        assert diag.converged
        assert 0.0 <= argmin[0] < 2.0 * math.pi

    def test_cosine_valley(self):
        value, argmin, diag = eb.minimize_periodic(cosine_valley(1.0), (2.0 * math.pi,))
        assert value == pytest.approx(0.0, abs=1e-10)
        assert argmin[0] == pytest.approx(1.0, abs=1e-5)
        assert diag.evaluations > 48

    def test_two_axes(self):
        def f(x):
            x = np.atleast_2d(x)
            return (1.0 - np.cos(x[:, 0] - 0.5)) + (1.0 - np.cos(2.0 * (x[:, 1] - 0.25)))

        value, argmin, _ = eb.minimize_periodic(f, (2.0 * math.pi, math.pi))
        assert value == pytest.approx(0.0, abs=1e-9)
        assert argmin[0] == pytest.approx(0.5, abs=1e-4)
        assert argmin[1] == pytest.approx(0.25, abs=1e-4)

    def test_argmin_canonicalized(self):
        value, argmin, _ = eb.minimize_periodic(cosine_valley(-0.3), (2.0 * math.pi,))
        assert 0.0 <= argmin[0] < 2.0 * math.pi
        assert value == pytest.approx(0.0, abs=1e-10)

    def test_never_worse_than_grid(self):
        rng = np.random.default_rng(7)
        table = rng.uniform(size=64)

        def jagged(x):
            x = np.atleast_2d(x)
            idx = (np.abs(x[:, 0]) / (2.0 * math.pi) * 64).astype(int) % 64
            return table[idx]

        value, _, diag = eb.minimize_periodic(jagged, (2.0 * math.pi,))
        assert value <= diag.grid_best + 1e-15

    def test_deterministic(self):
        cfg = eb.OptimizerConfig(grid_resolution=24, restart_count=3)
        first = eb.minimize_periodic(cosine_valley(2.2), (2.0 * math.pi,), cfg)
        second = eb.minimize_periodic(cosine_valley(2.2), (2.0 * math.pi,), cfg)
        assert first[0] == second[0]
        assert np.array_equal(first[1], second[1])

    def test_dimension_cap(self):
        with pytest.raises(ValueError, match="at most"):
            eb.minimize_periodic(
                lambda x: np.zeros(np.atleast_2d(x).shape[0]),
                (1.0,) * (MAX_DIMENSIONS + 1),
            )


class TestMaximize:
    def test_cosine_peak(self):
        def f(x):
            x = np.atleast_2d(x)
            return np.cos(x[:, 0] - 1.0)

        value, argmax, diag = eb.maximize_periodic(f, (2.0 * math.pi,))
        assert value == pytest.approx(1.0, abs=1e-10)
        assert argmax[0] == pytest.approx(1.0, abs=1e-5)
        assert diag.grid_best <= value + 1e-15

    def test_constant(self):
        value, _, _ = eb.maximize_periodic(
            lambda x: np.full(np.atleast_2d(x).shape[0], -0.5), (1.0,)
        )
        assert value == -0.5


class TestDiagnostics:
    def test_fields_populated(self):
        cfg = eb.OptimizerConfig(restart_count=4)
        _, _, diag = eb.minimize_periodic(cosine_valley(0.7), (2.0 * math.pi,), cfg)
        assert diag.restarts == 4
        assert diag.best_gap >= 0.0
        assert diag.grid_best >= 0.0

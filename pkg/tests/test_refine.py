"""Bounded quasi-Newton refinement."""

import numpy as np
import pytest

from qags.errors import InvalidInputError, RefinementError
from qags.grid import SearchBox
from qags.objectives import (
    ObjectiveFunction,
    make_rastrigin,
    make_rosenbrock,
    make_sphere,
    make_styblinski_tang,
)
from qags.refine import RefinerConfig, refine


def quadratic_1d():
    return ObjectiveFunction(
        name="xsq",
        arity=1,
        fn=lambda x: float(x[0]) ** 2,
        batch_fn=lambda X: X[:, 0] ** 2,
        kernel_kind=None,
    )


class TestConvergence:
    def test_sphere_from_offset(self):
        x, fx, evals = refine(
            make_sphere(2), SearchBox.cube(2, -5.0, 5.0), np.array([3.0, 4.0])
        )
        assert fx < 1e-12
        assert np.all(np.abs(x) < 1e-6)
        assert evals > 0

    def test_constrained_minimum_at_boundary(self):
        # x^2 on [1, 2] has its constrained minimum at the left edge
        box = SearchBox(np.array([1.0]), np.array([2.0]))
        x, fx, _ = refine(quadratic_1d(), box, np.array([1.7]))
        assert x[0] == pytest.approx(1.0, abs=1e-9)
        assert fx == pytest.approx(1.0, abs=1e-9)

    def test_rosenbrock_classic_start(self):
        x, fx, _ = refine(
            make_rosenbrock(2), SearchBox.cube(2, -5.0, 5.0), np.array([-1.2, 1.0])
        )
        assert fx < 1e-10
        assert np.allclose(x, 1.0, atol=1e-4)

    def test_styblinski_tang_local(self):
        obj = make_styblinski_tang(3)
        x, fx, _ = refine(
            obj, SearchBox.cube(3, -5.0, 5.0), np.full(3, -2.5)
        )
        assert fx == pytest.approx(obj.known_minimum_value, abs=1e-9)


class TestContract:
    def test_start_clipped_into_box(self):
        box = SearchBox.cube(2, -1.0, 1.0)
        x, fx, _ = refine(make_sphere(2), box, np.array([5.0, -7.0]))
        assert box.contains(x)

    def test_result_always_feasible(self):
        box = SearchBox(np.array([0.5, -2.0]), np.array([2.0, -0.5]))
        x, _, _ = refine(make_rastrigin(2), box, np.array([1.9, -1.9]))
        assert box.contains(x)

    def test_descent_from_start(self):
        obj = make_rastrigin(2)
        box = SearchBox.cube(2, -5.12, 5.12)
        start = np.array([2.2, -3.3])
        f_start = make_rastrigin(2).evaluate(start)
        _, fx, _ = refine(obj, box, start)
        assert fx <= f_start + 1e-12

    def test_eval_budget_respected(self):
        obj = make_rosenbrock(2)
        cfg = RefinerConfig(max_evals=25)
        _, _, evals = refine(
            obj, SearchBox.cube(2, -5.0, 5.0), np.array([-1.2, 1.0]), cfg
        )
        assert evals <= 25
        assert obj.eval_count == evals

    def test_degenerate_box_returns_start(self):
        box = SearchBox(np.array([2.0, 3.0]), np.array([2.0, 3.0]))
        x, fx, evals = refine(make_sphere(2), box, np.array([2.0, 3.0]))
        assert np.array_equal(x, [2.0, 3.0])
        assert fx == 13.0
        assert evals == 1

    def test_partially_degenerate_box(self):
        # frozen first coordinate, free second
        box = SearchBox(np.array([2.0, -5.0]), np.array([2.0, 5.0]))
        x, fx, _ = refine(make_sphere(2), box, np.array([2.0, 4.0]))
        assert x[0] == 2.0
        assert abs(x[1]) < 1e-6
        assert fx == pytest.approx(4.0, abs=1e-9)

    def test_failing_start_raises(self):
        bad = ObjectiveFunction(
            name="nan",
            arity=1,
            fn=lambda x: float("nan"),
            batch_fn=lambda X: np.full(len(X), np.nan),
            kernel_kind=None,
        )
        with pytest.raises(RefinementError) as err:
            refine(bad, SearchBox.cube(1, 0.0, 1.0), np.array([0.5]))
        assert err.value.last_point is not None

    def test_arity_mismatch(self):
        with pytest.raises(InvalidInputError):
            refine(make_sphere(2), SearchBox.cube(3, 0.0, 1.0), np.zeros(3))


class TestRefinerConfig:
    def test_defaults(self):
        cfg = RefinerConfig()
        assert cfg.max_evals == 10000
        assert cfg.convergence_tol == 1e-10
        assert cfg.history_size == 10

    def test_validation(self):
        with pytest.raises(InvalidInputError):
            RefinerConfig(max_evals=0)
        with pytest.raises(InvalidInputError):
            RefinerConfig(convergence_tol=-1.0)
        with pytest.raises(InvalidInputError):
            RefinerConfig(history_size=0)
        with pytest.raises(InvalidInputError):
            RefinerConfig(gradient_step_scale=0.0)

"""Benchmark objective functions and the objective-function wrapper.

Each benchmark is available both as a plain NumPy function and, via the
factories below, wrapped in an :class:`ObjectiveFunction` that validates
inputs, counts evaluations, and records the known optimum when one exists
in closed form.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np

from ._kernels_py import (
    KIND_RASTRIGIN,
    KIND_ROSENBROCK,
    KIND_SPHERE,
    KIND_STYBLINSKI_TANG,
)
from .errors import EvaluationError, InvalidInputError
from .grid import SearchBox

# Per-dimension optimum of 0.5*(x^4 - 16x^2 + 5x): root of 4x^3 - 32x + 5
# nearest -2.9 and the objective value there (both correct to double
# precision; verified against a high-precision root in the test suite).
STYBLINSKI_TANG_OPT_X = -2.903534027771177
STYBLINSKI_TANG_OPT_F = -39.16616570377141


def rastrigin(x):
    """Rastrigin: 10*d + sum(x_i^2 - 10*cos(2*pi*x_i)).

    Global minimum f(0, ..., 0) = 0; highly multimodal.
    """
    x = np.asarray(x, dtype=np.float64)
    return float(10.0 * x.size + np.sum(x * x - 10.0 * np.cos(2.0 * np.pi * x)))


def styblinski_tang(x):
    """Styblinski-Tang: 0.5 * sum(x_i^4 - 16*x_i^2 + 5*x_i).

    Global minimum ~= -39.16617*d at x_i ~= -2.9035340.
    """
    x = np.asarray(x, dtype=np.float64)
    return float(0.5 * np.sum(x ** 4 - 16.0 * x * x + 5.0 * x))


def rosenbrock(x):
    """Rosenbrock: sum over i of 100*(x_{i+1} - x_i^2)^2 + (1 - x_i)^2.

    Global minimum f(1, ..., 1) = 0 along a narrow curved valley.
    """
    x = np.asarray(x, dtype=np.float64)
    return float(np.sum(100.0 * (x[1:] - x[:-1] ** 2) ** 2 + (1.0 - x[:-1]) ** 2))


def sphere(x, shift=None):
    """Shifted sphere: sum((x_i - c_i)^2) with optimum at the shift c."""
    x = np.asarray(x, dtype=np.float64)
    if shift is not None:
        x = x - np.asarray(shift, dtype=np.float64)
    return float(np.sum(x * x))


class _EvalCounter:
    """Thread-safe evaluation counter."""

    def __init__(self):
        self._lock = threading.Lock()
        self._count = 0

    def add(self, n=1):
        with self._lock:
            self._count += n

    @property
    def value(self):
        return self._count

    def reset(self):
        with self._lock:
            self._count = 0


@dataclass
class ObjectiveFunction:
    """A named objective of fixed arity with an evaluation counter.

    ``batch_fn`` vectorizes over an (N, d) matrix of points; when absent,
    batch evaluation falls back to a row-by-row loop.  ``kernel_kind``
    tags objectives the lattice kernels can evaluate without
    materializing point coordinates.
    """

    name: str
    arity: int
    fn: Callable[[np.ndarray], float]
    batch_fn: Optional[Callable[[np.ndarray], np.ndarray]] = None
    kernel_kind: Optional[int] = None
    shift: Optional[np.ndarray] = None
    canonical_domain: Optional[SearchBox] = None
    known_minimum_point: Optional[np.ndarray] = None
    known_minimum_value: Optional[float] = None
    _counter: _EvalCounter = field(default_factory=_EvalCounter, repr=False)

    def _check_point(self, x):
        x = np.asarray(x, dtype=np.float64)
        if x.shape != (self.arity,):
            raise InvalidInputError(
                f"{self.name} expects {self.arity} coordinates, got shape {x.shape}"
            )
        if not np.all(np.isfinite(x)):
            raise InvalidInputError(f"{self.name} received a non-finite point")
        return x

    def evaluate(self, x):
        x = self._check_point(x)
        value = float(self.fn(x))
        self._counter.add(1)
        if not np.isfinite(value):
            raise EvaluationError(f"{self.name} returned {value}", point=x)
        return value

    def evaluate_batch(self, points):
        """Evaluate an (N, d) matrix of points; returns an (N,) array."""
        pts = np.asarray(points, dtype=np.float64)
        if pts.ndim != 2 or pts.shape[1] != self.arity:
            raise InvalidInputError("expected an (N, d) matrix of points")
        if not np.all(np.isfinite(pts)):
            raise InvalidInputError(f"{self.name} received a non-finite point")
        if self.batch_fn is not None:
            values = np.asarray(self.batch_fn(pts), dtype=np.float64)
        else:
            values = np.array([self.fn(row) for row in pts], dtype=np.float64)
        self._counter.add(pts.shape[0])
        bad = ~np.isfinite(values)
        if bad.any():
            idx = int(np.argmax(bad))
            raise EvaluationError(
                f"{self.name} returned {values[idx]}", point=pts[idx].copy()
            )
        return values

    def count_evaluations(self, n):
        """Credit n evaluations performed outside evaluate()/evaluate_batch()
        (used by lattice kernels that bypass the Python call path)."""
        self._counter.add(n)

    @property
    def eval_count(self):
        return self._counter.value

    def reset_eval_count(self):
        self._counter.reset()


def make_rastrigin(dimension):
    if dimension < 1:
        raise InvalidInputError("rastrigin needs dimension >= 1")
    return ObjectiveFunction(
        name="rastrigin",
        arity=dimension,
        fn=rastrigin,
        batch_fn=lambda pts: 10.0 * pts.shape[1]
        + np.sum(pts * pts - 10.0 * np.cos(2.0 * np.pi * pts), axis=1),
        kernel_kind=KIND_RASTRIGIN,
        canonical_domain=SearchBox.cube(dimension, -5.12, 5.12),
        known_minimum_point=np.zeros(dimension),
        known_minimum_value=0.0,
    )


def make_styblinski_tang(dimension):
    if dimension < 1:
        raise InvalidInputError("styblinski_tang needs dimension >= 1")
    return ObjectiveFunction(
        name="styblinski_tang",
        arity=dimension,
        fn=styblinski_tang,
        batch_fn=lambda pts: 0.5
        * np.sum(pts ** 4 - 16.0 * pts * pts + 5.0 * pts, axis=1),
        kernel_kind=KIND_STYBLINSKI_TANG,
        canonical_domain=SearchBox.cube(dimension, -5.0, 5.0),
        known_minimum_point=np.full(dimension, STYBLINSKI_TANG_OPT_X),
        known_minimum_value=STYBLINSKI_TANG_OPT_F * dimension,
    )


def make_rosenbrock(dimension):
    if dimension < 2:
        raise InvalidInputError("rosenbrock needs dimension >= 2")
    return ObjectiveFunction(
        name="rosenbrock",
        arity=dimension,
        fn=rosenbrock,
        batch_fn=lambda pts: np.sum(
            100.0 * (pts[:, 1:] - pts[:, :-1] ** 2) ** 2 + (1.0 - pts[:, :-1]) ** 2,
            axis=1,
        ),
        kernel_kind=KIND_ROSENBROCK,
        known_minimum_point=np.ones(dimension),
        known_minimum_value=0.0,
    )


def make_sphere(dimension, shift=None):
    if dimension < 1:
        raise InvalidInputError("sphere needs dimension >= 1")
    if shift is None:
        shift_arr = np.zeros(dimension)
    else:
        shift_arr = np.asarray(shift, dtype=np.float64)
        if shift_arr.shape != (dimension,):
            raise InvalidInputError("sphere shift arity mismatch")
        if not np.all(np.isfinite(shift_arr)):
            raise InvalidInputError("sphere shift must be finite")
    return ObjectiveFunction(
        name="sphere",
        arity=dimension,
        fn=lambda x: sphere(x, shift_arr),
        batch_fn=lambda pts: np.sum((pts - shift_arr[None, :]) ** 2, axis=1),
        kernel_kind=KIND_SPHERE,
        shift=shift_arr,
        known_minimum_point=shift_arr.copy(),
        known_minimum_value=0.0,
    )


REGISTRY = {
    "rastrigin": make_rastrigin,
    "styblinski_tang": make_styblinski_tang,
    "rosenbrock": make_rosenbrock,
    "sphere": make_sphere,
}


def get_objective(name, dimension, shift=None):
    """Instantiate a registered benchmark by name.

    Raises KeyError for unknown names; shift applies to sphere only.
    """
    if name not in REGISTRY:
        raise KeyError(name)
    if name == "sphere":
        return make_sphere(dimension, shift)
    if shift is not None:
        raise InvalidInputError(f"{name} does not take a shift")
    return REGISTRY[name](dimension)

"""High-probability region selection, bound contraction, and termination.

The selected region is the set of basis states whose probability reaches
the quantile-level order statistic of the probability vector (linearly
interpolated empirical quantile).  Zero-probability states are never
selected: a measurement cannot land on them, and including them would
re-inflate the bounds the moment weights underflow.  The contracted box
is the tight axis-aligned hull of the selected points, clamped to the
current bounds.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .errors import InvalidInputError
from .grid import SearchBox, decode_many
from .quantum import entropy_fraction


class Verdict(enum.Enum):
    """Termination verdict for one iteration."""

    CONTINUE = "continue"
    WIDTH_FLOOR = "width_floor"
    MAX_ITERATIONS = "max_iterations"
    CONCENTRATED = "concentrated"


@dataclass(frozen=True)
class RegionSelection:
    """Indices of the high-probability region.

    ``selected_indices`` is a sorted array of unique flat indices (the
    set of selected basis states); every member's probability meets
    ``threshold_probability``.
    """

    quantile: float
    selected_indices: np.ndarray
    threshold_probability: float

    def __post_init__(self):
        idx = np.asarray(self.selected_indices, dtype=np.int64)
        if idx.size == 0:
            raise InvalidInputError("selection must be non-empty")
        idx.setflags(write=False)
        object.__setattr__(self, "selected_indices", idx)


@dataclass(frozen=True)
class TerminationPolicy:
    """Stopping rules: width floor delta, iteration cap k_max, entropy floor."""

    delta: float = 1e-6
    k_max: int = 10
    entropy_floor: float = 0.01

    def __post_init__(self):
        if not self.delta > 0:
            raise InvalidInputError("delta must be positive")
        if self.k_max < 1:
            raise InvalidInputError("k_max must be >= 1")
        if not 0.0 <= self.entropy_floor < 1.0:
            raise InvalidInputError("entropy_floor must lie in [0, 1)")


def select_region(dist, quantile=0.75):
    """Select all basis states with P >= quantile-level threshold.

    The distribution's maximal entry (f_min_index) always satisfies the
    threshold and is force-included, so the selection is never empty.
    """
    if not 0.0 < quantile < 1.0:
        raise InvalidInputError("quantile must lie strictly inside (0, 1)")
    probs = dist.probabilities
    threshold = float(np.quantile(probs, quantile))
    mask = (probs >= threshold) & (probs > 0.0)
    assert mask[dist.f_min_index], "maximal entry must meet the threshold"
    mask[dist.f_min_index] = True
    return RegionSelection(
        quantile=quantile,
        selected_indices=np.flatnonzero(mask).astype(np.int64),
        threshold_probability=threshold,
    )


def contract_bounds(spec, selection):
    """Tight axis-aligned hull of the selected points, clamped to the
    current bounds (a defensive no-op since decoded points lie inside)."""
    points = decode_many(spec, selection.selected_indices)
    new_lower = np.maximum(spec.bounds.lower, points.min(axis=0))
    new_upper = np.minimum(spec.bounds.upper, points.max(axis=0))
    return SearchBox(new_lower, new_upper)


def should_terminate(box_prev, box_next, dist, k, policy):
    """Evaluate the three stopping rules, in fixed order.

    Width floor (max width of box_next below delta) is checked first,
    then the iteration cap (k >= k_max), then distribution concentration
    (entropy fraction below entropy_floor).
    """
    if k < 1:
        raise InvalidInputError("iteration index starts at 1")
    if float(box_next.width.max()) < policy.delta:
        return Verdict.WIDTH_FLOOR
    if k >= policy.k_max:
        return Verdict.MAX_ITERATIONS
    if entropy_fraction(dist) < policy.entropy_floor:
        return Verdict.CONCENTRATED
    return Verdict.CONTINUE

"""Simulated quantum measurement distribution over a qubit grid.

Objective values over the full grid are encoded as Boltzmann weights
exp(-(f - f_min) / sigma) with sigma the population standard deviation of
the grid values (temperature).  Under the probability law the measurement
distribution is proportional to that weight; under the amplitude law the
weight is loaded into the state amplitudes, so probabilities square it.
Measurement is either exact readout of the distribution or finite-shot
multinomial sampling.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from . import kernels
from .errors import EvaluationError, InvalidInputError
from .grid import GridSpec, decode, decode_many


class EncodingLaw(enum.Enum):
    """How objective quality maps onto the simulated state.

    BOLTZMANN_PROBABILITY: P(x) proportional to exp(-(f - f_min)/sigma).
    BOLTZMANN_AMPLITUDE:   amplitude proportional to exp(-(f - f_min)/sigma),
                           hence P(x) proportional to exp(-2(f - f_min)/sigma).
    """

    BOLTZMANN_PROBABILITY = "boltzmann-prob"
    BOLTZMANN_AMPLITUDE = "boltzmann-amp"

    @property
    def exponent_scale(self):
        return 2.0 if self is EncodingLaw.BOLTZMANN_AMPLITUDE else 1.0


@dataclass(frozen=True)
class QuantumDistribution:
    """Measurement probabilities over the basis states of a grid.

    ``f_min_index`` is the flat index of the distribution's maximal entry:
    the grid argmin under exact readout (first index on ties), the
    empirical argmax after finite-shot sampling.  ``sigma`` is the
    temperature used by the encoding; ``entropy_bits`` the Shannon entropy
    of ``probabilities``.
    """

    spec: GridSpec
    probabilities: np.ndarray
    f_min_index: int
    sigma: float
    entropy_bits: float

    def __post_init__(self):
        probs = np.asarray(self.probabilities, dtype=np.float64)
        if probs.ndim != 1 or probs.size != self.spec.total_points:
            raise InvalidInputError("probability vector length must be 2^(n*d)")
        if not 0 <= self.f_min_index < probs.size:
            raise InvalidInputError("f_min_index out of range")
        if np.any(probs < 0.0) or not np.all(np.isfinite(probs)):
            raise InvalidInputError("probabilities must be finite and non-negative")
        if abs(float(probs.sum()) - 1.0) > 1e-12:
            raise InvalidInputError("probabilities must sum to 1")
        probs.setflags(write=False)
        object.__setattr__(self, "probabilities", probs)
        object.__setattr__(self, "f_min_index", int(self.f_min_index))
        object.__setattr__(self, "sigma", float(self.sigma))
        object.__setattr__(self, "entropy_bits", float(self.entropy_bits))


def grid_values(objective, spec):
    """Objective values over every grid point, in flat-index order.

    Uses the lattice kernel when the objective advertises one (no point
    matrix is materialized); otherwise decodes all points and evaluates
    in batch.  Either way the objective's evaluation counter advances by
    2^(n*d).
    """
    if objective.arity != spec.dimension:
        raise InvalidInputError("objective arity does not match grid dimension")
    if objective.kernel_kind is not None:
        values = kernels.lattice_values(
            objective.kernel_kind,
            spec.bounds.lower,
            spec.bounds.upper,
            spec.points_per_dim,
            objective.shift,
        )
        objective.count_evaluations(spec.total_points)
        bad = ~np.isfinite(values)
        if bad.any():
            idx = int(np.argmax(bad))
            raise EvaluationError(
                f"{objective.name} returned {values[idx]} on the grid",
                point=decode(spec, idx),
            )
        return values
    coords = decode_many(spec, np.arange(spec.total_points, dtype=np.int64))
    return objective.evaluate_batch(coords)


def distribution_from_values(spec, values, law=EncodingLaw.BOLTZMANN_PROBABILITY):
    """Boltzmann-encode a precomputed value vector (flat-index order)."""
    v = np.asarray(values, dtype=np.float64)
    if v.shape != (spec.total_points,):
        raise InvalidInputError("value vector length must be 2^(n*d)")
    probs, argmin_index, sigma, entropy = kernels.boltzmann(v, law.exponent_scale)
    return QuantumDistribution(
        spec=spec,
        probabilities=probs,
        f_min_index=argmin_index,
        sigma=sigma,
        entropy_bits=entropy,
    )


def build_distribution(objective, spec, law=EncodingLaw.BOLTZMANN_PROBABILITY):
    """Evaluate the grid and encode it as a measurement distribution."""
    return distribution_from_values(spec, grid_values(objective, spec), law)


def entropy_bits_of(probs):
    """Shannon entropy in bits; zero entries contribute nothing."""
    p = probs[probs > 0.0]
    h = float(-np.sum(p * np.log2(p)))
    return max(h, 0.0)


def entropy_fraction(dist):
    """Entropy relative to the n*d-bit maximum: 1 uniform, 0 point mass."""
    return dist.entropy_bits / (dist.spec.qubits_per_dim * dist.spec.dimension)


def sample(dist, shots, seed):
    """Finite-shot measurement: multinomial draw of the distribution.

    Returns a new distribution of empirical frequencies (renormalized so
    they sum to 1 exactly up to round-off); its f_min_index is the
    empirical argmax, lowest index on ties.  shots = 0 means exact
    readout: the input distribution is returned unchanged.
    """
    if shots < 0:
        raise InvalidInputError("shots must be non-negative")
    if shots == 0:
        return dist
    rng = np.random.Generator(np.random.PCG64(seed))
    p = dist.probabilities / dist.probabilities.sum()
    counts = rng.multinomial(shots, p)
    emp = counts / float(shots)
    emp /= emp.sum()
    return QuantumDistribution(
        spec=dist.spec,
        probabilities=emp,
        f_min_index=int(np.argmax(emp)),
        sigma=dist.sigma,
        entropy_bits=entropy_bits_of(emp),
    )

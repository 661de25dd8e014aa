"""NumPy fallback for the lattice/encoding kernels.

Mirrors the compiled extension's semantics: identical grid coordinates
(endpoint exact), identical left-to-right accumulation order for the
per-dimension terms, and the same Boltzmann/entropy formulas.  Values may
still differ from the compiled path by a few ulps because libm and
NumPy's vectorized transcendentals round differently.
"""

from __future__ import annotations

import numpy as np

KIND_SPHERE = 0
KIND_RASTRIGIN = 1
KIND_STYBLINSKI_TANG = 2
KIND_ROSENBROCK = 3


def _axis_coordinates(lower, upper, m):
    step = (upper - lower) / (m - 1)
    xs = lower + np.arange(m) * step
    xs[-1] = upper
    return xs


def _axis_terms(kind, xs, shift_i):
    if kind == KIND_SPHERE:
        t = xs - shift_i
        return t * t
    if kind == KIND_RASTRIGIN:
        return xs * xs - 10.0 * np.cos(2.0 * np.pi * xs) + 10.0
    if kind == KIND_STYBLINSKI_TANG:
        x2 = xs * xs
        return 0.5 * (x2 * x2 - 16.0 * x2 + 5.0 * xs)
    raise ValueError(f"unknown separable kind {kind}")


def lattice_values(kind, lower, upper, points_per_dim, shift):
    """Objective values over the full uniform lattice, flat-index order
    (dimension 0 most significant)."""
    d = lower.size
    m = int(points_per_dim)
    axes = [_axis_coordinates(lower[i], upper[i], m) for i in range(d)]
    total = np.zeros((m,) * d)
    if kind == KIND_ROSENBROCK:
        for i in range(d - 1):
            a, b = axes[i], axes[i + 1]
            pair = 100.0 * (b[None, :] - a[:, None] ** 2) ** 2 + (1.0 - a[:, None]) ** 2
            shape = [1] * d
            shape[i] = m
            shape[i + 1] = m
            total += pair.reshape(shape)
    else:
        for i in range(d):
            term = _axis_terms(kind, axes[i], shift[i])
            shape = [1] * d
            shape[i] = m
            total += term.reshape(shape)
    return total.reshape(-1)


def boltzmann(values, scale):
    """Boltzmann encoding of a value vector.

    Returns (probabilities, argmin_index, sigma, entropy_bits) where
    sigma is the population standard deviation of the values (1.0 when
    the spread is below 1e-12) and probabilities are proportional to
    exp(-scale * (v - v_min) / sigma).
    """
    v = np.ascontiguousarray(values, dtype=np.float64)
    argmin_index = int(np.argmin(v))
    vmin = v[argmin_index]
    mean = float(v.mean())
    dev = v - mean
    sigma = float(np.sqrt(np.mean(dev * dev)))
    if sigma < 1e-12:
        sigma = 1.0
    w = np.exp(-(v - vmin) * scale / sigma)
    probs = w / w.sum()
    pos = probs[probs > 0.0]
    entropy = max(float(-np.sum(pos * np.log2(pos))), 0.0)
    return probs, argmin_index, sigma, entropy

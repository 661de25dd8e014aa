# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled lattice/encoding kernels.

Semantics mirror the NumPy fallback exactly: same grid coordinates
(endpoint pinned to the upper bound), same left-to-right accumulation
order across dimensions, same Boltzmann and entropy formulas.  Results
may still differ from the fallback by a few ulps where libm and NumPy's
vectorized transcendentals round differently.
"""

import numpy as np

cimport numpy as cnp
from libc.math cimport cos, exp, log2, sqrt

cnp.import_array()

KIND_SPHERE = 0
KIND_RASTRIGIN = 1
KIND_STYBLINSKI_TANG = 2
KIND_ROSENBROCK = 3

cdef double TWO_PI = 6.283185307179586


cdef inline double _axis_coord(double lo, double hi, double step, Py_ssize_t j, Py_ssize_t m) noexcept nogil:
    if j == m - 1:
        return hi
    return lo + j * step


def lattice_values(kind, lower, upper, points_per_dim, shift):
    """Objective values over the full uniform lattice, flat-index order
    (dimension 0 most significant)."""
    cdef cnp.ndarray[cnp.float64_t, ndim=1] lo = np.ascontiguousarray(lower, dtype=np.float64)
    cdef cnp.ndarray[cnp.float64_t, ndim=1] hi = np.ascontiguousarray(upper, dtype=np.float64)
    cdef cnp.ndarray[cnp.float64_t, ndim=1] sh = np.ascontiguousarray(shift, dtype=np.float64)
    cdef Py_ssize_t d = lo.shape[0]
    cdef Py_ssize_t m = int(points_per_dim)
    cdef int kind_c = int(kind)
    if d < 1:
        raise ValueError("need at least one dimension")
    if m < 2:
        raise ValueError("need at least two points per dimension")
    if hi.shape[0] != d or sh.shape[0] != d:
        raise ValueError("lower, upper and shift must have equal length")
    total_py = int(points_per_dim) ** int(d)
    if total_py > (1 << 62):
        raise ValueError("lattice too large")
    cdef Py_ssize_t n_total = <Py_ssize_t> total_py

    cdef cnp.ndarray[cnp.float64_t, ndim=2] xs = np.empty((d, m), dtype=np.float64)
    cdef Py_ssize_t i, j, a, b
    cdef double step, x, x2, t, u
    for i in range(d):
        step = (hi[i] - lo[i]) / (m - 1)
        for j in range(m):
            xs[i, j] = _axis_coord(lo[i], hi[i], step, j, m)

    cdef cnp.ndarray[cnp.float64_t, ndim=1] out = np.empty(n_total, dtype=np.float64)
    cdef cnp.ndarray[cnp.int64_t, ndim=1] idx = np.zeros(d, dtype=np.int64)
    cdef cnp.ndarray[cnp.float64_t, ndim=1] prefix = np.zeros(d + 1, dtype=np.float64)
    cdef cnp.ndarray[cnp.float64_t, ndim=2] terms
    cdef cnp.ndarray[cnp.float64_t, ndim=3] pairs
    cdef Py_ssize_t flat, lowest, k, n_terms

    if kind_c == 3:  # rosenbrock couples consecutive coordinates
        if d < 2:
            raise ValueError("rosenbrock needs at least two dimensions")
        pairs = np.empty((d - 1, m, m), dtype=np.float64)
        for i in range(d - 1):
            for a in range(m):
                x = xs[i, a]
                x2 = x * x
                u = 1.0 - x
                for b in range(m):
                    t = xs[i + 1, b] - x2
                    pairs[i, a, b] = 100.0 * (t * t) + u * u
        n_terms = d - 1
        with nogil:
            for k in range(n_terms):
                prefix[k + 1] = prefix[k] + pairs[k, 0, 0]
            for flat in range(n_total):
                out[flat] = prefix[n_terms]
                lowest = d - 1
                while lowest >= 0:
                    idx[lowest] += 1
                    if idx[lowest] < m:
                        break
                    idx[lowest] = 0
                    lowest -= 1
                if lowest < 0:
                    break
                if lowest > 0:
                    lowest -= 1  # the pair (lowest-1, lowest) changed too
                for k in range(lowest, n_terms):
                    prefix[k + 1] = prefix[k] + pairs[k, idx[k], idx[k + 1]]
        return out

    terms = np.empty((d, m), dtype=np.float64)
    for i in range(d):
        for j in range(m):
            x = xs[i, j]
            if kind_c == 0:
                t = x - sh[i]
                terms[i, j] = t * t
            elif kind_c == 1:
                terms[i, j] = x * x - 10.0 * cos(TWO_PI * x) + 10.0
            elif kind_c == 2:
                x2 = x * x
                terms[i, j] = 0.5 * (x2 * x2 - 16.0 * x2 + 5.0 * x)
            else:
                raise ValueError(f"unknown kind {kind_c}")
    n_terms = d
    with nogil:
        for k in range(n_terms):
            prefix[k + 1] = prefix[k] + terms[k, 0]
        for flat in range(n_total):
            out[flat] = prefix[n_terms]
            lowest = d - 1
            while lowest >= 0:
                idx[lowest] += 1
                if idx[lowest] < m:
                    break
                idx[lowest] = 0
                lowest -= 1
            if lowest < 0:
                break
            for k in range(lowest, n_terms):
                prefix[k + 1] = prefix[k] + terms[k, idx[k]]
    return out


def boltzmann(values, scale):
    """Boltzmann encoding of a value vector.

    Returns (probabilities, argmin_index, sigma, entropy_bits) where
    sigma is the population standard deviation of the values (1.0 when
    the spread is below 1e-12) and probabilities are proportional to
    exp(-scale * (v - v_min) / sigma).
    """
    cdef cnp.ndarray[cnp.float64_t, ndim=1] v = np.ascontiguousarray(values, dtype=np.float64)
    cdef Py_ssize_t n = v.shape[0]
    if n < 1:
        raise ValueError("need at least one value")
    cdef double scale_c = float(scale)
    cdef cnp.ndarray[cnp.float64_t, ndim=1] probs = np.empty(n, dtype=np.float64)
    cdef Py_ssize_t i, argmin_index = 0
    cdef double vmin, mean_acc = 0.0, var_acc = 0.0, sigma, wsum = 0.0
    cdef double p, entropy = 0.0, dev
    with nogil:
        vmin = v[0]
        for i in range(1, n):
            if v[i] < vmin:
                vmin = v[i]
                argmin_index = i
        for i in range(n):
            mean_acc += v[i]
        mean_acc /= n
        for i in range(n):
            dev = v[i] - mean_acc
            var_acc += dev * dev
        sigma = sqrt(var_acc / n)
        if sigma < 1e-12:
            sigma = 1.0
        for i in range(n):
            probs[i] = exp(-(v[i] - vmin) * scale_c / sigma)
            wsum += probs[i]
        for i in range(n):
            probs[i] /= wsum
            p = probs[i]
            if p > 0.0:
                entropy -= p * log2(p)
        if entropy < 0.0:
            entropy = 0.0
    return probs, int(argmin_index), float(sigma), float(entropy)

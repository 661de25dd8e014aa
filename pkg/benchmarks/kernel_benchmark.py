"""Timing harness comparing the compiled kernels with the NumPy fallback.

Runs the same lattice-evaluation and encoding workloads through both
backend modules in one process, then times full optimizer runs per
backend in subprocesses (backend selection happens at import time, so a
fresh interpreter is the only clean way to switch).  Wall times are the
best of several repeats.

Usage: python3 benchmarks/kernel_benchmark.py
"""

import os
import subprocess
import sys
import time

import numpy as np

from qags import _kernels_py
from qags._kernels_py import (
    KIND_RASTRIGIN,
    KIND_ROSENBROCK,
    KIND_SPHERE,
    KIND_STYBLINSKI_TANG,
)

try:
    from qags import _kernels as _native
except ImportError:
    _native = None

REPEATS = 5

LATTICE_CASES = (
    ("lattice rastrigin d=2 m=32", KIND_RASTRIGIN, 2, 32),
    ("lattice styblinski_tang d=3 m=16", KIND_STYBLINSKI_TANG, 3, 16),
    ("lattice sphere d=5 m=8", KIND_SPHERE, 5, 8),
    ("lattice rosenbrock d=8 m=4", KIND_ROSENBROCK, 8, 4),
    ("lattice rastrigin d=10 m=4", KIND_RASTRIGIN, 10, 4),
)

BOLTZMANN_SIZES = (1024, 65536, 1048576)

DRIVER_SNIPPET = """\
import time
import qags
from qags.grid import SearchBox
from qags.objectives import get_objective

objective = get_objective({name!r}, {dim})
box = SearchBox.cube({dim}, -5.0, 5.0)
cfg = qags.QagsConfig(qubits_per_dim={qubits})
started = time.perf_counter()
qags.run(objective, box, cfg)
print(time.perf_counter() - started)
"""

DRIVER_CASES = (
    ("driver sphere d=10 q=2", "sphere", 10, 2),
    ("driver rosenbrock d=8 q=2", "rosenbrock", 8, 2),
)


def best_of(fn, repeats=REPEATS):
    fn()  # warmup
    return min(_timed(fn) for _ in range(repeats))


def _timed(fn):
    started = time.perf_counter()
    fn()
    return time.perf_counter() - started


def time_driver(backend, name, dim, qubits, repeats=3):
    env = dict(os.environ, QAGS_BACKEND=backend)
    snippet = DRIVER_SNIPPET.format(name=name, dim=dim, qubits=qubits)
    times = []
    for _ in range(repeats):
        out = subprocess.run(
            [sys.executable, "-c", snippet],
            capture_output=True,
            text=True,
            env=env,
            check=True,
        )
        times.append(float(out.stdout))
    return min(times)


def main():
    if _native is None:
        print(
            "compiled extension not importable; build it first:\n"
            "    pip install -e . --no-build-isolation",
            file=sys.stderr,
        )
        return 1

    rows = []
    for label, kind, d, m in LATTICE_CASES:
        lower = np.full(d, -5.0)
        upper = np.full(d, 5.0)
        shift = np.zeros(d)
        t_py = best_of(lambda: _kernels_py.lattice_values(kind, lower, upper, m, shift))
        t_c = best_of(lambda: _native.lattice_values(kind, lower, upper, m, shift))
        rows.append((label, t_py, t_c))

    rng = np.random.default_rng(7)
    for size in BOLTZMANN_SIZES:
        values = rng.normal(50.0, 20.0, size)
        t_py = best_of(lambda: _kernels_py.boltzmann(values, 1.0))
        t_c = best_of(lambda: _native.boltzmann(values, 1.0))
        rows.append((f"boltzmann n={size}", t_py, t_c))

    for label, name, dim, qubits in DRIVER_CASES:
        t_py = time_driver("python", name, dim, qubits)
        t_c = time_driver("native", name, dim, qubits)
        rows.append((label, t_py, t_c))

    width = max(len(r[0]) for r in rows)
    header = f"{'workload':<{width}}  {'python (ms)':>12}  {'native (ms)':>12}  {'speedup':>8}"
    print(header)
    print("-" * len(header))
    for label, t_py, t_c in rows:
        print(
            f"{label:<{width}}  {t_py * 1e3:>12.3f}  {t_c * 1e3:>12.3f}"
            f"  {t_py / t_c:>7.2f}x"
        )
    return 0


if __name__ == "__main__":
    sys.exit(main())

"""Build script for the optional compiled kernel extension.

The package works without the extension (a NumPy fallback is selected at
import time), so the build degrades gracefully when Cython, a C compiler,
or the .pyx source is unavailable.
"""

import os

from setuptools import Extension, setup

ext_modules = []
if os.path.exists(os.path.join("src", "qags", "_kernels.pyx")):
    try:
        import numpy
        from Cython.Build import cythonize
    except ImportError:
        pass
    else:
        ext_modules = cythonize(
            [
                Extension(
                    "qags._kernels",
                    ["src/qags/_kernels.pyx"],
                    include_dirs=[numpy.get_include()],
                    define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
                    # -ffp-contract=off keeps lattice coordinates bit-compatible
                    # with the NumPy fallback (no fused multiply-add surprises).
                    extra_compile_args=["-O3", "-ffp-contract=off"],
                )
            ],
            language_level=3,
        )

setup(ext_modules=ext_modules)

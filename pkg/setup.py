"""Build script: compiles the optional Jacobi eigensolver extension.

The package works without the extension (a vectorized numpy fallback is
selected at import time), so any failure here downgrades to a pure-Python
install instead of aborting.
"""
import sys

from setuptools import setup

try:
    import numpy
    from Cython.Build import cythonize
    from setuptools import Extension

    extensions = cythonize(
        [
            Extension(
                "boundarylab._kernels._jacobi",
                ["src/boundarylab/_kernels/_jacobi.pyx"],
                include_dirs=[numpy.get_include()],
                define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
            )
        ],
        language_level=3,
    )
except Exception as exc:  # pragma: no cover - exercised only on broken toolchains
    print(f"warning: building without compiled kernels ({exc})", file=sys.stderr)
    extensions = []

setup(ext_modules=extensions)

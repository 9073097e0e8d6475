"""Build script: compiles the optional fast-path extension.

The package is fully functional without the extension (a pure NumPy
implementation is selected at import time); the extension accelerates the
scalar special-function kernels that dominate transform runtimes.
"""

import os

from setuptools import Extension, setup

_PYX = os.path.join("src", "cskernels", "_fast.pyx")

ext_modules = []
if os.environ.get("CSKERNELS_NO_EXT") != "1" and os.path.exists(_PYX):
    try:
        import numpy as np
        from Cython.Build import cythonize

        ext_modules = cythonize(
            [
                Extension(
                    "cskernels._fast",
                    sources=["src/cskernels/_fast.pyx"],
                    include_dirs=[np.get_include()],
                    extra_compile_args=["-O3"],
                    define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
                )
            ],
            language_level=3,
        )
    except ImportError:
        ext_modules = []

setup(ext_modules=ext_modules)

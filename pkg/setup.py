"""Build script: compiles the Cython stepping kernels when possible.

The package is fully functional without the extension (a pure-numpy
backend is selected at import time), so a failed compile only costs speed.
"""

import numpy as np
from setuptools import setup

try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        "src/bressim/_kernels/_core.pyx",
        compiler_directives={
            "language_level": "3",
            "boundscheck": False,
            "wraparound": False,
            "cdivision": True,
        },
    )
except Exception as exc:  # pragma: no cover - build-env dependent
    print(f"bressim: skipping Cython kernels ({exc}); pure-Python backend will be used")
    ext_modules = []

setup(ext_modules=ext_modules, include_dirs=[np.get_include()])

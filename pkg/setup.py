"""Builds the optional compiled enumeration kernels.

The package works without the extension (a pure-Python fallback is
selected at import time), so a failed compile is not fatal for
functionality, only for speed.
"""

import numpy as np
from setuptools import Extension, setup

try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [
            Extension(
                "wiretapkit._ckernels",
                ["src/wiretapkit/_ckernels.pyx"],
                include_dirs=[np.get_include()],
            )
        ],
        language_level=3,
    )
except ImportError:
    ext_modules = []

setup(ext_modules=ext_modules)

"""Build script: compiles the optional likelihood kernel extension.

The package is fully functional without the extension (a numpy
implementation is selected at import time), so any failure here is
demoted to a warning rather than aborting the install.
"""

import warnings

from setuptools import setup

try:
    import numpy as np
    from Cython.Build import cythonize
    from setuptools.extension import Extension

    extensions = cythonize(
        [
            Extension(
                "ngfisk._kernels._core",
                ["src/ngfisk/_kernels/_core.pyx"],
                include_dirs=[np.get_include()],
                define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
            )
        ],
        language_level="3",
    )
except Exception as exc:  # missing compiler / cython: install pure-python
    warnings.warn(f"building without compiled kernels: {exc}")
    extensions = []

setup(ext_modules=extensions)

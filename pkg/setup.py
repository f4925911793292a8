"""Build script: compiles the optional Cython kernel extension.

The package works without the extension (a pure NumPy fallback is selected
at import time); set RANDLA_NO_EXT=1 to skip compilation entirely.
"""

import os

from setuptools import Extension, setup


def _extensions():
    if os.environ.get("RANDLA_NO_EXT") == "1":
        return []
    try:
        import numpy
        from Cython.Build import cythonize
    except ImportError:
        return []
    ext = Extension(
        "randla.backend._ckernels",
        ["src/randla/backend/_ckernels.pyx"],
        include_dirs=[numpy.get_include()],
        define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
    )
    return cythonize(
        [ext],
        compiler_directives={
            "language_level": 3,
            "boundscheck": False,
            "wraparound": False,
            "cdivision": True,
        },
    )


setup(ext_modules=_extensions())

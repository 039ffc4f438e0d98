"""Builds the optional compiled kernels.

The package is fully functional without them: every compiled routine has a
pure Python/numpy fallback selected at import time (see ulogview.kernels).
If Cython or a C compiler is unavailable the build silently skips the
extensions rather than failing.
"""

from setuptools import setup

ext_modules = []
try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [
            "src/ulogview/_native/_scan.pyx",
            "src/ulogview/_native/_simplify.pyx",
        ],
        compiler_directives={"language_level": "3"},
    )
except ImportError:
    pass

setup(ext_modules=ext_modules)

"""Build the optional Cython speedup module.

The package works without it: countbf.backend falls back to the pure-Python
kernels when the extension failed to build or import.
"""

from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:
    cythonize = None

ext_modules = []
if cythonize is not None:
    ext_modules = cythonize(
        [
            Extension(
                "countbf._speedups",
                ["src/countbf/_speedups.pyx"],
                extra_compile_args=["-O3"],
            )
        ],
        language_level=3,
    )

setup(ext_modules=ext_modules)

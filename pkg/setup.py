"""Build script for the compiled special-function kernels.

The package works without the extension (a pure-Python fallback is selected
at import time), but the compiled kernels speed up sweeps by one to two
orders of magnitude.
"""

from setuptools import Extension, setup
from Cython.Build import cythonize

extensions = [
    Extension(
        "rindler_purcell._kernels",
        ["src/rindler_purcell/_kernels.pyx"],
        extra_compile_args=["-O3"],
    )
]

setup(
    ext_modules=cythonize(extensions, compiler_directives={"language_level": "3"}),
)

"""Build script: compiles the optional fixpoint kernel extension.

The package is fully functional without the extension (a numpy fallback is
selected at import time); the extension just makes the integer fixpoint
solves faster on larger arenas.
"""

import numpy
from setuptools import Extension, setup

try:
    from Cython.Build import cythonize

    extensions = cythonize(
        [
            Extension(
                "scar._ckernel",
                ["src/scar/_ckernel.pyx"],
                include_dirs=[numpy.get_include()],
                extra_compile_args=["-O3"],
            )
        ],
        compiler_directives={"language_level": "3"},
    )
except ImportError:
    extensions = []

setup(ext_modules=extensions)

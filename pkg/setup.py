"""Build the optional Cython kernels; the package falls back to numpy if absent."""
import os

import numpy as np
from setuptools import Extension, setup

ext_modules = []
if os.environ.get("HOLOZENO_NO_EXT") != "1":
    try:
        from Cython.Build import cythonize
    except ImportError:
        cythonize = None
    if cythonize is not None:
        ext_modules = cythonize(
            [
                Extension(
                    "holozeno._ckernels",
                    ["src/holozeno/_ckernels.pyx"],
                    include_dirs=[np.get_include()],
                    extra_compile_args=["-O3"],
                )
            ],
            compiler_directives={"language_level": "3"},
        )

setup(ext_modules=ext_modules)

"""Build script for the optional compiled kernels.

The package works without them: if Cython or a C compiler is missing the
extension is skipped and the pure-Python fallback is used at import.
"""
import os

from setuptools import setup

ext_modules = []
if os.environ.get("LINENET_NO_EXT", "") in ("", "0"):
    try:
        import numpy as np
        from Cython.Build import cythonize
        from setuptools import Extension

        ext_modules = cythonize(
            [
                Extension(
                    "linenet._ckernels",
                    ["src/linenet/_ckernels.pyx"],
                    include_dirs=[np.get_include()],
                    define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
                    extra_compile_args=["-O3"],
                )
            ],
            compiler_directives={"language_level": "3"},
        )
    except ImportError:
        ext_modules = []

setup(ext_modules=ext_modules)

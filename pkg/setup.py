"""Build the optional Cython kernels; the package works without them."""
import os
import sys

from setuptools import Extension, setup

ext_modules = []
if not os.environ.get("EULERMAHONIAN_NO_EXT"):
    try:
        import numpy as np
        from Cython.Build import cythonize
    except ImportError as exc:  # pragma: no cover - build environment dependent
        print(f"skipping compiled kernels: {exc}", file=sys.stderr)
    else:
        ext_modules = cythonize(
            [
                Extension(
                    "eulermahonian._kernels._ckernels",
                    ["src/eulermahonian/_kernels/_ckernels.pyx"],
                    include_dirs=[np.get_include()],
                    define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
                    extra_compile_args=["-O3"],
                )
            ],
            compiler_directives={"language_level": "3"},
        )

setup(ext_modules=ext_modules)

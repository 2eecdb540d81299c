"""Build hook: compile the optional fast kernel, falling back to pure Python.

The package is fully functional without the compiled extension; every kernel
has a pure-Python twin selected at import time (see dcc.kernels).
"""
import os

from setuptools import Extension, setup

ext_modules = []
if os.environ.get("DCC_NO_EXT") != "1":
    try:
        from Cython.Build import cythonize

        ext_modules = cythonize(
            [Extension("dcc._fastcore", ["src/dcc/_fastcore.pyx"])],
            compiler_directives={
                "language_level": 3,
                "boundscheck": False,
                "wraparound": False,
                "cdivision": True,
            },
        )
    except Exception as exc:  # pragma: no cover - build-environment dependent
        print(f"dcc: skipping compiled kernel ({exc}); pure-Python fallback will be used")

setup(ext_modules=ext_modules)

"""Build script: compiles the optional Cython core when Cython is available.

Without Cython (or a C compiler) the package installs in pure-Python mode and
``hotg._core`` falls back to ``_pyterms`` at import time.
"""

import os

from setuptools import setup

ext_modules = []
if not os.environ.get("HOTG_PURE_PYTHON"):
    try:
        from Cython.Build import cythonize
    except ImportError:
        cythonize = None
    if cythonize is not None:
        ext_modules = cythonize(
            ["src/hotg/_core/_cterms.pyx"],
            compiler_directives={"language_level": "3"},
            quiet=True,
        )

setup(ext_modules=ext_modules)

"""Build script: compiles the optional Cython reduction kernel.

The package is fully functional without the extension (a pure-Python
implementation is selected at import time), so a failed compile only
costs speed.  ``pip install -e . --no-build-isolation`` builds it when
Cython and a C compiler are present.
"""

from setuptools import setup

try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        ["src/iwalambda/_kernels/_snf_cy.pyx"],
        compiler_directives={"language_level": "3"},
    )
except ImportError:
    ext_modules = []

setup(ext_modules=ext_modules)

"""Build script: compiles the optional Cython kernel.

The package works without the extension (a pure-Python kernel is selected
at import time), so a missing compiler or Cython only disables the
compiled backend.
"""

from setuptools import setup

try:
    from Cython.Build import cythonize

    ext_modules = cythonize(["src/permsn/_ckernel.pyx"])
except ImportError:
    ext_modules = []

setup(ext_modules=ext_modules)

"""Build script for the optional compiled BFS core.

The package is fully functional without the extension: splitterlab.kernels
falls back to the pure-Python implementation when the compiled module is
missing or when SPLITTERLAB_PURE=1 is set.
"""

import os

from setuptools import Extension, setup

ext_modules = []
if os.environ.get("SPLITTERLAB_NO_EXT") != "1":
    try:
        from Cython.Build import cythonize

        ext_modules = cythonize(
            [Extension("splitterlab._speedups", ["src/splitterlab/_speedups.pyx"])],
            language_level=3,
        )
    except ImportError:
        ext_modules = []

setup(ext_modules=ext_modules)

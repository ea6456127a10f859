import os

from setuptools import Extension, setup

ext_modules = []
if not os.environ.get("SWAPBRIBE_SKIP_EXT"):
    try:
        from Cython.Build import cythonize

        ext_modules = cythonize(
            [Extension("swapbribe._speedups", ["src/swapbribe/_speedups.pyx"])],
            compiler_directives={"language_level": "3"},
        )
    except ImportError:
        # Without Cython the package installs pure-Python; the search core
        # falls back automatically at import time.
        ext_modules = []

setup(ext_modules=ext_modules)

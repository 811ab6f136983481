"""Builds the optional compiled edit-distance kernel.

The package is fully functional without it: conceal_scan.metrics falls
back to the pure-Python implementation when the extension is absent.
"""

from setuptools import Extension, setup

ext_modules = []
try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [Extension("conceal_scan._editdist", ["src/conceal_scan/_editdist.pyx"])],
        compiler_directives={"language_level": "3"},
    )
except ImportError:
    pass

setup(ext_modules=ext_modules)

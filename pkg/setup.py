"""Build script: compiles the optional Cython kernel for the Lambert W core.

The package is fully functional without the extension; mimoee.lambert falls
back to the vectorized NumPy implementation if the import fails.
"""
from setuptools import Extension, setup

ext_modules = []
try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [Extension("mimoee.lambert._wcore", ["src/mimoee/lambert/_wcore.pyx"])],
        language_level=3,
    )
except ImportError:
    pass

setup(ext_modules=ext_modules)

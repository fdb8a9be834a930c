"""Build glue for the optional compiled kernels.

The GF(2) bitmask kernels in icsie/_gf2fast.pyx are a drop-in twin of
icsie/_gf2pure.py; if Cython or a C compiler is missing the build
proceeds without them and the package falls back to the pure kernels
at import time.
"""

from setuptools import setup

ext_modules = []
try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        ["src/icsie/_gf2fast.pyx"],
        language_level=3,
    )
    for ext in ext_modules:
        ext.optional = True
except ImportError:
    pass

setup(ext_modules=ext_modules)

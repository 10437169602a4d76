"""Build the optional compiled kernel; the package falls back to pure Python without it."""
from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:  # no Cython: install the pure-Python path only
    ext_modules = []
else:
    ext_modules = cythonize(
        [Extension("singres._kernels", ["src/singres/_kernels.pyx"])],
        compiler_directives={"language_level": "3", "boundscheck": False, "wraparound": False},
    )

setup(ext_modules=ext_modules)

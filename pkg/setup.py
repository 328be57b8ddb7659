import numpy
from setuptools import Extension, setup

try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [
            Extension(
                "oscspec._kernels._cykernels",
                ["src/oscspec/_kernels/_cykernels.pyx"],
                include_dirs=[numpy.get_include()],
            )
        ],
        language_level=3,
    )
except ImportError:
    # No Cython: the package still works through the pure-numpy kernels.
    ext_modules = []

setup(ext_modules=ext_modules)

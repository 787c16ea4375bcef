"""Optional compiled-kernel build.

The package runs unmodified on the pure-Python kernels; building the
extension just swaps in the compiled twin:

    python setup.py build_ext --inplace

(or ``pip install -e .`` with Cython present, which attempts the same).
A missing compiler or missing Cython downgrades to a plain install.
"""

from setuptools import setup

ext_modules = []
try:
    from Cython.Build import cythonize
    from setuptools import Extension

    ext_modules = cythonize(
        [
            Extension(
                "htaspec._kernels_cy",
                ["src/htaspec/_kernels_cy.pyx"],
                extra_compile_args=["-O3"],
            )
        ],
        language_level=3,
    )
except ImportError:
    pass

setup(ext_modules=ext_modules)

"""Build hook: compiles the optional elimination kernel.

The package works without the compiled module (a pure-Python twin is
selected at import time), so any failure here should not block install.
"""

from setuptools import Extension, setup

ext_modules = []
try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [
            Extension(
                "flatunitary._kernels._elim_cy",
                ["src/flatunitary/_kernels/_elim_cy.pyx"],
                extra_compile_args=["-O2"],
            )
        ],
        language_level="3",
    )
except ImportError:
    pass

setup(ext_modules=ext_modules)

import os

from setuptools import setup

ext_modules = []
if not os.environ.get("OBSTRUCTION_LAB_PURE"):
    try:
        from Cython.Build import cythonize
        from setuptools import Extension

        ext_modules = cythonize(
            [
                Extension(
                    "obstruction_lab.intlinalg._speedups",
                    ["src/obstruction_lab/intlinalg/_speedups.pyx"],
                    extra_compile_args=["-O3"],
                )
            ],
            compiler_directives={"language_level": "3"},
        )
    except ImportError:
        # No Cython: the package runs on the pure-Python kernel.
        ext_modules = []

setup(ext_modules=ext_modules)

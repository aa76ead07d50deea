import os

from setuptools import Extension, setup

ext_modules = []
if os.environ.get("LATSIMPLEX_NO_EXT") != "1":
    try:
        from Cython.Build import cythonize

        ext_modules = cythonize(
            [
                Extension(
                    "latsimplex._kernels._speed",
                    ["src/latsimplex/_kernels/_speed.pyx"],
                    extra_compile_args=["-O2"],
                    optional=True,
                )
            ],
            compiler_directives={"language_level": "3"},
        )
    except ImportError:
        # No Cython available: the pure-Python kernels are used instead.
        ext_modules = []

setup(ext_modules=ext_modules)

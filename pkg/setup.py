"""Build script: compiles the optional elimination kernels when Cython and a
C compiler are available.  The package falls back to the pure-Python kernels
at import time, so a failed extension build never blocks installation."""

import os
import warnings

from setuptools import Extension, setup
from setuptools.command.build_ext import build_ext

try:
    from Cython.Build import cythonize
except ImportError:
    cythonize = None


class OptionalBuildExt(build_ext):
    """Never let a failing extension build fail the install."""

    def run(self):
        try:
            super().run()
        except Exception as exc:
            warnings.warn(f"compiled kernels skipped: {exc}")

    def build_extension(self, ext):
        try:
            super().build_extension(ext)
        except Exception as exc:
            warnings.warn(f"compiled kernels skipped for {ext.name}: {exc}")


if cythonize is not None and os.environ.get("FISCHERLAB_NO_EXT") != "1":
    ext_modules = cythonize(
        [
            Extension(
                "fischerlab._kernels._speedups",
                ["src/fischerlab/_kernels/_speedups.pyx"],
            )
        ],
        language_level=3,
    )
else:
    ext_modules = []

setup(ext_modules=ext_modules, cmdclass={"build_ext": OptionalBuildExt})

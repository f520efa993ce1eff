"""Builds the optional compiled search kernel; the package works without it."""
import os

from setuptools import setup

ext_modules = []
if os.environ.get("REDMAX_NO_EXT") != "1":
    try:
        from Cython.Build import cythonize
        from setuptools import Extension

        ext_modules = cythonize(
            [Extension("redmax._kernels._dfs", ["src/redmax/_kernels/_dfs.pyx"], extra_compile_args=["-O3"])],
            language_level=3,
        )
    except ImportError:
        ext_modules = []

setup(ext_modules=ext_modules)

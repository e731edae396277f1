import sys

from setuptools import Extension, setup

ext_modules = []
try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [Extension("subgrid._kernels", ["src/subgrid/_kernels.pyx"])],
        compiler_directives={"language_level": "3"},
    )
except Exception as exc:  # pure-Python kernels are a full fallback
    print("subgrid: skipping compiled kernels (%s)" % exc, file=sys.stderr)

setup(ext_modules=ext_modules)

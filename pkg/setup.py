"""Build hook for the optional compiled kernel.

The extension is marked optional: when Cython or a C compiler is missing the
package still installs and falls back to the pure-Python kernels.
"""
from setuptools import setup

ext_modules = []
try:
    from Cython.Build import cythonize
    from setuptools import Extension

    ext_modules = cythonize(
        [Extension("relfd._ckernels", ["src/relfd/_ckernels.pyx"], optional=True)],
        compiler_directives={"language_level": "3"},
    )
except ImportError:  # pragma: no cover - build without Cython
    pass

setup(ext_modules=ext_modules)

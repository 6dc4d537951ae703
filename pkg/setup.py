"""Build script.

The compiled kernel extension is optional: if Cython or a C compiler is
unavailable the package installs anyway and falls back to the pure-Python
kernels at import time.
"""

from setuptools import setup

ext_modules = []
try:
    import numpy
    from Cython.Build import cythonize

    ext_modules = cythonize(
        "src/quadsub/_kernels.pyx",
        compiler_directives={"language_level": "3"},
    )
    include_dirs = [numpy.get_include()]
except Exception as exc:  # pragma: no cover - build-environment dependent
    print(f"quadsub: skipping compiled kernels ({exc}); pure-Python fallback will be used")
    include_dirs = []

setup(ext_modules=ext_modules, include_dirs=include_dirs)

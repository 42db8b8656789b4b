import numpy as np
from setuptools import setup

try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        "src/qwrange/_kernels.pyx",
        compiler_directives={"language_level": "3"},
    )
    for ext in ext_modules:
        ext.include_dirs.append(np.get_include())
        # -fcx-limited-range lets gcc inline complex multiplies instead of
        # calling __muldc3; operands here are O(norm(T)), no overflow risk.
        ext.extra_compile_args = ["-O3", "-fcx-limited-range", "-mfma"]
except ImportError:
    ext_modules = []  # pure-Python fallback still works

setup(ext_modules=ext_modules)

import numpy as np
from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:  # pure-Python install; recdiv falls back at import time
    ext_modules = []
else:
    ext_modules = cythonize(
        [
            Extension(
                "recdiv._ckernels",
                ["src/recdiv/_ckernels.pyx"],
                include_dirs=["src/recdiv", np.get_include()],
                extra_compile_args=["-O3"],
                optional=True,
            )
        ],
        compiler_directives={"language_level": "3", "boundscheck": False, "wraparound": False},
    )

setup(ext_modules=ext_modules)

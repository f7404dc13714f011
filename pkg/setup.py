from setuptools import Extension, setup

import numpy as np
from Cython.Build import cythonize

ext = Extension(
    "affinecap.kernels._speed",
    ["src/affinecap/kernels/_speed.pyx"],
    include_dirs=[np.get_include()],
    extra_compile_args=["-O3", "-fopenmp"],
    extra_link_args=["-fopenmp"],
)

setup(
    ext_modules=cythonize(
        [ext],
        compiler_directives={
            "language_level": 3,
            "boundscheck": False,
            "wraparound": False,
            "cdivision": True,
        },
    ),
)

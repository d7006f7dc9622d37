import numpy as np
from Cython.Build import cythonize
from setuptools import Extension, setup

extensions = [
    Extension(
        "golden_games._kernels",
        ["src/golden_games/_kernels.pyx"],
        include_dirs=[np.get_include()],
        extra_compile_args=["-O3"],
        define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
        # the package still imports (numpy fallback) if the compiler is missing
        optional=True,
    )
]

setup(
    ext_modules=cythonize(
        extensions,
        language_level="3",
        compiler_directives=dict(
            boundscheck=False,
            wraparound=False,
            cdivision=True,
            initializedcheck=False,
        ),
    )
)

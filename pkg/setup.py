import os

from setuptools import Extension, setup

# The compiled kernel is optional: the package falls back to the numpy
# evaluator when the extension is absent (see cone_ray._kernels).
extensions = []
if not os.environ.get("CONE_RAY_SKIP_EXT"):
    try:
        import numpy as np
        from Cython.Build import cythonize

        extensions = cythonize(
            [
                Extension(
                    "cone_ray._kernels._evalc",
                    ["src/cone_ray/_kernels/_evalc.pyx"],
                    include_dirs=[np.get_include()],
                    define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
                    extra_compile_args=["-O3"],
                )
            ],
            compiler_directives={"language_level": "3"},
        )
    except ImportError:
        extensions = []

setup(ext_modules=extensions)

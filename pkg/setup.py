import sys

from setuptools import Extension, setup

# The compiled statevector kernels are optional: the package falls back to
# the numpy implementation in symlat._kernels_py when the extension is
# missing, so a failed cythonize must not break installation.
ext_modules = []
try:
    import numpy as np
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [
            Extension(
                "symlat._kernels",
                ["src/symlat/_kernels.pyx"],
                include_dirs=[np.get_include()],
                define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
                extra_compile_args=["-O3"],
            )
        ],
        language_level=3,
    )
except Exception as exc:  # pragma: no cover
    print(f"symlat: building without compiled kernels ({exc})", file=sys.stderr)

setup(ext_modules=ext_modules)

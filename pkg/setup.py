"""Build script for the optional compiled ACS kernel.

The extension uses typed memoryviews only, so no numpy headers are needed at
build time. If Cython is unavailable the package installs without the
extension and the pure numpy kernels are used instead.
"""

from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:
    ext_modules = []
else:
    ext_modules = cythonize(
        [
            Extension(
                "tailbite.kernels._acs",
                ["src/tailbite/kernels/_acs.pyx"],
                extra_compile_args=["-O3"],
            )
        ],
        compiler_directives={"language_level": "3"},
    )

setup(ext_modules=ext_modules)

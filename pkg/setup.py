"""Build script: compiles the optional Cython kernel extension.

The package is fully functional without the extension (a numpy fallback is
selected at import); any compilation failure downgrades to a warning so that
pure-Python installs always succeed.
"""

import warnings

from setuptools import setup
from setuptools.command.build_ext import build_ext


def extensions():
    try:
        import numpy
        from Cython.Build import cythonize
        from setuptools import Extension
    except ImportError as exc:
        warnings.warn(f"speedups not built ({exc}); using the numpy fallback")
        return []
    return cythonize(
        [
            Extension(
                "paretoscope.kernels._speedups",
                ["src/paretoscope/kernels/_speedups.pyx"],
                include_dirs=[numpy.get_include()],
                extra_compile_args=["-O3"],
                define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
            )
        ],
        language_level=3,
    )


class optional_build_ext(build_ext):
    """Never fail the install over a missing compiler toolchain."""

    def run(self):
        try:
            super().run()
        except Exception as exc:
            warnings.warn(f"speedups not built ({exc}); using the numpy fallback")

    def build_extension(self, ext):
        try:
            super().build_extension(ext)
        except Exception as exc:
            warnings.warn(f"speedups not built ({exc}); using the numpy fallback")


setup(ext_modules=extensions(), cmdclass={"build_ext": optional_build_ext})

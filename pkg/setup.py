"""Build script for the optional compiled gate kernels.

The package works without the extension (a NumPy fallback is selected at
import time); building it is strongly recommended for sweep workloads.
"""

from setuptools import Extension, setup
from setuptools.command.build_ext import build_ext


class optional_build_ext(build_ext):
    """Build the extension if possible, otherwise install pure-Python."""

    def run(self):
        try:
            super().run()
        except Exception as exc:  # missing compiler, broken toolchain
            print(f"warning: compiled kernels skipped ({exc}); "
                  "falling back to NumPy kernels")

    def build_extension(self, ext):
        try:
            super().build_extension(ext)
        except Exception as exc:
            print(f"warning: building {ext.name} failed ({exc}); "
                  "falling back to NumPy kernels")


try:
    from Cython.Build import cythonize

    extensions = cythonize(
        [
            Extension(
                "wsqaoa._kernels",
                ["src/wsqaoa/_kernels.pyx"],
                extra_compile_args=["-O3", "-ffast-math", "-march=native"],
                # -ffast-math vectorizes sin/cos via libmvec; link it explicitly
                extra_link_args=["-lmvec", "-lm"],
            )
        ],
        compiler_directives={
            "language_level": "3",
            "boundscheck": False,
            "wraparound": False,
            "cdivision": True,
            "initializedcheck": False,
        },
    )
except ImportError:
    extensions = []

setup(ext_modules=extensions, cmdclass={"build_ext": optional_build_ext})

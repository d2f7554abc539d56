import sys

from setuptools import Extension, setup
from setuptools.command.build_ext import build_ext


class OptionalBuildExt(build_ext):
    """Build the compiled census kernel if the toolchain allows.

    The package is fully functional without it; parmirror.kernels falls back
    to the pure-Python kernel at import time.
    """

    def run(self):
        try:
            super().run()
        except Exception as exc:
            print(f"parmirror: skipping compiled kernel ({exc})", file=sys.stderr)

    def build_extension(self, ext):
        try:
            super().build_extension(ext)
        except Exception as exc:
            print(f"parmirror: skipping {ext.name} ({exc})", file=sys.stderr)


ext_modules = []
try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [Extension("parmirror._census_cy", ["src/parmirror/_census_cy.pyx"])],
        language_level="3",
    )
except ImportError:
    print("parmirror: Cython not available, building without compiled kernel", file=sys.stderr)

setup(ext_modules=ext_modules, cmdclass={"build_ext": OptionalBuildExt})

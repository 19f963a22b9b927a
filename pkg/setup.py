"""Build the optional compiled scan kernel.

The package works without it; ``cuboidsearch.backend`` falls back to the
pure-Python kernel when ``cuboidsearch._kernel`` cannot be imported.
"""
import os
import sys

from setuptools import Extension, setup
from setuptools.command.build_ext import build_ext


class optional_build_ext(build_ext):
    def run(self):
        try:
            super().run()
        except Exception as exc:  # noqa: BLE001
            print(f"warning: compiled kernel not built ({exc}); using pure Python", file=sys.stderr)

    def build_extension(self, ext):
        try:
            super().build_extension(ext)
        except Exception as exc:  # noqa: BLE001
            print(f"warning: failed to build {ext.name} ({exc})", file=sys.stderr)


ext_modules = []
if not os.environ.get("CUBOIDSEARCH_NO_EXT"):
    try:
        from Cython.Build import cythonize
    except ImportError:
        print("warning: Cython missing; compiled kernel skipped", file=sys.stderr)
    else:
        ext_modules = cythonize(
            [Extension("cuboidsearch._kernel", ["src/cuboidsearch/_kernel.pyx"],
                       extra_compile_args=["-O3"])],
            compiler_directives={"language_level": "3"},
        )

setup(ext_modules=ext_modules, cmdclass={"build_ext": optional_build_ext})

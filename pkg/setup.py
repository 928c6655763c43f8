"""Build the optional Cython kernels.

The extension is marked optional: if Cython or a C compiler is missing the
package still installs and runs on the pure-Python kernels.
"""

from setuptools import Extension, setup

try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [
            Extension(
                "youngshap._ckernels",
                ["src/youngshap/_ckernels.pyx"],
                extra_compile_args=["-O3"],
                optional=True,
            )
        ],
        compiler_directives={"language_level": "3", "boundscheck": False, "wraparound": False},
    )
except Exception as exc:  # pragma: no cover - Cython missing or failing
    print(f"warning: building without compiled kernels ({exc})")
    ext_modules = []

setup(ext_modules=ext_modules)

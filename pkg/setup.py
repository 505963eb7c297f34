"""Build script. The compiled quadrature core is optional: if Cython or a C
compiler is unavailable the package installs anyway and falls back to the
pure NumPy backend at import time."""

from setuptools import setup

ext_modules = []
try:
    from Cython.Build import cythonize
    from setuptools import Extension

    ext_modules = cythonize(
        [
            Extension(
                "radialprop._core",
                ["src/radialprop/_core.pyx"],
                extra_compile_args=["-O3"],
            )
        ],
        compiler_directives={
            "boundscheck": False,
            "wraparound": False,
            "cdivision": True,
            "language_level": 3,
        },
    )
except Exception as exc:  # pragma: no cover - depends on build host
    print(f"building without compiled core: {exc}")

setup(ext_modules=ext_modules)

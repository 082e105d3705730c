from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:
    # Source tree without Cython: install pure-Python only. The counting
    # engine falls back to supersat._purecount at import time.
    ext_modules = []
else:
    ext_modules = cythonize(
        [
            Extension(
                "supersat._fastcount",
                ["src/supersat/_fastcount.pyx"],
                extra_compile_args=["-O3"],
            )
        ],
        compiler_directives={"language_level": "3"},
    )

setup(ext_modules=ext_modules)

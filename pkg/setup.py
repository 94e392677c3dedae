from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:
    # The package falls back to the numpy lattice kernels at import time.
    ext_modules = []
else:
    ext_modules = cythonize(
        [Extension("mrex._latticec", ["src/mrex/_latticec.pyx"])],
        compiler_directives={
            "language_level": "3",
            "boundscheck": False,
            "wraparound": False,
            "cdivision": True,
        },
    )

setup(ext_modules=ext_modules)

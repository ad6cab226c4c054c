import os

from setuptools import Extension, setup

ext_modules = []
if not os.environ.get("TWISTKEY_NO_EXT"):
    try:
        from Cython.Build import cythonize
    except ImportError:
        cythonize = None
    if cythonize is not None:
        ext_modules = cythonize(
            [
                Extension(
                    "twistkey._kernels._ccore",
                    ["src/twistkey/_kernels/_ccore.pyx"],
                    extra_compile_args=["-O3"],
                    optional=True,
                )
            ],
            compiler_directives={"language_level": "3"},
        )

setup(ext_modules=ext_modules)

"""Build hook for the optional compiled kernels.

The package works without a compiler: when Cython or a C toolchain is
missing the extension is skipped and ``qschur._kernels`` falls back to the
pure-Python implementation at import time.
"""

from setuptools import setup

ext_modules = []
try:
    from Cython.Build import cythonize
    from setuptools import Extension

    ext_modules = cythonize(
        [Extension("qschur._ckernels", ["src/qschur/_ckernels.pyx"], extra_compile_args=["-O2"])],
        compiler_directives={"language_level": 3},
        quiet=True,
    )
except ImportError:
    pass

setup(ext_modules=ext_modules)

"""Build script: compiles the optional Cython kernel for Laurent arithmetic.

The package works without the extension (a pure-Python kernel with the same
interface is selected at import time), so compilation failures are not fatal.
Set WBLOCKS_NO_EXT=1 to skip the extension entirely.
"""

import os

from setuptools import setup

ext_modules = []
if os.environ.get("WBLOCKS_NO_EXT") != "1":
    try:
        from Cython.Build import cythonize

        ext_modules = cythonize(
            ["src/wblocks/_laurent_cy.pyx"],
            compiler_directives={"language_level": "3"},
        )
    except Exception as exc:  # pragma: no cover - build environment dependent
        print(f"wblocks: skipping Cython kernel ({exc}); pure-Python kernel will be used")
        ext_modules = []

setup(ext_modules=ext_modules)

"""Build script: compiles the optional state-sum kernel.

The package is fully functional without the extension (a pure-Python
kernel with identical semantics is selected at import time), so any
failure to compile is non-fatal.
"""

from setuptools import Extension, setup

ext_modules = []
try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [Extension("mgd._statesum", ["src/mgd/_statesum.pyx"])],
        compiler_directives={"language_level": "3"},
    )
except Exception as exc:  # pragma: no cover - build-environment dependent
    print(f"mgd: building without compiled kernel ({exc})")

setup(ext_modules=ext_modules)

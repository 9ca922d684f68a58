"""Select the compiled kernels when available, else the pure-Python ones.

Set ``QSCHUR_PURE_PYTHON=1`` to force the fallback.
"""

import os

BACKEND = "python"

if os.environ.get("QSCHUR_PURE_PYTHON", "") not in ("", "0"):
    from ._pykernels import (act_generator, poly_add, poly_axpy, poly_mul,
                             poly_scale_shift, poly_sub)
else:
    try:
        from ._ckernels import (act_generator, poly_add, poly_axpy, poly_mul,
                                poly_scale_shift, poly_sub)
        BACKEND = "cython"
    except ImportError:  # extension not built
        from ._pykernels import (act_generator, poly_add, poly_axpy, poly_mul,
                                 poly_scale_shift, poly_sub)

__all__ = ["BACKEND", "act_generator", "poly_add", "poly_axpy", "poly_mul",
           "poly_scale_shift", "poly_sub"]

"""Backend selection for the hot batch kernels.

SEPMAPS_BACKEND=numpy forces the pure-numpy path; SEPMAPS_BACKEND=numba
requires numba.  Unset, numba is used when importable and numpy otherwise.
"""

import os

_requested = os.environ.get("SEPMAPS_BACKEND", "").strip().lower()
if _requested not in ("", "numba", "numpy"):
    raise RuntimeError(f"SEPMAPS_BACKEND must be 'numba' or 'numpy', got {_requested!r}")

if _requested == "numpy":
    from . import numpy_backend as _impl
else:
    try:
        from . import numba_backend as _impl
    except ImportError:
        if _requested == "numba":
            raise
        from . import numpy_backend as _impl

BACKEND = _impl.BACKEND_NAME

reduction_margins = _impl.reduction_margins
bh2_margins = _impl.bh2_margins
four_param_margins = _impl.four_param_margins
ando_2xn_margins = _impl.ando_2xn_margins
ando_mxn_margins = _impl.ando_mxn_margins

__all__ = [
    "BACKEND",
    "reduction_margins",
    "bh2_margins",
    "four_param_margins",
    "ando_2xn_margins",
    "ando_mxn_margins",
]

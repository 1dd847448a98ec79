"""Backend selection for the hot loops.

The compiled extension is used when it imports; set ``SPINLINK_PURE_PYTHON=1``
to force the pure-Python fallback.
"""
import os

from . import _pykernels

BACKEND = "python"
if os.environ.get("SPINLINK_PURE_PYTHON", "") not in ("1", "true", "yes"):
    try:
        from . import _ckernels as _impl

        BACKEND = "cython"
    except ImportError:  # extension not built
        _impl = _pykernels
else:
    _impl = _pykernels

q_table = _impl.q_table
coset_points = _impl.coset_points
theta_coset = _impl.theta_coset

__all__ = ["BACKEND", "q_table", "coset_points", "theta_coset"]

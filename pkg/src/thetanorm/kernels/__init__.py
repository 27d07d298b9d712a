"""Batch evaluation kernels for Theta and its coboundary.

The compiled extension is used when it was built; otherwise the numpy
implementation is selected. Both expose the same functions.
"""

try:
    from . import _ckernels as _impl
    BACKEND = "cython"
except ImportError:  # extension not built
    from . import _pykernels as _impl
    BACKEND = "numpy"

from . import _pykernels as fallback

theta30_batch = _impl.theta30_batch
theta120_batch = _impl.theta120_batch
dtheta30_batch = _impl.dtheta30_batch

__all__ = ["BACKEND", "fallback", "theta30_batch", "theta120_batch", "dtheta30_batch"]

"""Backend selection for the truncated-series kernels.

The compiled extension ``harmlab._ckernels`` is used when it was built;
otherwise the numpy implementation in ``harmlab._pykernels`` takes over.
Setting ``HARMLAB_PURE_PYTHON=1`` forces the fallback.
"""
import os

import numpy as np

from . import _pykernels

try:
    from . import _ckernels
except ImportError:  # extension not built
    _ckernels = None

BACKENDS = {"python": _pykernels}
if _ckernels is not None:
    BACKENDS["cython"] = _ckernels

if os.environ.get("HARMLAB_PURE_PYTHON", "") not in ("", "0") or _ckernels is None:
    _impl = _pykernels
    BACKEND = "python"
else:
    _impl = _ckernels
    BACKEND = "cython"


def set_backend(name):
    """Switch the process-wide kernel backend (used by benchmarks and tests)."""
    global _impl, BACKEND
    try:
        _impl = BACKENDS[name]
    except KeyError:
        raise ValueError(f"backend {name!r} not available; have {sorted(BACKENDS)}") from None
    BACKEND = name


def _c2(a):
    return np.ascontiguousarray(a, dtype=np.complex128)


def mul(a, b):
    return _impl.mul(_c2(a), _c2(b))


def recip(a):
    return _impl.recip(_c2(a))


def exp(a):
    return _impl.exp(_c2(a))


def log(a):
    return _impl.log(_c2(a))


def taylor_shift(coeffs, z, order):
    return _impl.taylor_shift(_c2(coeffs), _c2(z), int(order))

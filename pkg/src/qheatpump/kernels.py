"""Backend selection for the hot loops.

The compiled extension is used when it was built; setting the environment
variable ``QHEATPUMP_PURE_PYTHON=1`` forces the numpy fallback.
"""
import os

import numpy as np

from . import _kernels_py

BACKEND = "python"
_impl = _kernels_py

if os.environ.get("QHEATPUMP_PURE_PYTHON", "0") in ("", "0"):
    try:
        from . import _kernels as _impl  # noqa: F811
        BACKEND = "cython"
    except ImportError:
        pass


def _vec(a):
    return np.ascontiguousarray(a, dtype=np.float64)


def propagate(lam, rho_s, dt, rho0, backend=None):
    impl = _pick(backend)
    lam = _vec(lam)
    return impl.propagate(lam, _vec(np.broadcast_to(rho_s, lam.shape)), float(dt), float(rho0))


def nonadiabatic_sums(A, lam, rho_s, dt, d1, backend=None):
    impl = _pick(backend)
    return impl.nonadiabatic_sums(_vec(A), _vec(lam), _vec(rho_s), float(dt), float(d1))


def available_backends():
    out = ["python"]
    if BACKEND == "cython" or _compiled() is not None:
        out.append("cython")
    return out


def _compiled():
    try:
        from . import _kernels
    except ImportError:
        return None
    return _kernels


def _pick(backend):
    if backend is None:
        return _impl
    if backend == "python":
        return _kernels_py
    if backend == "cython":
        mod = _compiled()
        if mod is None:
            raise ImportError("compiled kernels are not built; run `pip install -e .`")
        return mod
    raise ValueError(f"unknown backend {backend!r}")

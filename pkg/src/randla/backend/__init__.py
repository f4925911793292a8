"""Kernel backend selection.

The hot factorization kernels exist twice: a Cython extension
(``_ckernels``) and a pure NumPy twin (``_pykernels``). By default the
extension is used when it compiled; set ``RANDLA_BACKEND=python`` or
``RANDLA_BACKEND=cython`` to force a choice (forcing ``cython`` raises if
the extension is missing). ``benchmarks/backend_benchmark.py`` compares the
two.
"""

import os

from randla.backend import _pykernels

_requested = os.environ.get("RANDLA_BACKEND", "auto").lower()

if _requested not in ("auto", "cython", "python"):
    raise ValueError(
        f"RANDLA_BACKEND must be auto, cython or python, got {_requested!r}"
    )

_impl = None
if _requested in ("auto", "cython"):
    try:
        from randla.backend import _ckernels as _impl
    except ImportError:
        if _requested == "cython":
            raise
        _impl = None
if _impl is None:
    _impl = _pykernels

ACTIVE_BACKEND = _impl.BACKEND_NAME

householder_qr = _impl.householder_qr
column_pivoted_qr = _impl.column_pivoted_qr
golub_kahan_svd = _impl.golub_kahan_svd
jacobi_sym_eig = _impl.jacobi_sym_eig

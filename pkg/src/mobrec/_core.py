"""Kernel backend selection.

The compiled extension is used when it imports; set ``MOBREC_PURE=1`` to force
the pure Python kernels.
"""

import os

from . import _pykernels

BACKEND = "python"

if os.environ.get("MOBREC_PURE", "") not in ("1", "true", "yes"):
    try:
        from . import _kernels as _impl

        BACKEND = "cython"
    except ImportError:  # extension not built
        _impl = _pykernels
else:
    _impl = _pykernels

spf_sieve = _impl.spf_sieve
window_edges = _impl.window_edges
padic_colors = _impl.padic_colors
parity_colors = _impl.parity_colors
additive_table = _impl.additive_table

__all__ = [
    "BACKEND",
    "spf_sieve",
    "window_edges",
    "padic_colors",
    "parity_colors",
    "additive_table",
]

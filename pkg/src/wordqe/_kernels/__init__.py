"""Edit-distance kernels.

The numba build is used when numba imports and ``WORDQE_DISABLE_NUMBA`` is
unset (or ``0``); otherwise the pure numpy build is used. Both expose:

``edit_matrix(a, b)``
    full (m+1, n+1) DP table of unit-cost edit distance.
``edit_cost(a, b)``
    bottom-right entry of that table.
``align_ops(a, b)``
    backtrace as op codes in left-to-right order.
``best_shift(a, b, max_span, max_dist)``
    (cost, start, length, dest) of the cheapest block shift of ``a``.

Inputs are int64 token-id arrays.
"""

import os

from . import _numpy as numpy_kernels

OP_MATCH, OP_SUB, OP_INS, OP_DEL = 0, 1, 2, 3


def _numba_wanted() -> bool:
    return os.environ.get("WORDQE_DISABLE_NUMBA", "0").strip().lower() in ("", "0", "false", "no")


try:
    from . import _numba as numba_kernels
except ImportError:  # pragma: no cover - numba missing
    numba_kernels = None

if numba_kernels is not None and _numba_wanted():
    backend = numba_kernels
    BACKEND = "numba"
else:
    backend = numpy_kernels
    BACKEND = "numpy"

edit_matrix = backend.edit_matrix
edit_cost = backend.edit_cost
align_ops = backend.align_ops
best_shift = backend.best_shift

__all__ = [
    "BACKEND", "OP_MATCH", "OP_SUB", "OP_INS", "OP_DEL",
    "edit_matrix", "edit_cost", "align_ops", "best_shift",
    "numpy_kernels", "numba_kernels",
]

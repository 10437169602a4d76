"""Backend selection for the hot kernels.

The compiled extension is used when it was built and ``SINGRES_PURE_PYTHON``
is unset; otherwise the pure-Python fallback is used.  Both expose the same
functions with identical tie-breaking, so results never depend on the backend.
"""
import os

from . import _kernels_py

_INT64_SAFE = 1 << 40

try:
    if os.environ.get("SINGRES_PURE_PYTHON"):
        raise ImportError("pure Python requested")
    from . import _kernels as _compiled
except ImportError:
    _compiled = None

BACKEND = "compiled" if _compiled is not None else "python"


def min_cost_change(coins, costs, limit):
    """See :func:`singres._kernels_py.min_cost_change`."""
    if _compiled is not None and limit < _INT64_SAFE and all(
        0 < c < _INT64_SAFE for c in coins
    ) and all(0 <= w < _INT64_SAFE // max(limit, 1) for w in costs):
        return _compiled.min_cost_change(list(coins), list(costs), limit)
    return _kernels_py.min_cost_change(coins, costs, limit)

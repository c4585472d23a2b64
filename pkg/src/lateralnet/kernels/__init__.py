"""Hot numeric kernels.

The compiled numba path is used by default. Setting ``LATERALNET_NO_NUMBA=1``
(or numba being unavailable) selects the pure-numpy path. Both expose
``distance_matrix``, ``distance_histogram`` and ``brandes`` with identical
results; integer outputs are bit-identical across paths.
"""

import os

from ._common import DIRECTED, LATERAL, arc_adjacency, dense_adjacency, group_by
from . import _numpy as numpy_impl

try:
    if os.environ.get("LATERALNET_NO_NUMBA", "").strip() not in ("", "0"):
        raise ImportError("disabled by LATERALNET_NO_NUMBA")
    from . import _numba as numba_impl
except ImportError:
    numba_impl = None

backend = numba_impl if numba_impl is not None else numpy_impl
BACKEND_NAME = "numba" if numba_impl is not None else "numpy"

distance_matrix = backend.distance_matrix
distance_histogram = backend.distance_histogram
brandes = backend.brandes

__all__ = [
    "BACKEND_NAME", "DIRECTED", "LATERAL", "arc_adjacency", "dense_adjacency", "group_by",
    "distance_matrix", "distance_histogram", "brandes", "numpy_impl", "numba_impl",
]

"""Backend selection for the permutation-enumeration kernel.

The compiled Cython kernel is used when its extension module was built;
otherwise the pure-Python reference implementation takes over with the
same semantics. Setting the environment variable ``FOCKKREIN_PURE_PYTHON``
to a nonempty value forces the fallback. ``KERNEL_BACKEND`` records which
backend is active.
"""

import os

from . import _cycles_py as python_kernel
from ._cycles_py import pairing_cycle_type

if os.environ.get("FOCKKREIN_PURE_PYTHON"):
    cycle_type_counts = python_kernel.cycle_type_counts
    KERNEL_BACKEND = "python"
else:
    try:
        from ._cycles_cy import cycle_type_counts

        KERNEL_BACKEND = "compiled"
    except ImportError:  # extension not built; fall back to pure Python
        cycle_type_counts = python_kernel.cycle_type_counts
        KERNEL_BACKEND = "python"

__all__ = [
    "cycle_type_counts",
    "pairing_cycle_type",
    "python_kernel",
    "KERNEL_BACKEND",
]

"""Kernel backend selection.

The compiled Cython kernels are used when importable; otherwise, or when
``NREQ_TORQUE_PURE_PYTHON`` is set to a non-empty value, the pure-Python
implementation is used.  Both expose an identical function set.
"""

import os

if os.environ.get("NREQ_TORQUE_PURE_PYTHON"):
    from . import _kernels_py as kernels
    BACKEND = "python"
else:
    try:
        from . import _kernels as kernels
        BACKEND = "cython"
    except ImportError:
        from . import _kernels_py as kernels
        BACKEND = "python"

digamma = kernels.digamma
trigamma = kernels.trigamma
digamma_tail = kernels.digamma_tail
trigamma_tail = kernels.trigamma_tail
gk15_panel = kernels.gk15_panel

__all__ = ["BACKEND", "kernels", "digamma", "trigamma", "digamma_tail",
           "trigamma_tail", "gk15_panel"]

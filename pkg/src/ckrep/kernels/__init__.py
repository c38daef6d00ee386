"""Floating-point hot loops with a compiled core and a pure-Python fallback.

The compiled ``_ckernels`` extension is used when importable; set the
environment variable ``CKREP_PURE_PYTHON=1`` to force the fallback.
``BACKEND`` names the active implementation.
"""

import os

from . import _pykernels as python_backend

compiled_backend = None
if not os.environ.get("CKREP_PURE_PYTHON"):
    try:
        from . import _ckernels as compiled_backend
    except ImportError:  # extension not built
        compiled_backend = None

_active = compiled_backend if compiled_backend is not None else python_backend
BACKEND = "cython" if compiled_backend is not None else "python"

power_iteration = _active.power_iteration
t_sequence = _active.t_sequence
first_below = _active.first_below
word_sum = _active.word_sum

__all__ = ["BACKEND", "power_iteration", "t_sequence", "first_below", "word_sum",
           "python_backend", "compiled_backend"]

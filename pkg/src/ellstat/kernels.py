"""Census kernel selection: compiled core if importable, else pure Python.

Set ``ELLSTAT_PURE=1`` to force the fallback.
"""
import os

from . import _pykernels as python_kernels

compiled_kernels = None
if os.environ.get("ELLSTAT_PURE") != "1":
    try:
        from . import _kernels as compiled_kernels
    except ImportError:
        compiled_kernels = None

active = compiled_kernels or python_kernels
IMPLEMENTATION = active.IMPLEMENTATION
orbits = active.orbits
invariants = active.invariants
count_points = active.count_points
group_exponent = active.group_exponent
discriminant = active.discriminant

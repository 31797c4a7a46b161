"""Kernel selection.

The compiled module is used when it imports; otherwise, or when the
environment variable ``PLANARSSSP_PURE`` is set to a non-empty value other
than ``0``, the pure-Python module is used.  Both expose ``dijkstra``,
``bellman_ford``, ``colmin_rect`` and ``colmin_cyclic``.
"""

import os

from . import _pykernels as pure

compiled = None
if os.environ.get("PLANARSSSP_PURE", "") in ("", "0"):
    try:
        from . import _ckernels as compiled
    except ImportError:  # pragma: no cover - depends on build
        compiled = None

active = compiled if compiled is not None else pure
BACKEND = "compiled" if compiled is not None else "python"

dijkstra = active.dijkstra
bellman_ford = active.bellman_ford
colmin_rect = active.colmin_rect
colmin_cyclic = active.colmin_cyclic

"""Backend selection for the BFS core.

Imports the compiled extension when available, otherwise the pure-Python
twin. SPLITTERLAB_PURE=1 forces the fallback (used by the benchmark and
by CI to exercise both code paths).
"""

import os

if os.environ.get("SPLITTERLAB_PURE") == "1":
    from . import _speedups_py as _impl
else:
    try:
        from . import _speedups as _impl  # type: ignore[attr-defined]
    except ImportError:
        from . import _speedups_py as _impl

bfs_fill = _impl.bfs_fill
bfs_fill_masked = _impl.bfs_fill_masked
all_pairs_fill = _impl.all_pairs_fill


def backend_name() -> str:
    return _impl.BACKEND

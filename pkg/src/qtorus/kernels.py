"""Backend selection for the isotropic search kernel.

The compiled extension is used when it imports; ``QTORUS_PURE_PYTHON=1``
forces the numpy fallback.  Both backends return identical results.  The
compiled kernel works in checked 64-bit arithmetic and defers to the fallback,
which switches to Python integers, when a value would overflow.
"""

from __future__ import annotations

import os

from . import _isotropic_py

try:
    from . import _isotropic as _compiled
except ImportError:  # extension not built
    _compiled = None

BACKENDS = {"python": _isotropic_py.isotropic_search}
if _compiled is not None:
    BACKENDS["compiled"] = _compiled.isotropic_search


def compiled_available() -> bool:
    return "compiled" in BACKENDS


def default_backend() -> str:
    if os.environ.get("QTORUS_PURE_PYTHON", "") not in ("", "0"):
        return "python"
    return "compiled" if compiled_available() else "python"


def isotropic_search(V, forms, max_rank: int, node_limit: int, roots=None, backend: str | None = None):
    name = backend or default_backend()
    try:
        fn = BACKENDS[name]
    except KeyError:
        raise ValueError(f"backend {name!r} is not available; have {sorted(BACKENDS)}") from None
    try:
        return fn(V, forms, max_rank, node_limit, roots)
    except OverflowError:
        if name == "python":
            raise
        return BACKENDS["python"](V, forms, max_rank, node_limit, roots)

"""Kernel selection.

The compiled kernel is used when importable; set ``CUBOIDSEARCH_BACKEND``
to ``python`` to force the fallback, or ``compiled`` to require the extension.
"""
from __future__ import annotations

import os

from . import _pykernel

try:
    from . import _kernel as _compiled
except ImportError:  # extension not built
    _compiled = None

KERNELS = {"python": _pykernel}
if _compiled is not None:
    KERNELS["compiled"] = _compiled


def get_kernel(name: str | None = None):
    """Return a kernel module by name; default honours the environment."""
    name = name or os.environ.get("CUBOIDSEARCH_BACKEND") or ("compiled" if _compiled else "python")
    try:
        return KERNELS[name]
    except KeyError:
        raise ImportError(f"kernel {name!r} unavailable (have: {', '.join(KERNELS)})") from None


kernel = get_kernel()

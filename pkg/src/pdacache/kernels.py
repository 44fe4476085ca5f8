"""Hot loops, backed by the compiled ``_speedups`` extension when it was
built and by ``_purepy`` otherwise.

Set ``PDACACHE_PURE_PYTHON=1`` to force the fallback.
"""

import os

import numpy as np

from pdacache import _purepy

if os.environ.get("PDACACHE_PURE_PYTHON"):
    _impl = _purepy
else:
    try:
        from pdacache import _speedups as _impl
    except ImportError:  # extension not built
        _impl = _purepy

BACKEND = "cython" if _impl is not _purepy else "python"

_BACKENDS = {"python": _purepy}
if BACKEND == "cython":
    _BACKENDS["cython"] = _impl


def backend(name=None):
    """Return the kernel module for ``name`` (default: the active one)."""
    if name is None:
        return _impl
    try:
        return _BACKENDS[name]
    except KeyError:
        raise ValueError(f"kernel backend {name!r} unavailable") from None


def as_cells(rows, cols, offsets):
    return (
        np.ascontiguousarray(rows, dtype=np.intc),
        np.ascontiguousarray(cols, dtype=np.intc),
        np.ascontiguousarray(offsets, dtype=np.intc),
    )


def label_pair_violations(rows, cols, star, offsets, impl=None):
    rows, cols, offsets = as_cells(rows, cols, offsets)
    star = np.ascontiguousarray(star, dtype=np.uint8)
    return (impl or _impl).label_pair_violations(rows, cols, star, offsets)


def c4_violations(base, star, impl=None):
    base = np.ascontiguousarray(base, dtype=np.intc)
    star = np.ascontiguousarray(star, dtype=np.uint8)
    return (impl or _impl).c4_violations(base, star)


def xor_into(dst, src, impl=None):
    (impl or _impl).xor_into(dst, src)

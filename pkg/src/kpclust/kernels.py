"""Backend selection for the hot loops.

The compiled ``_ckernels`` extension is used when it was built; otherwise,
or when ``KPCLUST_PURE_PYTHON`` is set to a non-empty value other than
``0``, the numpy implementation in ``_pykernels`` is used.
"""

import os

from . import _pykernels

_force_py = os.environ.get("KPCLUST_PURE_PYTHON", "") not in ("", "0")

if _force_py:
    _impl = _pykernels
else:
    try:
        from . import _ckernels as _impl
    except ImportError:
        _impl = _pykernels

BACKEND = "cython" if _impl is not _pykernels else "python"

subset_scan = _impl.subset_scan
mask_partition_dp = _impl.mask_partition_dp
interval_dp = _impl.interval_dp
simulate_chain = _impl.simulate_chain


def compiled():
    """The compiled module, or ``None`` if it is unavailable."""
    try:
        from . import _ckernels
    except ImportError:
        return None
    return _ckernels

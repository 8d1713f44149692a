"""Backend selection for the integer kernels.

The compiled extension ``_ckernels`` is used when it imports; otherwise the
numpy fallback in ``_pykernels`` is used. Set ``CHAINGROUP_PURE=1`` to force
the fallback.
"""

import os

from . import _pykernels

if os.environ.get("CHAINGROUP_PURE", "") not in ("", "0"):
    _impl = _pykernels
else:
    try:
        from . import _ckernels as _impl
    except ImportError:  # extension not built
        _impl = _pykernels

BACKEND = "compiled" if _impl is not _pykernels else "python"

conjugacy_labels = _impl.conjugacy_labels
class_coefficients = _impl.class_coefficients
first_nonassociative = _impl.first_nonassociative
fixpoint_closure = _impl.fixpoint_closure


def backends():
    """Return ``{name: module}`` for every importable backend."""
    out = {"python": _pykernels}
    try:
        from . import _ckernels
    except ImportError:
        pass
    else:
        out["compiled"] = _ckernels
    return out

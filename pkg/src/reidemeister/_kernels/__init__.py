"""Cayley-table kernels with a compiled fast path.

The Cython extension is used when it was built; otherwise the pure-Python
module with identical signatures is used.  Setting
``REIDEMEISTER_PURE_PYTHON=1`` forces the fallback.
"""

import os

from . import _pykernels

BACKEND = "python"

if os.environ.get("REIDEMEISTER_PURE_PYTHON", "") not in ("", "0"):
    _impl = _pykernels
else:
    try:
        from . import _ckernels as _impl

        BACKEND = "cython"
    except ImportError:
        _impl = _pykernels

twisted_orbits = _impl.twisted_orbits
is_homomorphism = _impl.is_homomorphism
associative_on = _impl.associative_on
coset_conjugacy_labels = _impl.coset_conjugacy_labels

python_backend = _pykernels


def compiled_backend():
    """The compiled module, or None when it is not available."""
    try:
        from . import _ckernels
    except ImportError:
        return None
    return _ckernels


__all__ = [
    "BACKEND",
    "twisted_orbits",
    "is_homomorphism",
    "associative_on",
    "coset_conjugacy_labels",
    "python_backend",
    "compiled_backend",
]

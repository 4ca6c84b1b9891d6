"""Kernel backend selection.

The compiled extension is used when it was built and ``TACIT_AUDIT_PURE`` is
unset; otherwise the pure-Python module is used. Both expose the same four
functions with bit-identical results.
"""

import os

from . import _pykernels

BACKEND = "python"
_impl = _pykernels

if not os.environ.get("TACIT_AUDIT_PURE"):
    try:
        from . import _ckernels as _impl  # type: ignore[no-redef]
        BACKEND = "cython"
    except ImportError:
        pass

xorshift64star = _impl.xorshift64star
sample_indices = _impl.sample_indices
levenshtein = _impl.levenshtein
similar_pairs = _impl.similar_pairs

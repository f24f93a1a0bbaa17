"""Kernel backend selection.

Prefers the compiled extension, falls back to numpy transparently.
Set ``NGFISK_PURE_PYTHON=1`` to force the numpy implementation (used by
the cross-checking tests and the kernel benchmark).
"""

import os

from . import _fallback

if os.environ.get("NGFISK_PURE_PYTHON", "") == "1":
    _impl = _fallback
else:
    try:
        from . import _core as _impl
    except ImportError:
        _impl = _fallback

BACKEND = _impl.BACKEND

nll = _impl.nll
score = _impl.score
cdf = _impl.cdf
sf = _impl.sf
pdf = _impl.pdf
hazard = _impl.hazard
chf = _impl.chf
quantile = _impl.quantile

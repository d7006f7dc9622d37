"""Select the kernel implementation at import time.

The compiled Cython extension is preferred.  Setting the environment
variable ``GOLDEN_GAMES_PURE_PYTHON=1`` forces the numpy fallback, which is
also used automatically when the extension was not built.
"""

from __future__ import annotations

import logging
import os

from . import _fallback

logger = logging.getLogger(__name__)

_compiled = None
if os.environ.get("GOLDEN_GAMES_PURE_PYTHON", "") not in ("1", "true", "yes"):
    try:
        from . import _kernels as _compiled
    except ImportError:  # extension not built
        logger.debug("compiled kernels unavailable, using numpy fallback")

kernels = _compiled if _compiled is not None else _fallback
BACKEND = "cython" if _compiled is not None else "numpy"


def available_backends() -> dict:
    """Map backend name to kernel module for every importable backend."""
    out = {"numpy": _fallback}
    if _compiled is not None:
        out["cython"] = _compiled
    else:
        try:
            from . import _kernels
        except ImportError:
            pass
        else:
            out["cython"] = _kernels
    return out

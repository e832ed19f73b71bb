"""Kernel backend selection: compiled extension if available, numpy fallback.

Set QAPSOLVE_BACKEND=python or QAPSOLVE_BACKEND=c to force a backend; forcing
"c" raises if the extension was not built.
"""

from __future__ import annotations

import logging
import os

log = logging.getLogger(__name__)

_forced = os.environ.get("QAPSOLVE_BACKEND")

if _forced == "python":
    from . import _purekernels as kernels
elif _forced == "c":
    from . import _kernels as kernels  # type: ignore[no-redef]
else:
    try:
        from . import _kernels as kernels  # type: ignore[no-redef]
    except ImportError:
        from . import _purekernels as kernels  # type: ignore[no-redef]
        log.info("compiled kernels unavailable, using the pure-Python backend")


def backend_name() -> str:
    return kernels.BACKEND_NAME

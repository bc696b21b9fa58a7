"""Select the compiled kernels when available, else the pure-Python ones.

Set ``BOXREP_PURE=1`` to force the fallback (used by the benchmark and by
the kernel-agreement tests).
"""

from __future__ import annotations

import os

if os.environ.get("BOXREP_PURE"):
    from . import _kernels_py as kernels
else:
    try:
        from . import _kernels as kernels  # type: ignore[attr-defined]
    except ImportError:  # extension not built
        from . import _kernels_py as kernels

from . import _kernels_py as pure_kernels

COMPILED = kernels is not pure_kernels

__all__ = ["kernels", "pure_kernels", "COMPILED"]

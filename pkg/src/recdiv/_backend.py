"""Kernel selection: compiled extension if importable, else pure Python."""

import os

from recdiv import _pykernels

python_kernels = _pykernels

if os.environ.get("RECDIV_PURE_PYTHON"):
    compiled_kernels = None
else:
    try:
        from recdiv import _ckernels as compiled_kernels
    except ImportError:
        compiled_kernels = None

kernels = compiled_kernels if compiled_kernels is not None else python_kernels
BACKEND = kernels.NAME

# residues must stay below 2^63 so that a + b never wraps in uint64
WORD_LIMIT = 1 << 63


def fits_compiled(k, n, m):
    return (
        compiled_kernels is not None
        and k <= compiled_kernels.MAXK
        and 0 <= n < (1 << 64)
        and m < WORD_LIMIT
    )

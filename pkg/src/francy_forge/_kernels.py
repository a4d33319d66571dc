"""Hot kernels for subgroup enumeration.

The closure kernel is the inner loop of subgroup saturation: given a group's
multiplication table and a membership mask, grow the mask until it is closed
under products and inverses.  A numba-compiled version is used when available;
set ``FRANCY_FORGE_NO_NUMBA=1`` to force the pure-numpy fallback.  Both paths
return identical masks (see ``benchmarks/bench_kernels.py`` for a comparison).
"""

from __future__ import annotations

import os

import numpy as np

try:
    import numba

    _HAVE_NUMBA = True
except ImportError:  # pragma: no cover - numba is a declared dependency
    _HAVE_NUMBA = False

_DISABLED = os.environ.get("FRANCY_FORGE_NO_NUMBA", "").lower() in ("1", "true", "yes")
USE_NUMBA = _HAVE_NUMBA and not _DISABLED


def closure_mask_numpy(table: np.ndarray, inverse: np.ndarray, mask: np.ndarray) -> np.ndarray:
    """Close ``mask`` under the product table and inverse map (numpy path).

    ``table[i, j]`` is the index of element ``i`` composed with element ``j``;
    ``inverse[i]`` is the index of element ``i``'s inverse.  Each round maps
    the full product grid of current members, so the loop runs only a
    logarithmic number of rounds.
    """
    out = mask.astype(np.bool_, copy=True)
    while True:
        members = np.flatnonzero(out)
        out[inverse[members]] = True
        out[table[np.ix_(members, members)].ravel()] = True
        if int(out.sum()) == members.size:
            return out


if _HAVE_NUMBA:

    @numba.njit(cache=True)
    def closure_mask_numba(table, inverse, mask):  # pragma: no cover - jitted
        n = table.shape[0]
        out = mask.copy()
        members = np.empty(n, np.int64)
        pending = np.empty(n, np.int64)
        count = 0
        top = 0
        for i in range(n):
            if out[i]:
                members[count] = i
                count += 1
                pending[top] = i
                top += 1
        # Every element is popped once; the later-popped of any pair sees the
        # other as a member, so all products in both orders are reached.
        while top > 0:
            top -= 1
            a = pending[top]
            inv = inverse[a]
            if not out[inv]:
                out[inv] = True
                members[count] = inv
                count += 1
                pending[top] = inv
                top += 1
            for j in range(count):
                b = members[j]
                p = table[a, b]
                if not out[p]:
                    out[p] = True
                    members[count] = p
                    count += 1
                    pending[top] = p
                    top += 1
                q = table[b, a]
                if not out[q]:
                    out[q] = True
                    members[count] = q
                    count += 1
                    pending[top] = q
                    top += 1
        return out

else:  # pragma: no cover
    closure_mask_numba = None


closure_mask = closure_mask_numba if USE_NUMBA else closure_mask_numpy


def kernel_backend() -> str:
    """Name of the closure implementation in use: ``"numba"`` or ``"numpy"``."""
    return "numba" if USE_NUMBA else "numpy"

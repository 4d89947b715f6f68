"""Array kernels for whole-group computations.

The only hot loop in the package is the inversion-set computation over every
element of a Weyl group (``2^l l!`` elements times ``|positive roots|``).  It
runs under numba when available; setting ``GHOSTCLASS_BACKEND=numpy`` (or
numba failing to import) selects the vectorised numpy path.  Both paths return
identical arrays.
"""

from __future__ import annotations

import os
import warnings

import numpy as np

BACKENDS = ("numba", "numpy")


def _load_numba():
    try:
        import numba
    except Exception:  # pragma: no cover - depends on the environment
        return None
    return numba


_numba = None if os.environ.get("GHOSTCLASS_BACKEND", "").lower() == "numpy" else _load_numba()
HAVE_NUMBA = _numba is not None


def default_backend() -> str:
    choice = os.environ.get("GHOSTCLASS_BACKEND", "").lower()
    if choice == "numpy":
        return "numpy"
    if choice not in ("", "numba"):
        warnings.warn(f"unknown GHOSTCLASS_BACKEND={choice!r}; using default")
    return "numba" if HAVE_NUMBA else "numpy"


def encode_roots(roots) -> np.ndarray:
    """Pack roots as rows ``(i, s_i, j, s_j)`` with ``j = -1`` for short roots."""
    out = np.empty((len(roots), 4), dtype=np.int64)
    for r_idx, root in enumerate(roots):
        sup = root.support
        i = sup[0]
        out[r_idx, 0] = i
        out[r_idx, 1] = root.coords[i]
        if len(sup) == 2:
            j = sup[1]
            out[r_idx, 2] = j
            out[r_idx, 3] = root.coords[j]
        else:
            out[r_idx, 2] = -1
            out[r_idx, 3] = 0
    return out


def _inversions_numpy(sinv: np.ndarray, signs: np.ndarray, roots: np.ndarray) -> np.ndarray:
    n_el = sinv.shape[0]
    out = np.empty((n_el, roots.shape[0]), dtype=np.bool_)
    for r_idx in range(roots.shape[0]):
        i, si, j, sj = (int(x) for x in roots[r_idx])
        ci = si * signs[:, i]
        if j < 0:
            out[:, r_idx] = ci < 0
            continue
        cj = sj * signs[:, j]
        out[:, r_idx] = np.where(sinv[:, i] < sinv[:, j], ci, cj) < 0
    return out


if HAVE_NUMBA:
    @_numba.njit(cache=True)
    def _inversions_numba(sinv, signs, roots):  # pragma: no cover - compiled
        n_el = sinv.shape[0]
        n_roots = roots.shape[0]
        out = np.empty((n_el, n_roots), dtype=np.bool_)
        for k in range(n_el):
            for r in range(n_roots):
                i = roots[r, 0]
                ci = roots[r, 1] * signs[k, i]
                j = roots[r, 2]
                if j < 0:
                    out[k, r] = ci < 0
                else:
                    cj = roots[r, 3] * signs[k, j]
                    if sinv[k, i] < sinv[k, j]:
                        out[k, r] = ci < 0
                    else:
                        out[k, r] = cj < 0
        return out
else:  # pragma: no cover
    _inversions_numba = None


def inversion_matrix(sinv: np.ndarray, signs: np.ndarray, roots: np.ndarray,
                     backend: str | None = None) -> np.ndarray:
    """Boolean matrix ``M[k, r]``: positive root ``r`` lies in ``w_k(Phi^-)``.

    ``sinv[k, m]`` is the 0-based preimage ``sigma^{-1}(m)`` and ``signs[k, m]``
    the sign ``f(m)`` attached to target index ``m``.  Root ``r`` is inverted by
    ``w_k`` exactly when ``w_k^{-1}(r)`` is negative.
    """
    backend = backend or default_backend()
    if backend not in BACKENDS:
        raise ValueError(f"backend must be one of {BACKENDS}, got {backend!r}")
    sinv = np.ascontiguousarray(sinv, dtype=np.int64)
    signs = np.ascontiguousarray(signs, dtype=np.int64)
    roots = np.ascontiguousarray(roots, dtype=np.int64)
    if backend == "numba":
        if not HAVE_NUMBA:
            raise RuntimeError("numba backend requested but numba is unavailable")
        return _inversions_numba(sinv, signs, roots)
    return _inversions_numpy(sinv, signs, roots)


def subset_mask(inversions: np.ndarray, allowed: np.ndarray) -> np.ndarray:
    """Rows whose inverted roots all lie in ``allowed`` (boolean over roots)."""
    return ~(inversions & ~allowed[None, :]).any(axis=1)

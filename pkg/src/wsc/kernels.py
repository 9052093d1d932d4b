"""Integer kernels for Bruhat order and Kazhdan-Lusztig columns.

Each kernel has a numba version and a vectorized numpy version with the same
signature.  ``bruhat_matrix`` and ``kl_column`` dispatch on ``NUMBA_ENABLED``
unless a backend is requested explicitly.
"""
from __future__ import annotations

import numpy as np

from ._accel import NUMBA_ENABLED, njit


@njit(cache=True)
def _bruhat_numba(order, right_mult, length):
    n = order.shape[0]
    s_count = right_mult.shape[0]
    leq = np.zeros((n, n), dtype=np.bool_)
    leq[order[0], order[0]] = True
    for t in range(1, n):
        w = order[t]
        s = 0
        while length[right_mult[s, w]] > length[w]:
            s += 1
        ws = right_mult[s, w]
        for x in range(n):
            xs = right_mult[s, x]
            if length[xs] < length[x]:
                leq[x, w] = leq[xs, ws]
            else:
                leq[x, w] = leq[x, ws]
    return leq


def _bruhat_numpy(order, right_mult, length):
    n = order.shape[0]
    leq = np.zeros((n, n), dtype=bool)
    leq[order[0], order[0]] = True
    idx = np.arange(n)
    for w in order[1:]:
        s = int(np.argmax(length[right_mult[:, w]] < length[w]))
        ws = right_mult[s, w]
        xs = right_mult[s]
        desc = length[xs] < length[idx]
        leq[:, w] = np.where(desc, leq[xs, ws], leq[:, ws])
    return leq


@njit(cache=True)
def _kl_column_numba(colv, smul, desc, zcols, zshift, zmu):
    n, d = colv.shape
    out = np.zeros((n, d), dtype=np.int64)
    for x in range(n):
        sx = smul[x]
        if desc[x]:
            for k in range(d):
                out[x, k] += colv[sx, k]
            for k in range(1, d):
                out[x, k] += colv[x, k - 1]
        else:
            for k in range(1, d):
                out[x, k] += colv[sx, k - 1]
            for k in range(d):
                out[x, k] += colv[x, k]
        for j in range(zshift.shape[0]):
            sh = zshift[j]
            mu = zmu[j]
            for k in range(sh, d):
                out[x, k] -= mu * zcols[j, x, k - sh]
    return out


def _kl_column_numpy(colv, smul, desc, zcols, zshift, zmu):
    n, d = colv.shape
    out = np.zeros((n, d), dtype=np.int64)
    shifted_v = np.zeros_like(colv)
    shifted_v[:, 1:] = colv[:, :-1]
    shifted_sv = np.zeros_like(colv)
    shifted_sv[:, 1:] = colv[smul, :-1]
    dmask = desc[:, None]
    out += np.where(dmask, colv[smul] + shifted_v, shifted_sv + colv)
    for j in range(zshift.shape[0]):
        sh = int(zshift[j])
        out[:, sh:] -= zmu[j] * zcols[j, :, : d - sh]
    return out


def bruhat_matrix(order, right_mult, length, backend: str | None = None) -> np.ndarray:
    """``leq[x, w]`` is True iff x <= w.  ``order`` lists elements by nondecreasing length."""
    fn = _select(backend, _bruhat_numba, _bruhat_numpy)
    return fn(np.asarray(order, dtype=np.int64), np.asarray(right_mult, dtype=np.int64),
              np.asarray(length, dtype=np.int64))


def kl_column(colv, smul, desc, zcols, zshift, zmu, backend: str | None = None) -> np.ndarray:
    fn = _select(backend, _kl_column_numba, _kl_column_numpy)
    return fn(colv, smul, desc, zcols, zshift, zmu)


def _select(backend, numba_fn, numpy_fn):
    if backend is None:
        backend = "numba" if NUMBA_ENABLED else "numpy"
    if backend == "numba":
        if not NUMBA_ENABLED:
            raise RuntimeError("numba backend requested but numba is disabled or missing")
        return numba_fn
    if backend == "numpy":
        return numpy_fn
    raise ValueError(f"unknown backend {backend!r}")

"""Kazhdan-Lusztig polynomials by the standard recursion, memoized per column.

For w with a descent s (v = ws < w on the right, or v = sw on the left)::

    P_{x,w} = q^{1-c} P_{xs,v} + q^c P_{x,v}
              - sum_{z < v, zs < z} mu(z,v) q^{(l(w)-l(z))/2} P_{x,z}

with c = 1 iff xs < x.  The identity holds for every x, so a whole column
P_{.,w} is produced at once by ``kernels.kl_column``.
"""
from __future__ import annotations

import threading

import numpy as np

from . import kernels
from .errors import NotComparable
from .weyl import WeylGroup


def _trim(coeffs) -> list[int]:
    out = [int(c) for c in coeffs]
    while out and out[-1] == 0:
        out.pop()
    return out


class KLTable:
    """Memoized KL columns of a Weyl group.

    ``strategy`` picks the descent used by the recursion ("right" or "left");
    the resulting polynomials do not depend on it.  The cache is guarded by
    a lock so one table can be shared between threads.
    """

    def __init__(self, group: WeylGroup, strategy: str = "right", backend: str | None = None,
                 longest_shortcut: bool = True):
        if strategy not in ("right", "left"):
            raise ValueError(f"unknown strategy {strategy!r}")
        self.group = group
        self.strategy = strategy
        self.backend = backend
        self.longest_shortcut = longest_shortcut
        self.degree_cap = int(group.length.max()) // 2 + 2
        self._columns: dict[int, np.ndarray] = {}
        self._lock = threading.RLock()

    def _descent(self, w: int) -> tuple[np.ndarray, int]:
        mult = self.group.right_mult if self.strategy == "right" else self.group.left_mult
        length = self.group.length
        for s in range(mult.shape[0]):
            if length[mult[s, w]] < length[w]:
                return mult[s], int(mult[s, w])
        raise AssertionError("identity has no descent")

    def column(self, w: int) -> np.ndarray:
        """Array of shape (|W|, degree_cap) with row x holding P_{x,w}."""
        with self._lock:
            col = self._columns.get(w)
            if col is None:
                col = self._compute(w)
                self._columns[w] = col
            return col

    def _compute(self, w: int) -> np.ndarray:
        g = self.group
        n, d = len(g), self.degree_cap
        length = g.length
        if length[w] == 0:
            col = np.zeros((n, d), dtype=np.int64)
            col[w, 0] = 1
            return col
        if self.longest_shortcut and w == g.longest:
            col = np.zeros((n, d), dtype=np.int64)
            col[:, 0] = 1
            return col
        smul, v = self._descent(w)
        colv = self.column(v)
        desc = length[smul] < length
        zs, shifts, mus = [], [], []
        lv = int(length[v])
        for z in np.nonzero(colv.any(axis=1))[0]:
            z = int(z)
            gap = lv - int(length[z])
            if z == v or gap % 2 == 0 or length[smul[z]] > length[z]:
                continue
            mu = int(colv[z, (gap - 1) // 2])
            if mu:
                zs.append(z)
                shifts.append((int(length[w]) - int(length[z])) // 2)
                mus.append(mu)
        zcols = np.zeros((len(zs), n, d), dtype=np.int64)
        for k, z in enumerate(zs):
            zcols[k] = self.column(z)
        return kernels.kl_column(colv, np.asarray(smul, dtype=np.int64), desc, zcols,
                                 np.array(shifts, dtype=np.int64), np.array(mus, dtype=np.int64),
                                 backend=self.backend)

    def polynomial_by_index(self, x: int, w: int) -> list[int]:
        if not self.group.bruhat()[x, w]:
            raise NotComparable(f"{self.group.elements[x]} is not <= {self.group.elements[w]}")
        return _trim(self.column(w)[x])

    def polynomial(self, x: tuple, w: tuple) -> list[int]:
        """Coefficient list (constant term first) of P_{x,w}."""
        return self.polynomial_by_index(self.group.index[tuple(x)], self.group.index[tuple(w)])

    def mu(self, x: tuple, w: tuple) -> int:
        xi, wi = self.group.index[tuple(x)], self.group.index[tuple(w)]
        gap = int(self.group.length[wi] - self.group.length[xi])
        if gap <= 0 or gap % 2 == 0 or not self.group.bruhat()[xi, wi]:
            return 0
        return int(self.column(wi)[xi, (gap - 1) // 2])


def kl_polynomial(table: KLTable, x: tuple, w: tuple) -> list[int]:
    return table.polynomial(x, w)

"""Exact rational linear algebra on lists of rows.

Thin wrapper around sympy's ``DomainMatrix`` over QQ; inputs and outputs are
``fractions.Fraction``.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from sympy import QQ
from sympy.polys.matrices import DomainMatrix

Row = Sequence[Fraction]


def _dm(rows: Sequence[Row], ncols: int) -> DomainMatrix:
    data = [[QQ(int(Fraction(x).numerator), int(Fraction(x).denominator)) for x in r] for r in rows]
    return DomainMatrix(data, (len(rows), ncols), QQ)


def _frac(x) -> Fraction:
    return Fraction(int(x.numerator), int(x.denominator))


def rank(rows: Sequence[Row], ncols: int | None = None) -> int:
    if not rows:
        return 0
    ncols = len(rows[0]) if ncols is None else ncols
    if ncols == 0:
        return 0
    return _dm(rows, ncols).rank()


def nullspace(rows: Sequence[Row], ncols: int) -> list[list[Fraction]]:
    """Basis of {v : A v = 0} for the ``len(rows) x ncols`` matrix A."""
    if ncols == 0:
        return []
    if not rows:
        return [[Fraction(int(i == j)) for j in range(ncols)] for i in range(ncols)]
    ns = _dm(rows, ncols).nullspace()
    return [[_frac(x) for x in r] for r in ns.to_list()]


def row_space(rows: Sequence[Row], ncols: int) -> list[list[Fraction]]:
    """Reduced row echelon basis of the span of ``rows``."""
    if not rows or ncols == 0:
        return []
    rref, pivots = _dm(rows, ncols).rref()
    out = rref.to_list()[: len(pivots)]
    return [[_frac(x) for x in r] for r in out]


def solve(rows: Sequence[Row], rhs: Row, ncols: int) -> list[Fraction] | None:
    """One solution of A x = b, or None when inconsistent."""
    aug = [list(r) + [b] for r, b in zip(rows, rhs)]
    if not aug:
        return [Fraction(0)] * ncols
    rref, pivots = _dm(aug, ncols + 1).rref()
    if ncols in pivots:
        return None
    data = rref.to_list()
    x = [Fraction(0)] * ncols
    for i, p in enumerate(pivots):
        x[p] = _frac(data[i][ncols])
    return x

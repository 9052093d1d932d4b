"""Nilpotent data: sl2-triples, the Dynkin grading, centralizers, the
symplectic space V = [f, g], the odd Lagrangian and the torus weights used by
the character formulas.

Everything is computed piece by piece.  A piece is the span of the basis
vectors sharing (parity, ad h eigenvalue, super Z-degree, torus weight); ad e
and ad f move between pieces by shifting the ad h eigenvalue by +-2.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Sequence

from . import linalg
from .errors import (InvalidLevi, InvalidPartition, NilpotentNotInLevi, NonIntegralGrading, NotTypeI,
                     OddDimensionalOddPart, ParseError)
from .superalgebra import EVEN, ODD, Realization, SuperMatrix, bracket, chi, realize, RootDatum
from .weyl import Levi, full_levi

ADMISSIBILITY_CAVEAT = ("admissibility of (Levi, theta, parabolic) is checked only locally: "
                        "e in Levi, theta central, integral, dominant, with centralizer equal to the Levi")


@dataclass(frozen=True)
class PartitionPair:
    part_m: tuple
    part_n: tuple

    def label(self) -> str:
        return ",".join(map(str, self.part_m)) + "|" + ",".join(map(str, self.part_n))


def parse_partition_pair(text: str) -> PartitionPair:
    """Parse ``"p1,p2,...|q1,q2,..."``."""
    if text.count("|") != 1:
        raise ParseError(f"partition pair must contain exactly one '|': {text!r}")
    sides = []
    for s in text.split("|"):
        s = s.strip()
        try:
            sides.append(tuple(int(t) for t in s.split(",")) if s else ())
        except ValueError as exc:
            raise ParseError(f"bad partition {s!r}") from exc
    return PartitionPair(*sides)


def _check_partition(parts: Sequence[int], total: int, what: str) -> None:
    if any(p <= 0 for p in parts) or list(parts) != sorted(parts, reverse=True) or sum(parts) != total:
        raise InvalidPartition(f"{what}: {tuple(parts)} is not a partition of {total}")


def partitions(k: int, largest: int | None = None):
    """All partitions of k, weakly decreasing."""
    largest = k if largest is None else largest
    if k == 0:
        yield ()
        return
    for first in range(min(k, largest), 0, -1):
        for rest in partitions(k - first, first):
            yield (first,) + rest


# ---------------------------------------------------------------------------
# sl2 triples
# ---------------------------------------------------------------------------

def _string_weights(k: int) -> list[int]:
    return [k - 1 - 2 * i for i in range(k)]


def _gl_e_h(datum: RootDatum, pp: PartitionPair):
    m, n = datum.m, datum.n
    _check_partition(pp.part_m, m, "even side")
    _check_partition(pp.part_n, n, "odd side")
    size = m + n
    e, hdiag = {}, [Fraction(0)] * size
    pos = 0
    for k in list(pp.part_m) + list(pp.part_n):
        for i, wt in enumerate(_string_weights(k)):
            hdiag[pos + i] = Fraction(wt)
        for i in range(k - 1):
            e[(pos + i, pos + i + 1)] = Fraction(1)
        pos += k
    return SuperMatrix(size, m, e), SuperMatrix.diagonal(m, hdiag)


def _osp_e_h(datum: RootDatum, pp: PartitionPair):
    from .superalgebra import osp_condition_rows
    n = datum.n
    if tuple(pp.part_m) != (1, 1):
        raise InvalidPartition("for osp(2|2n) the even side must be '1,1' (so(2) has no nonzero nilpotents)")
    lam = tuple(pp.part_n)
    _check_partition(lam, 2 * n, "odd side")
    for k in set(lam):
        if k % 2 and lam.count(k) % 2:
            raise InvalidPartition(f"{lam}: odd parts of a symplectic partition need even multiplicity")
    size, p = 2 + 2 * n, 2
    hdiag = [Fraction(0)] * size
    positions = []
    alloc = 0

    def place(local_weights, local_edges, r):
        nonlocal alloc
        width = 2 * r
        glob = []
        for loc in range(width):
            if loc < r:
                glob.append(alloc + loc)
            else:
                glob.append(2 * n - 1 - (alloc + (width - 1 - loc)))
        for loc, wt in enumerate(local_weights):
            hdiag[2 + glob[loc]] = Fraction(wt)
        for a, b in local_edges:
            positions.append((2 + glob[a], 2 + glob[b]))
        alloc += r

    odd_parts = sorted({k for k in lam if k % 2}, reverse=True)
    for k in lam:
        if k % 2 == 0:
            place(_string_weights(k), [(i, i + 1) for i in range(k - 1)], k // 2)
    for k in odd_parts:
        for _ in range(lam.count(k) // 2):
            wts = _string_weights(k) + _string_weights(k)
            edges = [(i, i + 1) for i in range(k - 1)] + [(k + i, k + i + 1) for i in range(k - 1)]
            place(wts, edges, k)
    rows = osp_condition_rows(n, positions, EVEN)
    ns = linalg.nullspace(rows, len(positions))
    vec = None
    for scale in range(1, 8):
        cand = [sum((Fraction(scale ** i) * v[j] for i, v in enumerate(ns)), Fraction(0))
                for j in range(len(positions))]
        if all(cand):
            vec = cand
            break
    if vec is None and positions:
        raise AssertionError("could not find a nilpotent with the requested Jordan type")
    e = SuperMatrix(size, p, dict(zip(positions, vec or [])))
    return e, SuperMatrix.diagonal(p, hdiag)


def _jordan_type_ok(e: SuperMatrix, parts: Sequence[int]) -> bool:
    """Compare ranks of powers of e with those of the Jordan form."""
    size = e.size
    power = SuperMatrix.diagonal(e.p, [Fraction(1)] * size)
    for k in range(1, max(parts, default=1) + 1):
        power = power @ e
        dense = [[power[(i, j)] for j in range(size)] for i in range(size)]
        expected = sum(max(p - k, 0) for p in parts)
        if linalg.rank(dense, size) != expected:
            return False
    return True


# ---------------------------------------------------------------------------
# the datum
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Piece:
    parity: int
    degree: int
    zdeg: int
    tweight: tuple
    indices: tuple  # basis indices


class NilpotentDatum:
    """e, h, f together with all derived graded data.

    ``levi`` must contain e; its center is the torus t with the documented
    basis ``torus_basis`` (one block identity per type A block).  ``theta``
    gives coordinates of an element of t in that basis.
    """

    def __init__(self, alg: Realization, pp: PartitionPair, e: SuperMatrix, h: SuperMatrix, f: SuperMatrix,
                 levi: Levi, theta: Sequence[Fraction] | None = None, swap_lagrangian: bool = False):
        self.alg = alg
        self.datum = alg.datum
        self.partitions = pp
        self.e, self.h, self.f = e, h, f
        self.levi = levi
        self.swap_lagrangian = swap_lagrangian
        self.torus_coords = tuple(
            tuple(Fraction(int(i in b.coords)) for i in range(levi.rank)) for b in levi.center_blocks)
        self.torus_basis = tuple(alg.diagonal_from_coords(c) for c in self.torus_coords)
        for t in self.torus_basis:
            for x in (e, h, f):
                if not bracket(t, x).is_zero():
                    raise NilpotentNotInLevi("the sl2-triple does not lie in the chosen Levi")
        self.theta = tuple(Fraction(x) for x in theta) if theta is not None else default_theta(self)
        if len(self.theta) != len(self.torus_basis):
            raise InvalidLevi(f"theta needs {len(self.torus_basis)} coordinates, got {len(self.theta)}")
        _check_theta(self)

    # -- weights ------------------------------------------------------------
    def restrict(self, w: Sequence[Fraction]) -> tuple:
        """Torus weight: pairings of w with the torus basis."""
        return tuple(sum((a * b for a, b in zip(w, c)), Fraction(0)) for c in self.torus_coords)

    def theta_pairing(self, tw: Sequence[Fraction]) -> Fraction:
        return sum((a * b for a, b in zip(tw, self.theta)), Fraction(0))

    @cached_property
    def degrees(self) -> tuple:
        out = []
        for b in self.alg.basis:
            d = self.alg.pair(b.weight, self.h)
            if d.denominator != 1:
                raise NonIntegralGrading(f"ad h eigenvalue {d} is not an integer")
            out.append(int(d))
        return tuple(out)

    @cached_property
    def pieces(self) -> dict:
        groups: dict = {}
        for k, b in enumerate(self.alg.basis):
            key = (b.parity, self.degrees[k], self.datum.super_z_degree(b.weight), self.restrict(b.weight))
            groups.setdefault(key, []).append(k)
        return {key: Piece(*key, tuple(idx)) for key, idx in sorted(groups.items())}

    def _shift(self, piece: Piece, by: int) -> Piece | None:
        return self.pieces.get((piece.parity, piece.degree + by, piece.zdeg, piece.tweight))

    def _ad_matrix(self, x: SuperMatrix, src: Piece, dst: Piece | None) -> list[list[Fraction]]:
        """Rows indexed by dst basis, columns by src basis."""
        if dst is None:
            return []
        cols = []
        for k in src.indices:
            c = self.alg.coords(bracket(x, self.alg.basis[k].matrix))
            cols.append([c[j] for j in dst.indices])
        return [[cols[a][b] for a in range(len(src.indices))] for b in range(len(dst.indices))]

    # -- grading ------------------------------------------------------------
    @cached_property
    def grading(self) -> dict:
        """degree -> parity -> basis indices of g(i)."""
        out: dict = {}
        for k, d in enumerate(self.degrees):
            out.setdefault(d, {EVEN: [], ODD: []})[self.alg.basis[k].parity].append(k)
        return dict(sorted(out.items()))

    def grading_dims(self) -> dict:
        return {(d, par): len(ix) for d, v in self.grading.items() for par, ix in v.items() if ix}

    # -- centralizer and V ---------------------------------------------------
    @cached_property
    def _kernels(self) -> dict:
        out = {}
        for key, pc in self.pieces.items():
            rows = self._ad_matrix(self.e, pc, self._shift(pc, 2))
            out[key] = linalg.nullspace(rows, len(pc.indices))
        return out

    @cached_property
    def _images(self) -> dict:
        out = {}
        for key, pc in self.pieces.items():
            src = self._shift(pc, 2)
            if src is None:
                out[key] = []
                continue
            rows = self._ad_matrix(self.f, src, pc)
            cols_as_rows = [list(r) for r in zip(*rows)] if rows else []
            out[key] = linalg.row_space(cols_as_rows, len(pc.indices))
        return out

    def _lift(self, piece: Piece, vec: Sequence[Fraction]) -> SuperMatrix:
        out = SuperMatrix.zero(self.alg.size, self.alg.p)
        for c, k in zip(vec, piece.indices):
            if c:
                out = out + self.alg.basis[k].matrix * c
        return out

    def centralizer(self, parity: int | None = None, degree: int | None = None) -> list[SuperMatrix]:
        """Basis of ker(ad e), optionally restricted to a parity and/or an ad h degree."""
        return [self._lift(pc, v) for key, pc in self.pieces.items()
                if (parity is None or pc.parity == parity) and (degree is None or pc.degree == degree)
                for v in self._kernels[key]]

    def centralizer_degrees(self, parity: int) -> list[int]:
        return [pc.degree for key, pc in self.pieces.items() if pc.parity == parity
                for _ in self._kernels[key]]

    def v_degrees(self, parity: int) -> list[int]:
        return [pc.degree for key, pc in self.pieces.items() if pc.parity == parity
                for _ in self._images[key]]

    def check_odd_part(self) -> None:
        dim = len(self.grading.get(-1, {}).get(ODD, []))
        check_odd_dimension(dim)

    def symplectic_space(self) -> dict:
        """Bases of V_0bar and V_1bar (lists of SuperMatrix)."""
        self.check_odd_part()
        return {par: [self._lift(pc, v) for key, pc in self.pieces.items() if pc.parity == par
                      for v in self._images[key]] for par in (EVEN, ODD)}

    def omega(self, x: SuperMatrix, y: SuperMatrix) -> Fraction:
        return chi(bracket(x, y), self.e)

    def omega_gram(self, vectors: Sequence[SuperMatrix]) -> list[list[Fraction]]:
        return [[self.omega(a, b) for b in vectors] for a in vectors]

    # -- Lagrangian -----------------------------------------------------------
    def _odd_v_pieces(self, zdeg: int):
        return [(pc, v) for key, pc in self.pieces.items() if pc.parity == ODD and pc.zdeg == zdeg
                for v in self._images[key]]

    def lagrangian_odd(self) -> tuple[list[SuperMatrix], list[SuperMatrix]]:
        """(u1, u1*) with u1 = V_1bar cap g_{+1}; swapped when ``swap_lagrangian`` is set."""
        self.check_odd_part()
        for b in self.alg.basis:
            if b.parity == ODD and abs(self.datum.super_z_degree(b.weight)) != 1:
                raise NotTypeI(f"{self.datum.name} has no Z_2-compatible Z-grading")
        up, down = (+1, -1) if not self.swap_lagrangian else (-1, +1)
        u = [self._lift(pc, v) for pc, v in self._odd_v_pieces(up)]
        ud = [self._lift(pc, v) for pc, v in self._odd_v_pieces(down)]
        return u, ud

    def lagrangian_weights(self, zdeg: int) -> list[tuple]:
        return [pc.tweight for pc, _ in self._odd_v_pieces(zdeg)]

    # -- torus weights ---------------------------------------------------------
    def denominator_weights(self) -> list[tuple]:
        """Torus weights of (g_0bar)_{<0} cap z(e), with multiplicity."""
        out = []
        for key, pc in self.pieces.items():
            if pc.parity == EVEN and self.theta_pairing(pc.tweight) < 0:
                out.extend([pc.tweight] * len(self._kernels[key]))
        return out

    def clifford_weights(self) -> list[tuple]:
        """Torus weights of u1* (the dual half of the odd Lagrangian splitting)."""
        self.check_odd_part()
        return self.lagrangian_weights(+1 if self.swap_lagrangian else -1)

    @property
    def dim_u1(self) -> int:
        return len(self._odd_v_pieces(+1 if not self.swap_lagrangian else -1))

    def module_dimension_factor(self) -> int:
        self.check_odd_part()
        return 2 ** self.dim_u1

    def orbit_size_default(self) -> int | None:
        """|I_lambda| when C_e is known to be trivial, else None."""
        if self.datum.family == "GL":
            return 1
        if self.datum.family == "OSP" and tuple(self.partitions.part_n) == (2 * self.datum.n,):
            return 1
        return None


def check_odd_dimension(dim_g_minus1_odd: int) -> None:
    if dim_g_minus1_odd % 2:
        raise OddDimensionalOddPart(f"dim g(-1)_1bar = {dim_g_minus1_odd} is odd")


def default_theta(nd: NilpotentDatum) -> tuple:
    """0 on a side that is a single full block, else k, k-1, ..., 1 on the A blocks of that side."""
    levi, m = nd.levi, nd.datum.m
    out = []
    for side in (lambda b: b.coords[0] < m, lambda b: b.coords[0] >= m):
        blocks = [b for b in levi.blocks if side(b)]
        a_blocks = [b for b in blocks if b.kind == "A"]
        full = len(blocks) == 1 and (nd.datum.family == "GL" or blocks[0].kind == "C" or blocks[0].coords == (0,))
        if full:
            out.extend(Fraction(0) for _ in a_blocks)
        else:
            out.extend(Fraction(len(a_blocks) - i) for i in range(len(a_blocks)))
    return tuple(out)


def _check_theta(nd: NilpotentDatum) -> None:
    for r in nd.datum.even_positive_roots:
        val = nd.theta_pairing(nd.restrict(r))
        if val.denominator != 1:
            raise InvalidLevi("theta must have integer eigenvalues on g_0bar")
        if nd.levi.contains_root(r):
            continue
        if val <= 0:
            raise InvalidLevi("theta must be dominant with centralizer equal to the Levi")


def build_sl2(datum: RootDatum, pp: PartitionPair, alg: Realization | None = None):
    """(e, h, f) for the nilpotent of Jordan type ``pp`` on the natural module."""
    alg = alg or realize(datum)
    if datum.family == "GL":
        e, h = _gl_e_h(datum, pp)
    else:
        e, h = _osp_e_h(datum, pp)
    if not _jordan_type_ok(e, list(pp.part_m) + list(pp.part_n)):
        raise AssertionError("constructed e has the wrong Jordan type")
    cand = [k for k, b in enumerate(alg.basis)
            if b.parity == EVEN and alg.pair(b.weight, h) == -2]
    target = alg.coords(h)
    cols = [alg.coords(bracket(e, alg.basis[k].matrix)) for k in cand]
    rows = [[cols[c][r] for c in range(len(cand))] for r in range(alg.dim)]
    sol = linalg.solve(rows, target, len(cand))
    if sol is None:
        raise AssertionError("no f with [e, f] = h")
    f = SuperMatrix.zero(alg.size, alg.p)
    for c, k in zip(sol, cand):
        if c:
            f = f + alg.basis[k].matrix * c
    return e, h, f


def build_nilpotent(datum: RootDatum, pp: PartitionPair, levi: Levi | None = None,
                    theta: Sequence[Fraction] | None = None, swap_lagrangian: bool = False,
                    alg: Realization | None = None) -> NilpotentDatum:
    alg = alg or realize(datum)
    e, h, f = build_sl2(datum, pp, alg)
    return NilpotentDatum(alg, pp, e, h, f, levi or full_levi(datum), theta, swap_lagrangian)


_THETA_RE = re.compile(r"^[\s\d/,+-]*$")


def parse_theta(text: str | None):
    if text is None or not text.strip():
        return None
    if not _THETA_RE.match(text):
        raise ParseError(f"bad theta {text!r}")
    from .superalgebra import parse_rational
    return tuple(parse_rational(t) for t in text.split(","))

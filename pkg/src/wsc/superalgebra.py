"""Root data and matrix realizations of gl(m|n), sl(m|n) and osp(2|2n).

Weights are tuples of ``Fraction`` in the basis eps_1..eps_m, delta_1..delta_n
of h*.  For osp(2|2n) we take m = 1: a single eps coordinate for the so(2)
factor and n delta coordinates for sp(2n).

The invariant form is the supertrace form ``str(xy)``; it is proportional to
the Killing form on every simple piece, so rescaling only rescales chi.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Mapping, Sequence

from . import linalg
from .errors import NotCentral, ParseError, SizeMismatch, UnsupportedFamily

Weight = tuple  # tuple[Fraction, ...]
FAMILIES = ("GL", "SL", "OSP")

EVEN, ODD = 0, 1


# ---------------------------------------------------------------------------
# rationals and weights
# ---------------------------------------------------------------------------

def parse_rational(text: str) -> Fraction:
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise ParseError(f"not a rational number: {text!r}") from exc


def format_rational(x: Fraction) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def _parse_list(text: str) -> list[Fraction]:
    text = text.strip()
    return [parse_rational(t) for t in text.split(",")] if text else []


def parse_weight(text: str, m: int, n: int) -> Weight:
    """Parse ``"a1,...,am|b1,...,bn"``."""
    if text.count("|") != 1:
        raise ParseError(f"weight must contain exactly one '|': {text!r}")
    left, right = text.split("|")
    a, b = _parse_list(left), _parse_list(right)
    if len(a) != m or len(b) != n:
        raise ParseError(f"weight {text!r} does not have shape ({m}|{n})")
    return tuple(a + b)


def format_weight(w: Sequence[Fraction], m: int) -> str:
    return ",".join(format_rational(x) for x in w[:m]) + "|" + ",".join(format_rational(x) for x in w[m:])


def wadd(a: Sequence[Fraction], b: Sequence[Fraction]) -> Weight:
    return tuple(x + y for x, y in zip(a, b))


def wsub(a: Sequence[Fraction], b: Sequence[Fraction]) -> Weight:
    return tuple(x - y for x, y in zip(a, b))


def wscale(c, a: Sequence[Fraction]) -> Weight:
    return tuple(c * x for x in a)


def zero_weight(k: int) -> Weight:
    return (Fraction(0),) * k


def unit_weight(k: int, i: int, c=1) -> Weight:
    return tuple(Fraction(c if j == i else 0) for j in range(k))


# ---------------------------------------------------------------------------
# root data
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class RootDatum:
    family: str
    m: int
    n: int
    even_positive_roots: tuple
    odd_positive_roots: tuple
    rho0: Weight
    rho1: Weight
    rho: Weight
    form_diagonal: tuple  # the form on h* is diagonal in eps/delta coordinates

    @property
    def rank(self) -> int:
        return self.m + self.n

    @property
    def name(self) -> str:
        if self.family == "OSP":
            return f"osp(2|{2 * self.n})"
        return f"{self.family.lower()}({self.m}|{self.n})"

    def form(self, a: Sequence[Fraction], b: Sequence[Fraction]) -> Fraction:
        return sum((d * x * y for d, x, y in zip(self.form_diagonal, a, b)), Fraction(0))

    def super_z_degree(self, root: Sequence[Fraction]) -> int:
        """+1 on g_1, -1 on g_-1, 0 on the even part."""
        return int(sum(root[: self.m], Fraction(0)))

    @property
    def even_roots(self) -> tuple:
        return self.even_positive_roots + tuple(wscale(-1, r) for r in self.even_positive_roots)

    @property
    def odd_roots(self) -> tuple:
        return self.odd_positive_roots + tuple(wscale(-1, r) for r in self.odd_positive_roots)


def build_root_datum(family: str, m: int, n: int) -> RootDatum:
    """Root datum for GL(m|n), SL(m|n) (m != n) or OSP with m = 1, i.e. osp(2|2n)."""
    family = family.upper()
    if family not in FAMILIES:
        raise UnsupportedFamily(f"unknown family {family!r}")
    if m < 0 or n < 0:
        raise UnsupportedFamily("m and n must be nonnegative")
    k = m + n
    e = lambda i: unit_weight(k, i)  # noqa: E731
    if family in ("GL", "SL"):
        if family == "SL" and m == n:
            raise UnsupportedFamily("sl(n|n) has a degenerate invariant form")
        even = [wsub(e(i), e(j)) for i in range(m) for j in range(i + 1, m)]
        even += [wsub(e(m + i), e(m + j)) for i in range(n) for j in range(i + 1, n)]
        odd = [wsub(e(i), e(m + j)) for i in range(m) for j in range(n)]
        diag = tuple(Fraction(1) for _ in range(m)) + tuple(Fraction(-1) for _ in range(n))
    else:
        if m != 1 or n < 1:
            raise UnsupportedFamily("OSP is supported only as osp(2|2n): m = 1, n >= 1")
        d = lambda i: e(1 + i)  # noqa: E731
        even = [wsub(d(i), d(j)) for i in range(n) for j in range(i + 1, n)]
        even += [wadd(d(i), d(j)) for i in range(n) for j in range(i + 1, n)]
        even += [wscale(2, d(i)) for i in range(n)]
        odd = [wsub(e(0), d(j)) for j in range(n)] + [wadd(e(0), d(j)) for j in range(n)]
        diag = (Fraction(1, 2),) + tuple(Fraction(-1, 2) for _ in range(n))
    half = Fraction(1, 2)
    rho0 = wscale(half, _wsum(even, k))
    rho1 = wscale(half, _wsum(odd, k))
    return RootDatum(family, m, n, tuple(even), tuple(odd), rho0, rho1, wsub(rho0, rho1), diag)


def _wsum(ws: Iterable[Weight], k: int) -> Weight:
    acc = zero_weight(k)
    for w in ws:
        acc = wadd(acc, w)
    return acc


_ALG_RE = re.compile(r"^\s*(gl|sl|osp)\s*\(\s*(\d+)\s*\|\s*(\d+)\s*\)\s*$", re.I)


def parse_algebra(text: str) -> RootDatum:
    """Parse ``"gl(m|n)"``, ``"sl(m|n)"`` or ``"osp(2|2n)"``."""
    mt = _ALG_RE.match(text)
    if not mt:
        raise ParseError(f"cannot parse algebra {text!r}")
    fam, a, b = mt.group(1).upper(), int(mt.group(2)), int(mt.group(3))
    if fam == "OSP":
        if a != 2 or b % 2 or b == 0:
            raise UnsupportedFamily(f"only osp(2|2n) is supported, got {text!r}")
        return build_root_datum("OSP", 1, b // 2)
    return build_root_datum(fam, a, b)


# ---------------------------------------------------------------------------
# super matrices
# ---------------------------------------------------------------------------

class SuperMatrix:
    """Sparse exact matrix on C^{p|q}.  Immutable; rows/columns < p are even."""

    __slots__ = ("size", "p", "_entries", "_hash")

    def __init__(self, size: int, p: int, entries: Mapping[tuple, Fraction] | None = None):
        self.size = size
        self.p = p
        clean = {}
        for (i, j), v in (entries or {}).items():
            if not (0 <= i < size and 0 <= j < size):
                raise SizeMismatch(f"entry ({i},{j}) outside a {size}x{size} matrix")
            v = Fraction(v)
            if v:
                clean[(i, j)] = v
        self._entries = clean
        self._hash = None

    @classmethod
    def unit(cls, size: int, p: int, i: int, j: int, c=1) -> "SuperMatrix":
        return cls(size, p, {(i, j): c})

    @classmethod
    def diagonal(cls, p: int, values: Sequence[Fraction]) -> "SuperMatrix":
        return cls(len(values), p, {(i, i): v for i, v in enumerate(values)})

    @classmethod
    def zero(cls, size: int, p: int) -> "SuperMatrix":
        return cls(size, p)

    @property
    def entries(self) -> dict:
        return dict(self._entries)

    def __getitem__(self, ij) -> Fraction:
        return self._entries.get(ij, Fraction(0))

    def entry_parity(self, i: int, j: int) -> int:
        return int((i < self.p) != (j < self.p))

    @property
    def parity(self) -> str:
        kinds = {self.entry_parity(i, j) for i, j in self._entries}
        if kinds == {ODD}:
            return "odd"
        if len(kinds) == 2:
            return "mixed"
        return "even"

    def part(self, parity: int) -> "SuperMatrix":
        return SuperMatrix(self.size, self.p,
                           {ij: v for ij, v in self._entries.items() if self.entry_parity(*ij) == parity})

    def is_zero(self) -> bool:
        return not self._entries

    def is_diagonal(self) -> bool:
        return all(i == j for i, j in self._entries)

    def _check(self, other: "SuperMatrix") -> None:
        if self.size != other.size or self.p != other.p:
            raise SizeMismatch(f"({self.size},{self.p}) vs ({other.size},{other.p})")

    def __add__(self, other: "SuperMatrix") -> "SuperMatrix":
        self._check(other)
        out = dict(self._entries)
        for ij, v in other._entries.items():
            out[ij] = out.get(ij, 0) + v
        return SuperMatrix(self.size, self.p, out)

    def __neg__(self) -> "SuperMatrix":
        return SuperMatrix(self.size, self.p, {ij: -v for ij, v in self._entries.items()})

    def __sub__(self, other: "SuperMatrix") -> "SuperMatrix":
        return self + (-other)

    def __mul__(self, c) -> "SuperMatrix":
        c = Fraction(c)
        return SuperMatrix(self.size, self.p, {ij: c * v for ij, v in self._entries.items()})

    __rmul__ = __mul__

    def __matmul__(self, other: "SuperMatrix") -> "SuperMatrix":
        self._check(other)
        by_row: dict[int, list] = {}
        for (k, j), v in other._entries.items():
            by_row.setdefault(k, []).append((j, v))
        out: dict = {}
        for (i, k), u in self._entries.items():
            for j, v in by_row.get(k, ()):
                out[(i, j)] = out.get((i, j), 0) + u * v
        return SuperMatrix(self.size, self.p, out)

    def __eq__(self, other) -> bool:
        return (isinstance(other, SuperMatrix) and self.size == other.size
                and self.p == other.p and self._entries == other._entries)

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.size, self.p, frozenset(self._entries.items())))
        return self._hash

    def supertrace(self) -> Fraction:
        return sum((v if i < self.p else -v for (i, j), v in self._entries.items() if i == j), Fraction(0))

    def __repr__(self) -> str:
        body = ", ".join(f"E{i + 1}{j + 1}:{format_rational(v)}" for (i, j), v in sorted(self._entries.items()))
        return f"SuperMatrix({self.size}|{self.p}; {body or '0'})"


def bracket(x: SuperMatrix, y: SuperMatrix) -> SuperMatrix:
    """Super commutator ``xy - (-1)^{|x||y|} yx``, extended bilinearly."""
    x._check(y)
    out = SuperMatrix.zero(x.size, x.p)
    for a in (EVEN, ODD):
        xa = x.part(a)
        if xa.is_zero():
            continue
        for b in (EVEN, ODD):
            yb = y.part(b)
            if yb.is_zero():
                continue
            sign = -1 if a * b else 1
            out = out + (xa @ yb) - (yb @ xa) * sign
    return out


def invariant_form(x: SuperMatrix, y: SuperMatrix) -> Fraction:
    return (x @ y).supertrace()


def chi(x: SuperMatrix, e: SuperMatrix) -> Fraction:
    """chi(x) = (e, x)."""
    return invariant_form(e, x)


# ---------------------------------------------------------------------------
# matrix realizations
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class BasisVector:
    matrix: SuperMatrix
    weight: Weight
    parity: int


@dataclass(frozen=True)
class Realization:
    """A basis of root vectors plus Cartan elements inside gl(p|q)."""

    datum: RootDatum
    size: int
    p: int
    index_weights: tuple  # weight of the i-th standard basis vector of C^{p|q}
    basis: tuple  # BasisVector
    cartan: tuple  # SuperMatrix H_j dual to the weight coordinates
    gram_matrix: tuple | None = field(default=None, compare=False)

    @property
    def dim(self) -> int:
        return len(self.basis)

    @cached_property
    def _root_index(self) -> dict:
        out = {}
        for k, b in enumerate(self.basis):
            if any(b.weight):
                out[b.weight] = k
        return out

    @cached_property
    def _cartan_index(self) -> list:
        out = []
        for j in range(len(self.cartan)):
            for k, b in enumerate(self.basis):
                if b.matrix == self.cartan[j]:
                    out.append(k)
                    break
        return out

    def entry_weight(self, i: int, j: int) -> Weight:
        return wsub(self.index_weights[i], self.index_weights[j])

    def cartan_coords(self, d: SuperMatrix) -> Weight:
        """Coordinates of a diagonal matrix in the basis H_j."""
        if not d.is_diagonal():
            raise NotCentral("torus elements must be diagonal")
        k = self.datum.rank
        num = [Fraction(0)] * k
        den = [Fraction(0)] * k
        for i in range(self.size):
            wi = self.index_weights[i]
            for j in range(k):
                if wi[j]:
                    num[j] += wi[j] * d[(i, i)]
                    den[j] += wi[j] * wi[j]
        return tuple(a / b for a, b in zip(num, den))

    def diagonal_from_coords(self, c: Sequence[Fraction]) -> SuperMatrix:
        out = SuperMatrix.zero(self.size, self.p)
        for cj, h in zip(c, self.cartan):
            if cj:
                out = out + h * cj
        return out

    def coords(self, x: SuperMatrix) -> list[Fraction]:
        """Coordinates of ``x`` in ``basis``; raises ValueError if x is not in the algebra."""
        out = [Fraction(0)] * self.dim
        by_weight: dict = {}
        for (i, j), v in x.entries.items():
            by_weight.setdefault(self.entry_weight(i, j), {})[(i, j)] = v
        zero = zero_weight(self.datum.rank)
        for w, ents in by_weight.items():
            comp = SuperMatrix(self.size, self.p, ents)
            if w == zero:
                c = self.cartan_coords(comp)
                if self.diagonal_from_coords(c) != comp:
                    raise ValueError("diagonal part not in the Cartan subalgebra")
                for j, cj in enumerate(c):
                    out[self._cartan_index[j]] += cj
                continue
            k = self._root_index.get(w)
            if k is None:
                raise ValueError(f"weight {w} is not a root")
            b = self.basis[k].matrix
            pos = next(iter(sorted(b.entries)))
            coef = comp[pos] / b[pos]
            if b * coef != comp:
                raise ValueError(f"component of weight {w} is not a root vector")
            out[k] += coef
        return out

    def element(self, coords: Sequence[Fraction]) -> SuperMatrix:
        out = SuperMatrix.zero(self.size, self.p)
        for c, b in zip(coords, self.basis):
            if c:
                out = out + b.matrix * c
        return out

    def gram(self) -> list[list[Fraction]]:
        return [[invariant_form(a.matrix, b.matrix) for b in self.basis] for a in self.basis]

    def pair(self, w: Sequence[Fraction], d: SuperMatrix) -> Fraction:
        """Natural pairing of a weight with a diagonal element."""
        return sum((a * b for a, b in zip(w, self.cartan_coords(d))), Fraction(0))


def realize(datum: RootDatum) -> Realization:
    """Matrix realization of gl(m|n) or osp(2|2n)."""
    if datum.family == "GL":
        return _realize_gl(datum)
    if datum.family == "OSP":
        return _realize_osp(datum)
    raise UnsupportedFamily(f"no matrix realization implemented for {datum.name}")


def _realize_gl(datum: RootDatum) -> Realization:
    m, n = datum.m, datum.n
    size = m + n
    iw = tuple(unit_weight(size, i) for i in range(size))
    basis = []
    for i in range(size):
        for j in range(size):
            mat = SuperMatrix.unit(size, m, i, j)
            basis.append(BasisVector(mat, wsub(iw[i], iw[j]), mat.entry_parity(i, j)))
    cartan = tuple(SuperMatrix.unit(size, m, i, i) for i in range(size))
    return Realization(datum, size, m, iw, tuple(basis), cartan)


def osp_gram(n: int) -> dict:
    """Even supersymmetric form on C^{2|2n}: symmetric on the even part, skew on the odd part."""
    g = {(0, 1): Fraction(1), (1, 0): Fraction(1)}
    for i in range(2 * n):
        partner = 2 * n - 1 - i
        g[(2 + i, 2 + partner)] = Fraction(1 if i < n else -1)
    return g


def osp_condition_rows(n: int, positions: Sequence[tuple], parity: int) -> list[list[Fraction]]:
    """Linear conditions on the entries at ``positions`` for membership in osp(2|2n)."""
    size, p = 2 + 2 * n, 2
    g = osp_gram(n)
    gcol: dict = {}
    grow: dict = {}
    for (a, b), v in g.items():
        gcol.setdefault(a, []).append((b, v))
        grow.setdefault(b, []).append((a, v))
    rows: dict = {}
    for idx, (k, v) in enumerate(positions):
        # (X^T G)[v, w] += X[k, v] G[k, w]
        for w, gv in gcol.get(k, ()):
            rows.setdefault((v, w), {}).setdefault(idx, Fraction(0))
            rows[(v, w)][idx] += gv
        # sign * (G X)[a, v] with X[k, v] = G[a, k] X[k, v]
        for a, gv in grow.get(k, ()):
            sign = -1 if (parity and a >= p) else 1
            rows.setdefault((a, v), {}).setdefault(idx, Fraction(0))
            rows[(a, v)][idx] += sign * gv
    out = []
    for key in sorted(rows):
        r = [Fraction(0)] * len(positions)
        for idx, val in rows[key].items():
            r[idx] = val
        if any(r):
            out.append(r)
    return out


def _realize_osp(datum: RootDatum) -> Realization:
    n = datum.n
    size, p, k = 2 + 2 * n, 2, 1 + n
    iw = [unit_weight(k, 0), unit_weight(k, 0, -1)]
    for i in range(2 * n):
        iw.append(unit_weight(k, 1 + i) if i < n else unit_weight(k, 1 + (2 * n - 1 - i), -1))
    iw = tuple(iw)
    spaces: dict = {}
    for i in range(size):
        for j in range(size):
            par = int((i < p) != (j < p))
            spaces.setdefault((wsub(iw[i], iw[j]), par), []).append((i, j))
    zero = zero_weight(k)
    basis = []
    for (w, par), positions in sorted(spaces.items()):
        if w == zero:
            continue
        rows = osp_condition_rows(n, positions, par)
        for vec in linalg.nullspace(rows, len(positions)):
            mat = SuperMatrix(size, p, {pos: c for pos, c in zip(positions, vec)})
            basis.append(BasisVector(mat, w, par))
    cartan = []
    for j in range(k):
        cartan.append(SuperMatrix.diagonal(p, [iw[i][j] for i in range(size)]))
    basis = [BasisVector(h, zero, EVEN) for h in cartan] + basis
    return Realization(datum, size, p, iw, tuple(basis), tuple(cartan))


def restrict_to_torus(alg: Realization, w: Sequence[Fraction], torus_basis: Sequence[SuperMatrix],
                      levi_elements: Sequence[SuperMatrix] = ()) -> Weight:
    """Pairings of ``w`` with each torus basis element.

    ``levi_elements`` optionally spans the Levi; every torus element must
    commute with it.
    """
    for t in torus_basis:
        if not t.is_diagonal():
            raise NotCentral("torus basis elements must be diagonal")
        for x in levi_elements:
            if not bracket(t, x).is_zero():
                raise NotCentral("torus basis element is not central in the Levi")
    return tuple(alg.pair(w, t) for t in torus_basis)

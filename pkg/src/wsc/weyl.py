"""Levi subalgebras of the even part, their Weyl groups, the dot action and
the Weyl dimension formula.

Weyl group elements are signed permutations in one-line notation:
``w[i] = +-(j + 1)`` means ``w(e_i) = +-e_j``.  Type A blocks only ever use
the + sign; type C blocks (the sp(2n) factor of osp(2|2n)) use both.
"""
from __future__ import annotations

import math
import re
from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Sequence

import numpy as np

from . import kernels
from .errors import GroupTooLarge, InvalidLevi, NotDominant, ParseError
from .superalgebra import RootDatum, Weight, wadd, wscale, wsub, zero_weight, unit_weight

DEFAULT_GROUP_BOUND = 5040


@dataclass(frozen=True)
class LeviBlock:
    kind: str  # "A" or "C"
    coords: tuple

    @property
    def size(self) -> int:
        return len(self.coords)


@dataclass(frozen=True)
class Levi:
    """A standard Levi subalgebra of the even part, given by coordinate blocks."""

    rank: int
    m: int
    blocks: tuple

    @cached_property
    def positive_roots(self) -> tuple:
        k = self.rank
        e = lambda i: unit_weight(k, i)  # noqa: E731
        out = []
        for b in self.blocks:
            c = b.coords
            for i in range(len(c)):
                for j in range(i + 1, len(c)):
                    out.append(wsub(e(c[i]), e(c[j])))
            if b.kind == "C":
                for i in range(len(c)):
                    for j in range(i + 1, len(c)):
                        out.append(wadd(e(c[i]), e(c[j])))
                out.extend(wscale(2, e(ci)) for ci in c)
        return tuple(out)

    @cached_property
    def simple_roots(self) -> tuple:
        k = self.rank
        e = lambda i: unit_weight(k, i)  # noqa: E731
        out = []
        for b in self.blocks:
            c = b.coords
            out.extend(wsub(e(c[i]), e(c[i + 1])) for i in range(len(c) - 1))
            if b.kind == "C" and c:
                out.append(wscale(2, e(c[-1])))
        return tuple(out)

    @cached_property
    def rho(self) -> Weight:
        acc = zero_weight(self.rank)
        for r in self.positive_roots:
            acc = wadd(acc, r)
        return wscale(Fraction(1, 2), acc)

    @property
    def center_blocks(self) -> tuple:
        """Blocks contributing a central torus direction (type A blocks)."""
        return tuple(b for b in self.blocks if b.kind == "A")

    def order(self) -> int:
        out = 1
        for b in self.blocks:
            out *= math.factorial(b.size) * (2 ** b.size if b.kind == "C" else 1)
        return out

    def contains_root(self, root: Sequence[Fraction]) -> bool:
        return tuple(root) in set(self.positive_roots) or wscale(-1, root) in set(self.positive_roots)

    def label(self) -> str:
        even = [b for b in self.blocks if all(c < self.m for c in b.coords)]
        odd = [b for b in self.blocks if b not in even]
        fmt = lambda b: (f"C{b.size}" if b.kind == "C" else str(b.size))  # noqa: E731
        return "+".join(map(fmt, even)) + "|" + "+".join(map(fmt, odd))


def full_levi(datum: RootDatum) -> Levi:
    """The whole even part g_0bar."""
    m, n = datum.m, datum.n
    if datum.family == "OSP":
        blocks = (LeviBlock("A", (0,)), LeviBlock("C", tuple(range(1, 1 + n))))
    else:
        blocks = tuple(b for b in (LeviBlock("A", tuple(range(m))), LeviBlock("A", tuple(range(m, m + n))))
                       if b.size)
    return Levi(m + n, m, blocks)


def torus_levi(datum: RootDatum) -> Levi:
    k = datum.rank
    return Levi(k, datum.m, tuple(LeviBlock("A", (i,)) for i in range(k)))


_C_RE = re.compile(r"^[cC](\d+)$")


def parse_levi(text: str | None, datum: RootDatum) -> Levi:
    """Parse a block composition ``"a1+a2|b1+b2"``.

    For osp(2|2n) the even side is ``1`` and a trailing ``C<r>`` token on the
    odd side denotes an sp(2r) block, e.g. ``"1|C2"`` or ``"1|1+C1"``.
    ``None`` or ``""`` gives the whole even part.
    """
    if text is None or not text.strip():
        return full_levi(datum)
    if text.count("|") != 1:
        raise ParseError(f"Levi must look like 'a1+a2|b1': {text!r}")
    left, right = (s.strip() for s in text.split("|"))
    m, n = datum.m, datum.n

    def tokens(s):
        return [t.strip() for t in s.split("+")] if s else []

    blocks = []
    pos = 0
    for t in tokens(left):
        if not t.isdigit() or int(t) == 0:
            raise ParseError(f"bad Levi block {t!r}")
        blocks.append(LeviBlock("A", tuple(range(pos, pos + int(t)))))
        pos += int(t)
    if pos != m:
        raise InvalidLevi(f"even-side blocks of {text!r} do not sum to {m}")
    toks = tokens(right)
    for idx, t in enumerate(toks):
        mc = _C_RE.match(t)
        if mc:
            if datum.family != "OSP" or idx != len(toks) - 1:
                raise InvalidLevi("a C block is only allowed last, and only for osp(2|2n)")
            size = int(mc.group(1))
            blocks.append(LeviBlock("C", tuple(range(pos, pos + size))))
            pos += size
            continue
        if not t.isdigit() or int(t) == 0:
            raise ParseError(f"bad Levi block {t!r}")
        blocks.append(LeviBlock("A", tuple(range(pos, pos + int(t)))))
        pos += int(t)
    if pos != m + n:
        raise InvalidLevi(f"blocks of {text!r} do not sum to ({m}|{n})")
    if datum.family == "OSP" and (len(blocks) == 0 or blocks[0].coords != (0,)):
        raise InvalidLevi("osp(2|2n) Levis must have even side '1'")
    return Levi(m + n, m, tuple(blocks))


# ---------------------------------------------------------------------------
# signed permutations
# ---------------------------------------------------------------------------

def identity(rank: int) -> tuple:
    return tuple(range(1, rank + 1))


def compose(u: tuple, v: tuple) -> tuple:
    """(u v)(e_i) = u(v(e_i))."""
    out = []
    for vi in v:
        j = abs(vi) - 1
        out.append(u[j] if vi > 0 else -u[j])
    return tuple(out)


def inverse(w: tuple) -> tuple:
    out = [0] * len(w)
    for i, wi in enumerate(w):
        out[abs(wi) - 1] = (i + 1) if wi > 0 else -(i + 1)
    return tuple(out)


def act(w: tuple, v: Sequence[Fraction]) -> Weight:
    out = [Fraction(0)] * len(v)
    for i, wi in enumerate(w):
        out[abs(wi) - 1] = v[i] if wi > 0 else -v[i]
    return tuple(out)


def dot_action(w: tuple, lam: Sequence[Fraction], rho0: Sequence[Fraction]) -> Weight:
    """w . lam = w(lam + rho0) - rho0."""
    return wsub(act(w, wadd(lam, rho0)), rho0)


def simple_reflections(levi: Levi) -> list[tuple]:
    base = list(identity(levi.rank))
    out = []
    for b in levi.blocks:
        c = b.coords
        for i in range(len(c) - 1):
            s = base.copy()
            s[c[i]], s[c[i + 1]] = c[i + 1] + 1, c[i] + 1
            out.append(tuple(s))
        if b.kind == "C" and c:
            s = base.copy()
            s[c[-1]] = -(c[-1] + 1)
            out.append(tuple(s))
    return out


def length_of(levi: Levi, w: tuple) -> int:
    """Number of positive Levi roots sent to negative roots."""
    pos = set(levi.positive_roots)
    return sum(1 for r in levi.positive_roots if act(w, r) not in pos)


class WeylGroup:
    """Complete element list, lengths, multiplication tables and Bruhat order."""

    def __init__(self, levi: Levi, bound: int = DEFAULT_GROUP_BOUND):
        order = levi.order()
        if order > bound:
            raise GroupTooLarge(f"|W| = {order} exceeds the bound {bound}")
        self.levi = levi
        self.rank = levi.rank
        self.simple = simple_reflections(levi)
        e = identity(self.rank)
        elements = [e]
        index = {e: 0}
        length = [0]
        queue = deque([e])
        while queue:
            x = queue.popleft()
            for s in self.simple:
                y = compose(x, s)
                if y not in index:
                    index[y] = len(elements)
                    elements.append(y)
                    length.append(length[index[x]] + 1)
                    queue.append(y)
        self.elements = elements
        self.index = index
        self.length = np.array(length, dtype=np.int64)
        ns = len(self.simple)
        self.right_mult = np.empty((ns, len(elements)), dtype=np.int64)
        self.left_mult = np.empty((ns, len(elements)), dtype=np.int64)
        for k, s in enumerate(self.simple):
            for i, x in enumerate(elements):
                self.right_mult[k, i] = index[compose(x, s)]
                self.left_mult[k, i] = index[compose(s, x)]
        self.longest = int(np.argmax(self.length))
        self._bruhat = None

    def __len__(self) -> int:
        return len(self.elements)

    def bruhat(self, backend: str | None = None) -> np.ndarray:
        if self._bruhat is None or backend is not None:
            order = np.argsort(self.length, kind="stable")
            leq = kernels.bruhat_matrix(order, self.right_mult, self.length, backend=backend)
            if backend is not None:
                return leq
            self._bruhat = leq
        return self._bruhat

    def leq(self, x: tuple, w: tuple) -> bool:
        return bool(self.bruhat()[self.index[x], self.index[w]])

    def ell(self, w: tuple) -> int:
        return int(self.length[self.index[w]])

    def covers(self) -> list[tuple[int, int]]:
        """Bruhat covering relations (x, w) with x < w and l(w) = l(x) + 1."""
        leq = self.bruhat()
        out = []
        for w in range(len(self)):
            for x in np.nonzero(leq[:, w])[0]:
                if self.length[x] + 1 == self.length[w]:
                    out.append((int(x), w))
        return out


def weyl_group(levi: Levi, bound: int = DEFAULT_GROUP_BOUND) -> WeylGroup:
    return WeylGroup(levi, bound)


# ---------------------------------------------------------------------------
# dominance, Weyl dimension formula
# ---------------------------------------------------------------------------

def _dot(a: Sequence[Fraction], b: Sequence[Fraction]) -> Fraction:
    return sum((x * y for x, y in zip(a, b)), Fraction(0))


def coroot_pairing(v: Sequence[Fraction], alpha: Sequence[Fraction]) -> Fraction:
    return 2 * _dot(v, alpha) / _dot(alpha, alpha)


def is_integral(levi: Levi, mu: Sequence[Fraction]) -> bool:
    return all(coroot_pairing(mu, a).denominator == 1 for a in levi.simple_roots)


def is_levi_dominant(levi: Levi, mu: Sequence[Fraction]) -> bool:
    """Integral and dominant for the Levi: <mu, alpha^vee> in Z_{>=0} on simple roots."""
    return all((c := coroot_pairing(mu, a)).denominator == 1 and c >= 0 for a in levi.simple_roots)


def weyl_dimension(levi: Levi, mu: Sequence[Fraction]) -> int:
    """dim of the simple Levi module of highest weight mu."""
    if not is_levi_dominant(levi, mu):
        raise NotDominant(f"{tuple(str(x) for x in mu)} is not Levi-dominant integral")
    rho = levi.rho
    shifted = wadd(mu, rho)
    num, den = Fraction(1), Fraction(1)
    for a in levi.positive_roots:
        num *= _dot(shifted, a)
        den *= _dot(rho, a)
    val = num / den
    assert val.denominator == 1 and val > 0
    return int(val)


def to_levi_dominant(levi: Levi, nu: Sequence[Fraction], rho0: Sequence[Fraction]):
    """Return ``(u, mu)`` with ``mu = u . nu`` Levi-dominant, or None when nu + rho0
    lies on a wall of the Levi (a singular weight)."""
    x = wadd(nu, rho0)
    target = [0] * levi.rank
    for i in range(levi.rank):
        target[i] = i + 1
    for b in levi.blocks:
        c = b.coords
        if b.kind == "A":
            vals = [x[i] for i in c]
            if len(set(vals)) < len(vals):
                return None
            srt = sorted(range(len(c)), key=lambda k: -vals[k])
            for pos, k in enumerate(srt):
                target[c[k]] = c[pos] + 1
        else:
            vals = [abs(x[i]) for i in c]
            if 0 in vals or len(set(vals)) < len(vals):
                return None
            srt = sorted(range(len(c)), key=lambda k: -vals[k])
            for pos, k in enumerate(srt):
                target[c[k]] = (c[pos] + 1) * (1 if x[c[k]] > 0 else -1)
    u = tuple(target)
    mu = dot_action(u, nu, rho0)
    return u, mu


def levi_length(levi: Levi, u: tuple) -> int:
    return length_of(levi, u)

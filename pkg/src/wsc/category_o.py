"""Grothendieck-group coefficients of Kac modules in parabolic category O.

For typical integral regular lambda the Kac module is simple and

    ch L-hat(lambda) = ch L_0(lambda) * prod_{beta odd positive} (1 + e^-beta),

with ch L_0(lambda) expanded into Verma characters by even Kazhdan-Lusztig
polynomials.  Multiplying a Verma character by e^-sigma just shifts its
highest weight, so the whole thing is a finite Verma combination, which is then
regrouped into parabolic Verma characters for the chosen Levi.
"""
from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from pathlib import Path
from typing import Sequence

from .errors import AtypicalWeight, NotDominant, ParseError, SingularWeight
from .kl import KLTable
from .superalgebra import RootDatum, format_weight, parse_weight, wadd, wsub, zero_weight
from .weyl import (Levi, WeylGroup, compose, dot_action, full_levi, inverse, is_integral, is_levi_dominant,
                   levi_length, to_levi_dominant)

RHO_CONVENTION = "rho = rho0 - rho1, half-sums over the positive system of the matrix realization"

_GROUPS: dict = {}


def even_kl_table(datum: RootDatum) -> KLTable:
    """Shared KL table for the full even Weyl group (the table locks internally)."""
    levi = full_levi(datum)
    tab = _GROUPS.get(levi)
    if tab is None:
        tab = _GROUPS.setdefault(levi, KLTable(WeylGroup(levi)))
    return tab


def typicality(datum: RootDatum, lam: Sequence[Fraction]) -> bool:
    shifted = wadd(lam, datum.rho)
    return all(datum.form(shifted, b) != 0 for b in datum.odd_positive_roots)


def atypical_roots(datum: RootDatum, lam: Sequence[Fraction]) -> list:
    shifted = wadd(lam, datum.rho)
    return [b for b in datum.odd_positive_roots if datum.form(shifted, b) == 0]


def _normalize(vc: dict) -> dict:
    return {k: v for k, v in sorted(vc.items()) if v}


def even_verma_expansion(datum: RootDatum, lam: Sequence[Fraction]) -> dict:
    """ch L_0(lambda) as a combination of Verma characters (weight -> coefficient)."""
    levi = full_levi(datum)
    lam = tuple(Fraction(x) for x in lam)
    if not is_integral(levi, lam):
        raise NotDominant(f"{format_weight(lam, datum.m)} is not integral for the even part")
    r = to_levi_dominant(levi, lam, datum.rho0)
    if r is None:
        raise SingularWeight(f"{format_weight(lam, datum.m)} is singular for the dot action")
    u, lam_dom = r
    table = even_kl_table(datum)
    g = table.group
    w0 = g.elements[g.longest]
    lam0 = dot_action(w0, lam_dom, datum.rho0)
    w = compose(inverse(u), w0)
    wi = g.index[w]
    col = table.column(wi)
    leq = g.bruhat()
    lw = int(g.length[wi])
    out: Counter = Counter()
    for xi in range(len(g)):
        if not leq[xi, wi]:
            continue
        p1 = int(col[xi].sum())
        sign = -1 if (lw - int(g.length[xi])) % 2 else 1
        out[dot_action(g.elements[xi], lam0, datum.rho0)] += sign * p1
    return _normalize(out)


def odd_subset_shifts(datum: RootDatum) -> Counter:
    """sigma -> number of subsets S of odd positive roots with sum(S) = sigma."""
    k = datum.rank
    out: Counter = Counter()
    roots = datum.odd_positive_roots
    for r in range(len(roots) + 1):
        for sub in combinations(roots, r):
            acc = zero_weight(k)
            for b in sub:
                acc = wadd(acc, b)
            out[acc] += 1
    return out


def kac_character_verma_expansion(datum: RootDatum, lam: Sequence[Fraction]) -> dict:
    lam = tuple(Fraction(x) for x in lam)
    if not typicality(datum, lam):
        bad = ", ".join(format_weight(b, datum.m) for b in atypical_roots(datum, lam))
        raise AtypicalWeight(f"{format_weight(lam, datum.m)} is atypical (orthogonal to {bad})")
    even = even_verma_expansion(datum, lam)
    out: Counter = Counter()
    for sigma, mult in odd_subset_shifts(datum).items():
        for nu, c in even.items():
            out[wsub(nu, sigma)] += mult * c
    return _normalize(out)


@dataclass(frozen=True)
class MultiplicityTable:
    lam: tuple | None
    entries: tuple  # ((weight, coeff), ...)
    source: str
    levi: Levi

    def as_dict(self) -> dict:
        return dict(self.entries)

    def to_json(self, m: int) -> dict:
        return {"lambda": None if self.lam is None else format_weight(self.lam, m),
                "entries": [{"weight": format_weight(w, m), "coeff": c} for w, c in self.entries],
                "source": self.source}


def to_parabolic_verma_basis(vc: dict, levi: Levi, rho0: Sequence[Fraction], lam=None,
                             source: str = "computed-typical") -> MultiplicityTable:
    """Regroup Verma characters into parabolic Verma characters; singular weights drop out.

    Every Verma weight is moved to its Levi-dominant representative with the
    sign (-1)^l(u).  A combination of parabolic Vermas is W_L-antisymmetric, so
    each orbit contributes |W_L| times its coefficient; the sum is divided by
    |W_L| and must agree with the coefficient found at the dominant weight.
    """
    out: Counter = Counter()
    at_dominant: Counter = Counter()
    for nu, c in vc.items():
        r = to_levi_dominant(levi, nu, rho0)
        if r is None:
            continue
        u, mu = r
        out[mu] += (-1) ** levi_length(levi, u) * c
        if mu == tuple(nu):
            at_dominant[mu] += c
    order = levi.order()
    for mu, c in out.items():
        if c % order or c // order != at_dominant[mu]:
            raise ValueError("input is not a combination of parabolic Verma characters for this Levi")
    entries = tuple((w, c // order) for w, c in sorted(out.items()) if c)
    return MultiplicityTable(None if lam is None else tuple(lam), entries, source, levi)


def parabolic_to_verma(table: MultiplicityTable, rho0: Sequence[Fraction]) -> dict:
    """ch Delta_P(mu) = sum over W_L of (-1)^l(u) ch M(u . mu)."""
    g = WeylGroup(table.levi)
    out: Counter = Counter()
    for mu, c in table.entries:
        for i, u in enumerate(g.elements):
            out[dot_action(u, mu, rho0)] += (-1) ** int(g.length[i]) * c
    return _normalize(out)


def kac_multiplicity_table(datum: RootDatum, lam: Sequence[Fraction], levi: Levi) -> MultiplicityTable:
    lam = tuple(Fraction(x) for x in lam)
    if not is_levi_dominant(levi, lam):
        raise NotDominant(f"{format_weight(lam, datum.m)} is not dominant for the Levi {levi.label()}")
    return to_parabolic_verma_basis(kac_character_verma_expansion(datum, lam), levi, datum.rho0, lam)


def even_multiplicity_table(datum: RootDatum, lam: Sequence[Fraction], levi: Levi) -> MultiplicityTable:
    """Parabolic Verma coefficients of the even simple module L_0(lambda)."""
    lam = tuple(Fraction(x) for x in lam)
    if not is_levi_dominant(levi, lam):
        raise NotDominant(f"{format_weight(lam, datum.m)} is not dominant for the Levi {levi.label()}")
    return to_parabolic_verma_basis(even_verma_expansion(datum, lam), levi, datum.rho0, lam, "computed-even")


def parse_multiplicity_table(data, datum: RootDatum, levi: Levi) -> MultiplicityTable:
    if not isinstance(data, dict) or not isinstance(data.get("entries"), list):
        raise ParseError("multiplicity table must be an object with an 'entries' list")
    if not data["entries"]:
        raise ParseError("multiplicity table is empty")
    entries: Counter = Counter()
    for ent in data["entries"]:
        try:
            w = parse_weight(ent["weight"], datum.m, datum.n)
            c = ent["coeff"]
        except (KeyError, TypeError) as exc:
            raise ParseError(f"bad table entry {ent!r}") from exc
        if not isinstance(c, int) or isinstance(c, bool):
            raise ParseError(f"coefficient must be an integer: {c!r}")
        if not is_levi_dominant(levi, w):
            raise NotDominant(f"table weight {ent['weight']} is not Levi-dominant integral")
        entries[w] += c
    lam = data.get("lambda")
    lam = parse_weight(lam, datum.m, datum.n) if lam else None
    return MultiplicityTable(lam, tuple(sorted((w, c) for w, c in entries.items() if c)),
                             "user-supplied", levi)


def load_multiplicity_table(path: str | Path, datum: RootDatum, levi: Levi) -> MultiplicityTable:
    try:
        data = json.loads(Path(path).read_text())
    except (OSError, ValueError) as exc:
        raise ParseError(f"cannot read multiplicity table {path}: {exc}") from exc
    return parse_multiplicity_table(data, datum, levi)

"""Formal characters on the torus t.

A ``FormalCharacter`` is a finite map TorusWeight -> int together with the
window it is exact on.  The window keeps e^nu with
``<nu, direction> >= <reference, direction> - depth``.  A character with
``truncation=None`` is an exact Laurent polynomial.

``RationalCharacter`` keeps a Laurent numerator over a product of factors
(1 - e^mu)^-1 or (1 + e^mu)^-1 and only expands at the end, so exact
cancellation is attempted before anything is truncated.
"""
from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .errors import DivergentDirection, InexactDivision, NonIntegralDivision

TorusWeight = tuple

# sign of a geometric factor: (1 + sign * e^mu)^-1
MINUS, PLUS = -1, +1


def pairing(a: Sequence[Fraction], b: Sequence[Fraction]) -> Fraction:
    return sum((Fraction(x) * Fraction(y) for x, y in zip(a, b)), Fraction(0))


def _add(a: Sequence[Fraction], b: Sequence[Fraction]) -> TorusWeight:
    return tuple(Fraction(x) + Fraction(y) for x, y in zip(a, b))


def _scale(c, a: Sequence[Fraction]) -> TorusWeight:
    return tuple(Fraction(c) * Fraction(x) for x in a)


def _clean(terms: Mapping) -> dict:
    return {tuple(Fraction(x) for x in k): int(v) for k, v in terms.items() if v}


@dataclass(frozen=True)
class TruncationSpec:
    direction: TorusWeight
    depth: int
    reference: TorusWeight

    @property
    def floor(self) -> Fraction:
        return pairing(self.reference, self.direction) - self.depth

    def keeps(self, nu: Sequence[Fraction]) -> bool:
        return pairing(nu, self.direction) >= self.floor


@dataclass(frozen=True)
class FormalCharacter:
    terms: dict = field(default_factory=dict)
    truncation: TruncationSpec | None = None

    @classmethod
    def monomial(cls, nu: Sequence[Fraction], coeff: int = 1, truncation: TruncationSpec | None = None):
        return cls(_clean({tuple(nu): coeff}), truncation)

    @classmethod
    def one(cls, rank: int, truncation: TruncationSpec | None = None):
        return cls.monomial((Fraction(0),) * rank, 1, truncation)

    @property
    def is_polynomial(self) -> bool:
        return self.truncation is None

    def coefficient(self, nu: Sequence[Fraction]) -> int:
        return self.terms.get(tuple(Fraction(x) for x in nu), 0)

    def evaluate_at_one(self) -> int:
        if not self.is_polynomial:
            raise ValueError("cannot evaluate a truncated series at 1")
        return sum(self.terms.values())

    def restricted(self, spec: TruncationSpec) -> "FormalCharacter":
        return FormalCharacter({k: v for k, v in self.terms.items() if spec.keeps(k)}, spec)

    def sorted_terms(self, direction: Sequence[Fraction] | None = None) -> list[tuple]:
        d = direction if direction is not None else (self.truncation.direction if self.truncation else None)
        if d is None:
            return sorted(self.terms.items(), key=lambda kv: tuple(-x for x in kv[0]))
        return sorted(self.terms.items(), key=lambda kv: (-pairing(kv[0], d), tuple(-x for x in kv[0])))


def _merge_spec(a: FormalCharacter, b: FormalCharacter) -> TruncationSpec | None:
    if a.truncation is None:
        return b.truncation
    if b.truncation is None or a.truncation == b.truncation:
        return a.truncation
    # the narrower window wins
    return a.truncation if a.truncation.floor >= b.truncation.floor else b.truncation


def char_add(a: FormalCharacter, b: FormalCharacter) -> FormalCharacter:
    spec = _merge_spec(a, b)
    out = Counter(a.terms)
    out.update(b.terms)
    res = FormalCharacter(_clean(out), spec)
    return res.restricted(spec) if spec else res


def char_scale(a: FormalCharacter, c: int) -> FormalCharacter:
    return FormalCharacter(_clean({k: c * v for k, v in a.terms.items()}), a.truncation)


def char_mul(a: FormalCharacter, b: FormalCharacter) -> FormalCharacter:
    spec = _merge_spec(a, b)
    out: Counter = Counter()
    for x, c in a.terms.items():
        for y, d in b.terms.items():
            nu = _add(x, y)
            if spec is None or spec.keeps(nu):
                out[nu] += c * d
    return FormalCharacter(_clean(out), spec)


def char_shift(a: FormalCharacter, lam: Sequence[Fraction]) -> FormalCharacter:
    """Multiply by e^lam (the window is not moved)."""
    out = FormalCharacter(_clean({_add(k, lam): v for k, v in a.terms.items()}), a.truncation)
    return out.restricted(a.truncation) if a.truncation else out


def char_geom_inverse(a: FormalCharacter, mu: Sequence[Fraction], sign: int,
                      spec: TruncationSpec | None = None) -> FormalCharacter:
    """a * (1 + sign e^mu)^-1 expanded as a geometric series in e^mu.

    Needs <mu, direction> < 0 so that the series terminates in the window.
    """
    spec = spec or a.truncation
    if spec is None:
        raise DivergentDirection("a geometric series needs a truncation window")
    if pairing(mu, spec.direction) >= 0:
        raise DivergentDirection(f"weight {tuple(map(str, mu))} does not decrease along the truncation direction")
    step = -1 if sign == PLUS else 1
    out: Counter = Counter()
    for x, c in a.terms.items():
        k, coeff, nu = 0, c, tuple(x)
        while spec.keeps(nu):
            out[nu] += coeff
            k += 1
            coeff *= step
            nu = _add(nu, mu)
    return FormalCharacter(_clean(out), spec)


# ---------------------------------------------------------------------------
# Laurent polynomial division by (1 + e^mu)
# ---------------------------------------------------------------------------

def divide_one_plus(terms: Mapping, mu: Sequence[Fraction]) -> dict | None:
    """Exact quotient of a Laurent polynomial by (1 + e^mu), or None."""
    return divide_binomial(terms, mu, PLUS)


def divide_binomial(terms: Mapping, mu: Sequence[Fraction], sign: int) -> dict | None:
    """Exact quotient by (1 + sign e^mu), or None if it does not divide."""
    mu = tuple(Fraction(x) for x in mu)
    if not any(mu):
        if sign == MINUS:
            return None if terms else {}
        if all(v % 2 == 0 for v in terms.values()):
            return {k: v // 2 for k, v in terms.items()}
        return None
    j = next(i for i, x in enumerate(mu) if x)
    lines: dict = {}
    for nu, c in terms.items():
        t = Fraction(nu[j]) / mu[j]
        frac = t - math.floor(t)
        base = _add(nu, _scale(-(t - frac), mu))
        lines.setdefault(base, {})[int(t - frac)] = c
    out = {}
    for base, coeffs in lines.items():
        ks = sorted(coeffs)
        top, lo = ks[-1], ks[0]
        rem = dict(coeffs)
        # synthetic division from the top: q_{k-1} = sign r_k, r_{k-1} -= q_{k-1}
        for k in range(top, lo, -1):
            q = sign * rem.pop(k, 0)
            if q:
                out[_add(base, _scale(k - 1, mu))] = q
                rem[k - 1] = rem.get(k - 1, 0) - q
        if any(rem.values()):
            return None
    return _clean(out)


def multiply_one_plus(terms: Mapping, mu: Sequence[Fraction]) -> dict:
    out = Counter(terms)
    for k, v in terms.items():
        out[_add(k, mu)] += v
    return _clean(out)


# ---------------------------------------------------------------------------
# rational characters
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class RationalCharacter:
    """numerator * prod (1 + sign e^mu)^-1 over ``factors`` = ((mu, sign), ...)."""

    numerator: dict
    factors: tuple = ()

    @property
    def is_polynomial(self) -> bool:
        return not self.factors

    def __add__(self, other: "RationalCharacter") -> "RationalCharacter":
        if Counter(self.factors) != Counter(other.factors):
            raise ValueError("can only add rational characters with the same denominator")
        out = Counter(self.numerator)
        out.update(other.numerator)
        return RationalCharacter(_clean(out), self.factors)

    def scaled(self, c: int) -> "RationalCharacter":
        return RationalCharacter(_clean({k: c * v for k, v in self.numerator.items()}), self.factors)

    def divided(self, k: int) -> "RationalCharacter":
        if k <= 0:
            raise NonIntegralDivision(f"orbit size must be positive, got {k}")
        if any(v % k for v in self.numerator.values()):
            raise NonIntegralDivision(f"numerator coefficients are not divisible by {k}")
        return RationalCharacter({n: v // k for n, v in self.numerator.items()}, self.factors)

    def simplified(self) -> "RationalCharacter":
        """Cancel every denominator factor that divides the numerator exactly."""
        num, left = dict(self.numerator), []
        for mu, sign in self.factors:
            q = divide_binomial(num, mu, sign)
            if q is None:
                left.append((mu, sign))
            else:
                num = q
        return RationalCharacter(num, tuple(left))

    def divide_by_one_plus(self, mus: Iterable[Sequence[Fraction]]) -> "RationalCharacter":
        """Divide by prod (1 + e^mu); exact cancellation first, series factors otherwise."""
        num, factors = dict(self.numerator), list(self.factors)
        for mu in mus:
            mu = tuple(Fraction(x) for x in mu)
            q = divide_one_plus(num, mu)
            if q is not None:
                num = q
                continue
            if self.is_polynomial:
                raise InexactDivision(f"polynomial character is not divisible by (1 + e^{tuple(map(str, mu))})")
            factors.append((mu, PLUS))
        return RationalCharacter(num, tuple(factors))

    def reference(self, direction: Sequence[Fraction]) -> TorusWeight:
        """Leading numerator monomial along ``direction`` (ties broken lexicographically)."""
        if not self.numerator:
            return ()
        return max(self.numerator, key=lambda k: (pairing(k, direction), k))

    def expand(self, direction: Sequence[Fraction], depth: int) -> FormalCharacter:
        if self.is_polynomial:
            return FormalCharacter(dict(self.numerator), None)
        rank = len(direction)
        num = dict(self.numerator)
        ordered = []
        for mu, sign in self.factors:
            p = pairing(mu, direction)
            if p == 0:
                raise DivergentDirection(f"weight {tuple(map(str, mu))} is orthogonal to the truncation direction")
            if p > 0:
                if sign == MINUS:
                    raise DivergentDirection(f"denominator weight {tuple(map(str, mu))} has positive pairing")
                # (1 + e^mu)^-1 = e^-mu (1 + e^-mu)^-1
                num = {_add(k, _scale(-1, mu)): v for k, v in num.items()}
                mu = _scale(-1, mu)
            ordered.append((mu, sign))
        ref = RationalCharacter(num).reference(direction) or (Fraction(0),) * rank
        spec = TruncationSpec(tuple(Fraction(x) for x in direction), depth, ref)
        ch = FormalCharacter(_clean(num), spec).restricted(spec)
        for mu, sign in ordered:
            ch = char_geom_inverse(ch, mu, sign, spec)
        return ch

    def evaluate_at_one(self) -> int:
        if not self.is_polynomial:
            raise ValueError("series character has no value at 1")
        return sum(self.numerator.values())

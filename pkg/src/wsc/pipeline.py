"""Characters of W-tilde and W modules from parabolic Verma coefficients.

    parabolic Verma:  dim L_00(mu) e^{mu - rho0} prod_i (1 - e^{mu_i})^-1
    simple:           sum_i c_i * (the above at lambda_i)
    one summand:      divide by |I_lambda|
    W-module:         multiply by prod_j (1 + e^{mu'_j})^-1

mu_i are the denominator weights, mu'_j the Clifford weights, everything
restricted to the torus t.  rho0 is the half-sum of the positive even roots.
"""
from __future__ import annotations

import os
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .category_o import MultiplicityTable
from .characters import MINUS, FormalCharacter, RationalCharacter, pairing
from .errors import DivergentDirection, InexactDivision, NonIntegralDivision, OrbitSizeRequired
from .nilpotent import NilpotentDatum
from .superalgebra import wsub
from .weyl import weyl_dimension

DEFAULT_DEPTH = 20


def default_depth() -> int:
    raw = os.environ.get("WSC_DEPTH")
    if raw is None or not raw.strip():
        return DEFAULT_DEPTH
    try:
        val = int(raw)
    except ValueError as exc:
        from .errors import ParseError
        raise ParseError(f"WSC_DEPTH must be a nonnegative integer, got {raw!r}") from exc
    if val < 0:
        from .errors import ParseError
        raise ParseError(f"WSC_DEPTH must be a nonnegative integer, got {raw!r}")
    return val


def _denominators(nd: NilpotentDatum) -> tuple:
    return tuple(sorted((mu, MINUS) for mu in nd.denominator_weights()))


def check_direction(nd: NilpotentDatum, direction: Sequence[Fraction]) -> None:
    for mu in nd.denominator_weights():
        if pairing(mu, direction) >= 0:
            raise DivergentDirection(f"denominator weight {tuple(map(str, mu))} does not pair negatively "
                                     "with the truncation direction")


def parabolic_verma_rational(nd: NilpotentDatum, mu: Sequence[Fraction]) -> RationalCharacter:
    dim = weyl_dimension(nd.levi, mu)
    nu = nd.restrict(wsub(mu, nd.datum.rho0))
    return RationalCharacter({nu: dim}, _denominators(nd))


def simple_rational(nd: NilpotentDatum, table: MultiplicityTable) -> RationalCharacter:
    out = RationalCharacter({}, _denominators(nd))
    for lam_i, c in table.entries:
        out = out + parabolic_verma_rational(nd, lam_i).scaled(c)
    return out


def resolve_orbit_size(nd: NilpotentDatum, orbit_size: int | None) -> int:
    if orbit_size is not None:
        if orbit_size <= 0:
            raise NonIntegralDivision(f"orbit size must be positive, got {orbit_size}")
        return orbit_size
    default = nd.orbit_size_default()
    if default is None:
        raise OrbitSizeRequired("|I_lambda| is only known by default for gl(m|n) and regular osp(2|2n); "
                                "pass it explicitly")
    return default


def wtilde_rational(nd: NilpotentDatum, table: MultiplicityTable, orbit_size: int | None) -> RationalCharacter:
    k = resolve_orbit_size(nd, orbit_size)
    return simple_rational(nd, table).divided(k)


def w_rational(nd: NilpotentDatum, wtilde: RationalCharacter) -> RationalCharacter:
    q = wtilde.simplified().divide_by_one_plus(nd.clifford_weights())
    if q.is_polynomial and any(v < 0 for v in q.numerator.values()):
        raise InexactDivision("quotient has negative coefficients")
    return q


# ---------------------------------------------------------------------------
# expanded forms
# ---------------------------------------------------------------------------

def direction_of(nd: NilpotentDatum, direction: Sequence[Fraction] | None) -> tuple:
    d = tuple(Fraction(x) for x in (direction if direction is not None else nd.theta))
    if len(d) != len(nd.torus_basis):
        raise DivergentDirection(f"direction needs {len(nd.torus_basis)} coordinates")
    check_direction(nd, d)
    return d


def char_soergel_parabolic_verma(nd: NilpotentDatum, mu: Sequence[Fraction], depth: int | None = None,
                                 direction: Sequence[Fraction] | None = None) -> FormalCharacter:
    d = direction_of(nd, direction)
    return parabolic_verma_rational(nd, mu).expand(d, default_depth() if depth is None else depth)


def char_soergel_simple(nd: NilpotentDatum, table: MultiplicityTable, depth: int | None = None,
                        direction: Sequence[Fraction] | None = None) -> FormalCharacter:
    d = direction_of(nd, direction)
    return simple_rational(nd, table).expand(d, default_depth() if depth is None else depth)


def char_simple_wtilde(nd: NilpotentDatum, table: MultiplicityTable, orbit_size: int | None = None,
                       depth: int | None = None, direction: Sequence[Fraction] | None = None) -> FormalCharacter:
    d = direction_of(nd, direction)
    depth = default_depth() if depth is None else depth
    k = resolve_orbit_size(nd, orbit_size)
    expanded = simple_rational(nd, table).expand(d, depth)
    bad = [c for c in expanded.terms.values() if c % k]
    if bad:
        raise NonIntegralDivision(f"coefficient {bad[0]} is not divisible by |I_lambda| = {k}")
    return wtilde_rational(nd, table, k).expand(d, depth)


def char_simple_w(nd: NilpotentDatum, wtilde: RationalCharacter, depth: int | None = None,
                  direction: Sequence[Fraction] | None = None) -> FormalCharacter:
    d = direction_of(nd, direction)
    return w_rational(nd, wtilde).expand(d, default_depth() if depth is None else depth)


@dataclass(frozen=True)
class PipelineResult:
    soergel: RationalCharacter
    wtilde: RationalCharacter
    w: RationalCharacter
    orbit_size: int
    direction: tuple
    depth: int

    def expanded(self) -> dict:
        return {name: getattr(self, name).expand(self.direction, self.depth) for name in ("soergel", "wtilde", "w")}


def run_pipeline(nd: NilpotentDatum, table: MultiplicityTable, orbit_size: int | None = None,
                 depth: int | None = None, direction: Sequence[Fraction] | None = None,
                 module_kind: str = "w") -> PipelineResult:
    """All stages at once.  ``module_kind="w0-reference"`` stops after the |I_lambda| division."""
    d = direction_of(nd, direction)
    depth = default_depth() if depth is None else depth
    k = resolve_orbit_size(nd, orbit_size)
    soergel = simple_rational(nd, table).simplified()
    char_simple_wtilde(nd, table, k, depth, d)  # divisibility inside the window
    wt = soergel.divided(k)
    w = wt if module_kind in ("w0-reference", "wtilde") else w_rational(nd, wt)
    return PipelineResult(soergel, wt, w, k, d, depth)

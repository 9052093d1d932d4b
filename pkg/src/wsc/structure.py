"""Graded-dimension checks of the PBW and factorization statements.

A generator in g(i) has Kazhdan degree i + 2.  Even generators are
polynomial, odd ones exterior.  Odd generators in g(i) with i <= -2 have
Kazhdan degree <= 0, so series are Laurent in general: they are bounded below
and the degree-0 coefficient is 1 only when every generator has positive
degree.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable

from . import linalg
from .nilpotent import NilpotentDatum, build_nilpotent, partitions, PartitionPair
from .superalgebra import EVEN, ODD, bracket, build_root_datum, realize

KINDS = ("wtilde", "w", "w0", "clifford", "wplus", "wminus")

ODD_DEGREE_ASSUMPTION = "odd generators of W-tilde over W_0 carry the Kazhdan degree of the matching g_1bar basis vector"


@dataclass(frozen=True)
class GradedSeries:
    """coefficients: degree -> count.  Exact for every degree <= ``truncation``
    (``None`` means the series is a polynomial and exact everywhere)."""

    coefficients: dict = field(default_factory=dict)
    truncation: int | None = None

    @property
    def kind(self) -> str:
        return "polynomial" if self.truncation is None else "truncated-series"

    @property
    def min_degree(self) -> int:
        return min(self.coefficients, default=0)

    def coefficient(self, d: int) -> int:
        return self.coefficients.get(d, 0)

    def vector(self, lo: int, hi: int) -> list[int]:
        return [self.coefficient(d) for d in range(lo, hi + 1)]

    def total(self) -> int:
        if self.truncation is not None:
            raise ValueError("total dimension of a truncated series is not defined")
        return sum(self.coefficients.values())

    def __mul__(self, other: "GradedSeries") -> "GradedSeries":
        bounds = []
        if self.truncation is not None:
            bounds.append(self.truncation + other.min_degree)
        if other.truncation is not None:
            bounds.append(other.truncation + self.min_degree)
        trunc = min(bounds) if bounds else None
        out: Counter = Counter()
        for a, x in self.coefficients.items():
            for b, y in other.coefficients.items():
                if trunc is None or a + b <= trunc:
                    out[a + b] += x * y
        return GradedSeries({d: c for d, c in sorted(out.items()) if c}, trunc)


def _exterior(degrees: Iterable[int]) -> GradedSeries:
    poly = Counter({0: 1})
    for d in degrees:
        nxt = Counter(poly)
        for a, c in poly.items():
            nxt[a + d] += c
        poly = nxt
    return GradedSeries({d: c for d, c in sorted(poly.items()) if c}, None)


def _symmetric(degrees: Iterable[int], truncation: int) -> GradedSeries:
    coeffs = [0] * (truncation + 1)
    coeffs[0] = 1
    degrees = list(degrees)
    if any(d <= 0 for d in degrees):
        raise ValueError("polynomial generators must have positive degree")
    for d in degrees:
        for k in range(d, truncation + 1):
            coeffs[k] += coeffs[k - d]
    return GradedSeries({k: c for k, c in enumerate(coeffs) if c}, truncation)


def generator_degrees(nd: NilpotentDatum, kind: str) -> tuple[list[int], list[int]]:
    """(polynomial, exterior) Kazhdan degrees of the PBW generators."""
    if kind not in KINDS:
        raise ValueError(f"unknown algebra kind {kind!r}")
    kz = lambda ds: sorted(d + 2 for d in ds)  # noqa: E731
    even_e = kz(nd.centralizer_degrees(EVEN))
    odd_all = [pc.degree for pc in nd.pieces.values() if pc.parity == ODD for _ in pc.indices]
    if kind == "wtilde":
        return even_e, kz(odd_all)
    if kind == "w":
        return even_e, kz(nd.centralizer_degrees(ODD))
    if kind == "w0":
        return even_e, []
    if kind == "clifford":
        return [], kz(nd.v_degrees(ODD))
    z = 1 if kind == "wplus" else -1
    return [], kz(pc.degree for pc in nd.pieces.values() if pc.parity == ODD and pc.zdeg == z for _ in pc.indices)


def hilbert_series(nd: NilpotentDatum, kind: str, truncation: int) -> GradedSeries:
    if truncation < 0:
        raise ValueError("truncation must be >= 0")
    poly, ext = generator_degrees(nd, kind)
    ext_series = _exterior(ext)
    if not poly:
        return ext_series
    # the exterior factor may reach below degree 0, so expand the polynomial part further
    slack = max(0, -ext_series.min_degree)
    out = _symmetric(poly, truncation + slack) * ext_series
    return GradedSeries({d: c for d, c in out.coefficients.items() if d <= truncation}, truncation)


def _compare(name: str, lhs: GradedSeries, rhs: GradedSeries, truncation: int) -> dict:
    lo = min(lhs.min_degree, rhs.min_degree)
    hi = truncation
    for s in (lhs, rhs):
        if s.truncation is not None:
            hi = min(hi, s.truncation)
    expected, actual = lhs.vector(lo, hi), rhs.vector(lo, hi)
    return {"identity": name, "pass": expected == actual, "degrees": [lo, hi],
            "expected": expected, "actual": actual}


def _slack(nd: NilpotentDatum) -> int:
    _, ext = generator_degrees(nd, "wtilde")
    return sum(-d for d in ext if d < 0)


def check_clifford_factorization(nd: NilpotentDatum, truncation: int) -> dict:
    """H(W-tilde) = H(Lambda V_1bar) * H(W)."""
    t2 = truncation + _slack(nd)
    lhs = hilbert_series(nd, "wtilde", truncation)
    rhs = hilbert_series(nd, "clifford", t2) * hilbert_series(nd, "w", t2)
    return _compare("wtilde = clifford * w", lhs, rhs, truncation)


def check_triangular_factorization(nd: NilpotentDatum, truncation: int) -> dict:
    """H(W-tilde) = H(W+) * H(W_0) * H(W-), with g_{+1} + g_{-1} = g_1bar."""
    t2 = truncation + _slack(nd)
    lhs = hilbert_series(nd, "wtilde", truncation)
    rhs = hilbert_series(nd, "wplus", t2) * hilbert_series(nd, "w0", t2) * hilbert_series(nd, "wminus", t2)
    rep = _compare("wtilde = wplus * w0 * wminus", lhs, rhs, truncation)
    _, plus = generator_degrees(nd, "wplus")
    _, minus = generator_degrees(nd, "wminus")
    _, odd = generator_degrees(nd, "wtilde")
    rep["odd_split"] = sorted(plus + minus) == sorted(odd)
    rep["pass"] = rep["pass"] and rep["odd_split"]
    return rep


def module_dimension_factor(nd: NilpotentDatum) -> int:
    return nd.module_dimension_factor()


def check_dimension_bookkeeping(nd: NilpotentDatum) -> dict:
    """2^{dim g_1bar} = factor^2 * 2^{dim g_1bar^e}, read off the exterior parts at t = 1."""
    _, ext_all = generator_degrees(nd, "wtilde")
    _, ext_e = generator_degrees(nd, "w")
    lhs = _exterior(ext_all).total()
    rhs = module_dimension_factor(nd) ** 2 * _exterior(ext_e).total()
    return {"identity": "2^dim g1 = factor^2 * 2^dim g1^e", "pass": lhs == rhs, "expected": lhs, "actual": rhs}


# ---------------------------------------------------------------------------
# per-datum structural checks
# ---------------------------------------------------------------------------

def check_sl2(nd: NilpotentDatum) -> bool:
    e, h, f = nd.e, nd.h, nd.f
    return bracket(h, e) == e * 2 and bracket(h, f) == f * -2 and bracket(e, f) == h


def check_goodness(nd: NilpotentDatum) -> bool:
    return all(d >= 0 for par in (EVEN, ODD) for d in nd.centralizer_degrees(par))


def check_multiset_identity(nd: NilpotentDatum) -> bool:
    """ad h eigenvalues on g_p = those on g_p^e plus those on [f, g]_p, for both parities."""
    for par in (EVEN, ODD):
        whole = Counter(pc.degree for pc in nd.pieces.values() if pc.parity == par for _ in pc.indices)
        split = Counter(nd.centralizer_degrees(par)) + Counter(nd.v_degrees(par))
        if whole != split:
            return False
    return True


def check_direct_sum(nd: NilpotentDatum) -> bool:
    """g = [f, g] + g^e with trivial intersection, piece by piece."""
    for key, pc in nd.pieces.items():
        rows = list(nd._kernels[key]) + list(nd._images[key])
        if len(rows) != len(pc.indices) or linalg.rank(rows, len(pc.indices)) != len(pc.indices):
            return False
    return True


def check_sl2_symmetry(nd: NilpotentDatum) -> bool:
    dims = nd.grading_dims()
    return all(dims.get((-d, p), 0) == c for (d, p), c in dims.items())


def check_omega(nd: NilpotentDatum) -> dict:
    V = nd.symplectic_space()
    vecs = V[EVEN] + V[ODD]
    gram = nd.omega_gram(vecs)
    full = linalg.rank(gram, len(vecs)) == len(vecs) if vecs else True
    u, ud = nd.lagrangian_odd()
    iso = all(nd.omega(a, b) == 0 for a in u for b in u) and all(nd.omega(a, b) == 0 for a in ud for b in ud)
    pair = [[nd.omega(a, b) for b in ud] for a in u]
    paired = len(u) == len(ud) and (not u or linalg.rank(pair, len(ud)) == len(u))
    half = 2 * len(u) == len(V[ODD])
    return {"nondegenerate": full, "isotropic": iso, "paired": paired, "half": half}


def verify_datum(nd: NilpotentDatum, truncation: int = 16) -> dict:
    om = check_omega(nd)
    checks = {
        "sl2": check_sl2(nd),
        "goodness": check_goodness(nd),
        "sl2_symmetry": check_sl2_symmetry(nd),
        "multiset": check_multiset_identity(nd),
        "direct_sum": check_direct_sum(nd),
        "omega_nondegenerate": om["nondegenerate"],
        "lagrangian": om["isotropic"] and om["paired"] and om["half"],
    }
    reports = [check_clifford_factorization(nd, truncation), check_triangular_factorization(nd, truncation),
               check_dimension_bookkeeping(nd)]
    ok = all(checks.values()) and all(r["pass"] for r in reports)
    return {"checks": checks, "identities": reports, "pass": ok}


def battery_cases(max_total: int = 5, min_side: int = 1):
    """(m, n, PartitionPair) for gl(m|n), m + n <= max_total."""
    for total in range(2, max_total + 1):
        for m in range(min_side, total - min_side + 1):
            n = total - m
            for pm in partitions(m):
                for pn in partitions(n):
                    yield m, n, PartitionPair(pm, pn)


def run_battery(max_total: int = 5, truncation: int = 16) -> list[dict]:
    out = []
    algs: dict = {}
    for m, n, pp in battery_cases(max_total):
        key = (m, n)
        if key not in algs:
            d = build_root_datum("GL", m, n)
            algs[key] = (d, realize(d))
        d, alg = algs[key]
        nd = build_nilpotent(d, pp, alg=alg)
        rec = {"algebra": d.name, "nilpotent": pp.label(), "dim_g_minus1_odd": nd.grading_dims().get((-1, ODD), 0)}
        if rec["dim_g_minus1_odd"] % 2:
            rec.update(skipped="odd dim g(-1)_1bar", pass_=True)
        else:
            rec.update(verify_datum(nd, truncation))
        out.append(rec)
    return out

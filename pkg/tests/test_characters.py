from collections import Counter
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from wsc.characters import (MINUS, PLUS, FormalCharacter, RationalCharacter, TruncationSpec, char_add,
                            char_geom_inverse, char_mul, char_scale, char_shift, divide_binomial,
                            divide_one_plus, multiply_one_plus)
from wsc.errors import DivergentDirection, InexactDivision, NonIntegralDivision

F = Fraction
D = (F(1), F(0))
MU = (F(-1), F(1))


def spec(depth=8, ref=(0, 0), direction=D):
    return TruncationSpec(tuple(F(x) for x in direction), depth, tuple(F(x) for x in ref))


def mono(*w, c=1):
    return tuple(F(x) for x in w), c


def times_binomial(terms, mu, sign):
    out = Counter(terms)
    for k, v in terms.items():
        out[tuple(a + b for a, b in zip(k, mu))] += sign * v
    return {k: v for k, v in out.items() if v}


def test_geometric_inverse_cancels():
    s = spec()
    one = FormalCharacter.one(2, s)
    for sign in (MINUS, PLUS):
        inv = char_geom_inverse(one, MU, sign)
        back = char_mul(inv, FormalCharacter(times_binomial({(F(0), F(0)): 1}, MU, sign), s))
        assert back.terms == {(0, 0): 1}


def test_geometric_series_coefficients():
    s = spec(depth=3)
    one = FormalCharacter.one(2, s)
    minus = char_geom_inverse(one, MU, MINUS)
    plus = char_geom_inverse(one, MU, PLUS)
    assert minus.terms == {(-k, k): 1 for k in range(4)}
    assert plus.terms == {(-k, k): (-1) ** k for k in range(4)}


def test_geometric_inverse_needs_decreasing_weight():
    one = FormalCharacter.one(2, spec())
    with pytest.raises(DivergentDirection):
        char_geom_inverse(one, (F(1), F(0)), MINUS)
    with pytest.raises(DivergentDirection):
        char_geom_inverse(one, (F(0), F(1)), MINUS)
    with pytest.raises(DivergentDirection):
        char_geom_inverse(FormalCharacter.one(2), MU, MINUS)


def test_shift_add_scale():
    a = FormalCharacter(dict([mono(1, 2, c=3), mono(0, 0, c=1)]))
    assert char_shift(a, (0, 0)) == a
    assert char_shift(a, (1, -1)).terms == {(2, 1): 3, (1, -1): 1}
    assert char_add(a, char_scale(a, -1)).terms == {}
    assert a.evaluate_at_one() == 4
    with pytest.raises(ValueError):
        FormalCharacter.one(2, spec()).evaluate_at_one()


def test_window_drops_terms():
    s = spec(depth=2, ref=(0, 0))
    a = FormalCharacter(dict([mono(0, 5), mono(-2, 0), mono(-3, 1)]), None).restricted(s)
    assert set(a.terms) == {(0, 5), (-2, 0)}


def test_sorted_terms_follow_direction():
    a = FormalCharacter(dict([mono(-1, 1), mono(2, -2), mono(0, 0)]))
    assert [w for w, _ in a.sorted_terms(D)] == [(2, -2), (0, 0), (-1, 1)]


laurent = st.dictionaries(st.tuples(st.integers(-3, 3), st.integers(-3, 3)), st.integers(-4, 4),
                          max_size=6).map(lambda d: {(F(a), F(b)): c for (a, b), c in d.items() if c})
weights = st.tuples(st.integers(-2, 2), st.integers(-2, 2)).filter(any).map(lambda t: (F(t[0]), F(t[1])))


@settings(max_examples=80, deadline=None)
@given(laurent, weights, st.sampled_from([MINUS, PLUS]))
def test_binomial_division_inverts_multiplication(p, mu, sign):
    assert divide_binomial(times_binomial(p, mu, sign), mu, sign) == p


@settings(max_examples=80, deadline=None)
@given(laurent, weights)
def test_multiply_then_divide_one_plus(p, mu):
    assert divide_one_plus(multiply_one_plus(p, mu), mu) == p


def test_inexact_division_is_reported():
    p = {(F(0), F(0)): 1, (F(-2), F(2)): 1}
    assert divide_one_plus(p, MU) is None
    assert divide_binomial({(F(0), F(0)): 1}, (F(0), F(0)), PLUS) is None
    assert divide_binomial({(F(0), F(0)): 2}, (F(0), F(0)), PLUS) == {(0, 0): 1}
    with pytest.raises(InexactDivision):
        RationalCharacter(p).divide_by_one_plus([MU])


def test_rational_character_simplifies():
    num = times_binomial({(F(3), F(0)): 2, (F(1), F(1)): 1}, MU, MINUS)
    rc = RationalCharacter(num, ((MU, MINUS),)).simplified()
    assert rc.is_polynomial and rc.numerator == {(3, 0): 2, (1, 1): 1}
    assert rc.evaluate_at_one() == 3
    stuck = RationalCharacter({(F(0), F(0)): 1}, ((MU, MINUS),)).simplified()
    assert stuck.factors == ((MU, MINUS),)


def test_rational_arithmetic_errors():
    a = RationalCharacter({(F(0), F(0)): 3}, ((MU, MINUS),))
    with pytest.raises(ValueError):
        a + RationalCharacter({(F(0), F(0)): 1})
    with pytest.raises(NonIntegralDivision):
        a.divided(2)
    with pytest.raises(NonIntegralDivision):
        a.divided(0)
    assert a.divided(3).numerator == {(0, 0): 1}
    with pytest.raises(ValueError):
        a.evaluate_at_one()


def test_expand_flips_positive_one_plus_factors():
    # (1 + e^-mu)^-1 = e^mu (1 + e^mu)^-1 when <mu, d> < 0
    a = RationalCharacter({(F(0), F(0)): 1}, ((tuple(-x for x in MU), PLUS),)).expand(D, 5)
    b = RationalCharacter({MU: 1}, ((MU, PLUS),)).expand(D, 5)
    assert a.terms == b.terms


def test_expand_direction_errors():
    rc = RationalCharacter({(F(0), F(0)): 1}, (((F(0), F(1)), MINUS),))
    with pytest.raises(DivergentDirection):
        rc.expand(D, 4)
    rc = RationalCharacter({(F(0), F(0)): 1}, (((F(1), F(0)), MINUS),))
    with pytest.raises(DivergentDirection):
        rc.expand(D, 4)


@settings(max_examples=40, deadline=None)
@given(laurent.filter(bool), st.lists(st.sampled_from([MU, (F(-1), F(0)), (F(-2), F(1))]), min_size=1,
                                     max_size=3), st.integers(0, 8))
def test_expansion_is_stable_in_depth(p, mus, depth):
    rc = RationalCharacter(p, tuple((mu, MINUS) for mu in mus))
    small, big = rc.expand(D, depth), rc.expand(D, depth + 10)
    floor = small.truncation.floor
    assert {k: v for k, v in big.terms.items() if k[0] >= floor} == small.terms

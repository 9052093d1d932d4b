import json
from collections import Counter
from fractions import Fraction
from math import prod

import pytest
from hypothesis import assume, given, settings, strategies as st

from _oracles import gl_weights
from wsc import parse_algebra
from wsc.category_o import (MultiplicityTable, atypical_roots, even_multiplicity_table, even_verma_expansion,
                            kac_character_verma_expansion, kac_multiplicity_table, load_multiplicity_table,
                            parabolic_to_verma, parse_multiplicity_table, to_parabolic_verma_basis, typicality)
from wsc.errors import AtypicalWeight, NotDominant, ParseError, SingularWeight
from wsc.superalgebra import wadd
from wsc.weyl import WeylGroup, dot_action, full_levi, parse_levi, torus_levi, weyl_dimension

F = Fraction
GL21 = parse_algebra("gl(2|1)")


def w(*xs):
    return tuple(F(x) for x in xs)


def test_gl11_typicality():
    d = parse_algebra("gl(1|1)")
    for a in range(-3, 4):
        for b in range(-3, 4):
            assert typicality(d, w(a, b)) == (a + b != 0)


def test_gl21_typicality_example():
    assert typicality(GL21, w(5, 1, -3))
    # lambda + rho = (5, 0 | -5) is orthogonal to eps1 - delta
    assert not typicality(GL21, w(5, 1, -6))
    assert atypical_roots(GL21, w(5, 1, -6)) == [w(1, 0, -1)]


def test_gl11_kac_expansion_has_two_terms():
    d = parse_algebra("gl(1|1)")
    assert kac_character_verma_expansion(d, w(2, 1)) == {w(2, 1): 1, w(1, 2): 1}


def test_gl21_distinguished_expansion():
    lam = w(5, 1, -3)
    even = even_verma_expansion(GL21, lam)
    assert even == {w(5, 1, -3): 1, w(0, 6, -3): -1}
    vc = kac_character_verma_expansion(GL21, lam)
    assert len(vc) == 8 and sum(abs(c) for c in vc.values()) == 8
    table = kac_multiplicity_table(GL21, lam, full_levi(GL21))
    assert table.as_dict() == {w(5, 1, -3): 1, w(4, 1, -2): 1, w(5, 0, -2): 1, w(4, 0, -1): 1}
    assert table.source == "computed-typical"


def _wcf(datum, lam):
    g = WeylGroup(full_levi(datum))
    out = Counter()
    for i, x in enumerate(g.elements):
        out[dot_action(x, lam, datum.rho0)] += (-1) ** int(g.length[i])
    return {k: v for k, v in out.items() if v}


def _gl_dim(lam, m):
    # product of Freudenthal totals over the two gl blocks
    return prod(sum(gl_weights(part).values()) for part in (lam[:m], lam[m:]) if part)


def dominant_gl(m, n, lo=-4, hi=4):
    def build(xs):
        a = sorted(xs[:m], reverse=True)
        b = sorted(xs[m:], reverse=True)
        return tuple(F(x) for x in a + b)
    return st.lists(st.integers(lo, hi), min_size=m + n, max_size=m + n).map(build)


@settings(max_examples=30, deadline=None)
@given(st.sampled_from([(2, 1), (1, 2), (2, 2)]).flatmap(lambda mn: st.tuples(st.just(mn), dominant_gl(*mn))))
def test_kac_module_properties(case):
    (m, n), lam = case
    d = parse_algebra(f"gl({m}|{n})")
    assume(typicality(d, lam))
    # for dominant lam the KL expansion is the Weyl character formula
    even = even_verma_expansion(d, lam)
    assert even == _wcf(d, lam)
    vc = kac_character_verma_expansion(d, lam)
    table = kac_multiplicity_table(d, lam, full_levi(d))
    assert parabolic_to_verma(table, d.rho0) == vc
    total = sum(c * _gl_dim(mu, m) for mu, c in table.entries)
    assert total == 2 ** (m * n) * _gl_dim(lam, m)


def test_osp_kac_dimension():
    d = parse_algebra("osp(2|4)")
    lam = w(8, 3, 1)
    table = kac_multiplicity_table(d, lam, full_levi(d))
    levi = full_levi(d)
    assert sum(c * weyl_dimension(levi, mu) for mu, c in table.entries) == 16 * weyl_dimension(levi, lam)
    assert parabolic_to_verma(table, d.rho0) == kac_character_verma_expansion(d, lam)
    with pytest.raises(AtypicalWeight):
        kac_character_verma_expansion(d, w(7, 3, 1))


def test_proper_levi_non_dominant_weight():
    d = parse_algebra("gl(2|2)")
    levi = parse_levi("1+1|2", d)
    lam = w(1, 4, 2, 0)
    table = kac_multiplicity_table(d, lam, levi)
    assert parabolic_to_verma(table, d.rho0) == kac_character_verma_expansion(d, lam)
    with pytest.raises(NotDominant):
        kac_multiplicity_table(d, w(1, 4, 2, 0), full_levi(d))


def test_torus_levi_regrouping_is_identity():
    lam = w(5, 1, -3)
    vc = kac_character_verma_expansion(GL21, lam)
    assert to_parabolic_verma_basis(vc, torus_levi(GL21), GL21.rho0).as_dict() == vc


def test_singular_weights_drop_out():
    vc = {w(1, 2, 0): 1}  # (1,2) + rho0 = (3/2, 3/2)
    assert to_parabolic_verma_basis(vc, full_levi(GL21), GL21.rho0).entries == ()
    with pytest.raises(SingularWeight):
        even_verma_expansion(GL21, w(1, 2, 0))
    with pytest.raises(NotDominant):
        even_verma_expansion(GL21, w(F(1, 2), 0, 0))


def test_non_parabolic_input_is_rejected():
    # a single Verma is not a combination of parabolic Vermas for gl2
    with pytest.raises(ValueError):
        to_parabolic_verma_basis({w(5, 1, -3): 1}, full_levi(GL21), GL21.rho0)


def test_even_table():
    t = even_multiplicity_table(GL21, w(5, 1, -3), full_levi(GL21))
    assert t.as_dict() == {w(5, 1, -3): 1} and t.source == "computed-even"


def test_kac_independent_of_anything_but_lambda():
    a = kac_character_verma_expansion(GL21, w(3, 0, 1))
    assert a == kac_character_verma_expansion(parse_algebra("gl(2|1)"), w(3, 0, 1))


# -- user tables -------------------------------------------------------------------

def test_load_table(tmp_path):
    levi = full_levi(GL21)
    good = {"lambda": "5,1|-5", "entries": [{"weight": "5,1|-5", "coeff": 1}, {"weight": "4,1|-4", "coeff": 1}]}
    p = tmp_path / "t.json"
    p.write_text(json.dumps(good))
    t = load_multiplicity_table(p, GL21, levi)
    assert isinstance(t, MultiplicityTable) and t.source == "user-supplied" and len(t.entries) == 2
    assert t.to_json(2)["entries"][0] == {"weight": "4,1|-4", "coeff": 1}

    bad = {"entries": [{"weight": "0,1|0", "coeff": 1}]}
    with pytest.raises(NotDominant):
        parse_multiplicity_table(bad, GL21, levi)
    with pytest.raises(ParseError):
        parse_multiplicity_table({"entries": []}, GL21, levi)
    with pytest.raises(ParseError):
        parse_multiplicity_table({"entries": [{"weight": "1,0|0", "coeff": 1.5}]}, GL21, levi)
    with pytest.raises(ParseError):
        parse_multiplicity_table([], GL21, levi)
    (tmp_path / "broken.json").write_text("{")
    with pytest.raises(ParseError):
        load_multiplicity_table(tmp_path / "broken.json", GL21, levi)
    with pytest.raises(ParseError):
        load_multiplicity_table(tmp_path / "missing.json", GL21, levi)


def test_rho_shifted_pairing_for_typicality():
    # <lambda + rho, beta> with rho = rho0 - rho1
    lam = w(5, 1, -3)
    shifted = wadd(lam, GL21.rho)
    assert GL21.rho == w(0, -1, 1)
    assert [GL21.form(shifted, b) for b in GL21.odd_positive_roots] == [3, -2]

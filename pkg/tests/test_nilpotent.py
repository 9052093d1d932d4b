from fractions import Fraction

import pytest
import sympy

from _oracles import gl_ad_rank, gl_unit
from wsc import build_nilpotent, parse_algebra, parse_partition_pair
from wsc.errors import (InvalidLevi, InvalidPartition, NilpotentNotInLevi, NotCentral, OddDimensionalOddPart,
                        ParseError)
from wsc.nilpotent import check_odd_dimension, parse_theta, partitions
from wsc.structure import battery_cases
from wsc.superalgebra import EVEN, ODD, SuperMatrix, bracket, realize, restrict_to_torus
from wsc.weyl import parse_levi, torus_levi

F = Fraction


def nil(alg, pp, levi=None, theta=None, swap=False):
    d = parse_algebra(alg)
    return build_nilpotent(d, parse_partition_pair(pp), levi=parse_levi(levi, d) if levi else None,
                           theta=theta, swap_lagrangian=swap)


def E(size, p, i, j, c=1):
    return SuperMatrix.unit(size, p, i - 1, j - 1, c)


# -- sl2 triples ---------------------------------------------------------------

def test_gl21_principal_triple():
    nd = nil("gl(2|1)", "2|1")
    assert nd.e == E(3, 2, 1, 2)
    assert nd.h == SuperMatrix.diagonal(2, [1, -1, 0])
    assert nd.f == E(3, 2, 2, 1)


def test_zero_orbit():
    nd = nil("gl(2|1)", "1,1|1")
    assert nd.e.is_zero() and nd.h.is_zero() and nd.f.is_zero()
    assert set(d for d, _ in nd.grading_dims()) == {0}
    V = nd.symplectic_space()
    assert V[EVEN] == [] and V[ODD] == []
    assert nd.lagrangian_odd() == ([], [])
    assert nd.clifford_weights() == []
    assert nd.module_dimension_factor() == 1


def test_gl31_triple():
    nd = nil("gl(3|1)", "2,1|1")
    assert nd.e == E(4, 3, 1, 2)
    assert nd.h == SuperMatrix.diagonal(3, [1, -1, 0, 0])


def test_bad_partitions():
    with pytest.raises(InvalidPartition):
        nil("gl(2|1)", "3|1")
    with pytest.raises(InvalidPartition):
        nil("osp(2|4)", "2|4")
    with pytest.raises(InvalidPartition):
        nil("osp(2|4)", "1,1|3,1")
    with pytest.raises(ParseError):
        parse_partition_pair("2;1")


def test_partitions_generator():
    assert list(partitions(4)) == [(4,), (3, 1), (2, 2), (2, 1, 1), (1, 1, 1, 1)]


# -- grading and centralizer ---------------------------------------------------

def test_gl21_grading():
    nd = nil("gl(2|1)", "2|1")
    assert nd.grading_dims() == {(-2, EVEN): 1, (-1, ODD): 2, (0, EVEN): 3, (1, ODD): 2, (2, EVEN): 1}
    assert len(nd.centralizer_degrees(EVEN)) == 3
    assert len(nd.centralizer_degrees(ODD)) == 2
    V = nd.symplectic_space()
    assert (len(V[EVEN]), len(V[ODD])) == (2, 2)


def test_gl31_odd_part_is_even_dimensional():
    # g(-1)_1bar = span{E24, E41}; the guard does not fire for this datum
    nd = nil("gl(3|1)", "2,1|1")
    assert nd.grading_dims()[(-1, ODD)] == 2
    nd.check_odd_part()


def _jordan_sympy(m, n, pp):
    e = sympy.zeros(m + n, m + n)
    pos = 0
    for part in list(pp.part_m) + list(pp.part_n):
        for i in range(part - 1):
            e[pos + i, pos + i + 1] = 1
        pos += part
    return e


@pytest.mark.parametrize("m,n,pp", list(battery_cases(4)))
def test_centralizer_dimension_against_matrix_rank(m, n, pp):
    nd = build_nilpotent(parse_algebra(f"gl({m}|{n})"), pp)
    dim_ge = len(nd.centralizer_degrees(EVEN)) + len(nd.centralizer_degrees(ODD))
    assert dim_ge == (m + n) ** 2 - gl_ad_rank(_jordan_sympy(m, n, pp), m, n)
    # every g^e element really commutes with e, in nonnegative degree
    for x in nd.centralizer():
        assert bracket(nd.e, x).is_zero()
    assert min(nd.centralizer_degrees(EVEN) + nd.centralizer_degrees(ODD) + [0]) >= 0


def test_gl_unit_oracle_sanity():
    assert gl_ad_rank(gl_unit(3, 0, 1), 2, 1) == 9 - 5


# -- Lagrangian and Clifford weights -------------------------------------------

def test_gl21_lagrangian():
    nd = nil("gl(2|1)", "2|1")
    u, ud = nd.lagrangian_odd()
    assert len(u) == len(ud) == 1 == nd.dim_u1
    assert u[0].entries.keys() == {(1, 2)}
    assert ud[0].entries.keys() == {(2, 0)}
    assert nd.clifford_weights() == [(-1, 1)]
    assert nd.torus_coords == ((1, 1, 0), (0, 0, 1))
    assert nd.module_dimension_factor() == 2


def test_swap_lagrangian_flips_the_clifford_weights():
    a = nil("gl(2|1)", "2|1")
    b = nil("gl(2|1)", "2|1", swap=True)
    assert b.clifford_weights() == [tuple(-x for x in w) for w in a.clifford_weights()]


@pytest.mark.parametrize("alg,pp", [("gl(2|2)", "2|1,1"), ("gl(2|2)", "2|2"), ("gl(3|2)", "3|2"),
                                    ("osp(2|2)", "1,1|2"), ("osp(2|4)", "1,1|4"), ("osp(2|4)", "1,1|2,2")])
def test_lagrangian_is_half_of_v_odd(alg, pp):
    nd = nil(alg, pp)
    V = nd.symplectic_space()
    u, ud = nd.lagrangian_odd()
    assert 2 * len(u) == 2 * len(ud) == len(V[ODD])
    # u1 is isotropic and pairs perfectly with u1*
    assert all(nd.omega(a, b) == 0 for a in u for b in u)
    gram = sympy.Matrix([[nd.omega(a, b) for b in ud] for a in u])
    assert gram.rank() == len(u)


def test_gl22_principal_even_clifford_count():
    nd = nil("gl(2|2)", "2|2")
    assert len(nd.clifford_weights()) == len(nd.symplectic_space()[ODD]) // 2


# -- Levi, torus and denominator weights ---------------------------------------

def test_distinguished_case_has_no_denominators():
    nd = nil("gl(2|1)", "2|1")
    assert nd.theta == (0, 0)
    assert nd.denominator_weights() == []


def test_torus_levi_zero_orbit_denominators():
    d = parse_algebra("gl(2|2)")
    nd = build_nilpotent(d, parse_partition_pair("1,1|1,1"), levi=torus_levi(d))
    alg = nd.alg
    got = sorted(nd.denominator_weights())
    expected = sorted(restrict_to_torus(alg, r, nd.torus_basis) for r in d.even_positive_roots)
    expected = sorted(tuple(-x for x in w) for w in expected)
    assert got == expected
    assert all(nd.theta_pairing(w) < 0 for w in got)


def test_gl31_proper_levi_denominators():
    nd = nil("gl(3|1)", "2,1|1", levi="2+1|1")
    assert nd.theta == (2, 1, 0)
    ws = nd.denominator_weights()
    assert ws and all(nd.theta_pairing(w) < 0 for w in ws)
    # g_{<0} cap g_0bar = span{E31, E32}; [E12, E31] = -E32, [E12, E32] = 0
    assert ws == [(-1, 1, 0)]


def test_nilpotent_outside_levi():
    with pytest.raises(NilpotentNotInLevi):
        nil("gl(2|1)", "2|1", levi="1+1|1")


def test_bad_theta():
    with pytest.raises(InvalidLevi):
        nil("gl(3|1)", "2,1|1", levi="2+1|1", theta=(F(1), F(2), F(0)))
    with pytest.raises(InvalidLevi):
        nil("gl(3|1)", "2,1|1", levi="2+1|1", theta=(F(1, 2), F(0), F(0)))
    with pytest.raises(ParseError):
        parse_theta("a,b")
    assert parse_theta("1/2,-3") == (F(1, 2), F(-3))


def test_not_central_torus():
    alg = realize(parse_algebra("gl(2|1)"))
    with pytest.raises(NotCentral):
        restrict_to_torus(alg, (0, 0, 0), [E(3, 2, 1, 2)])
    with pytest.raises(NotCentral):
        restrict_to_torus(alg, (0, 0, 0), [SuperMatrix.diagonal(2, [1, 0, 0])], [E(3, 2, 1, 2)])


def test_odd_dimension_guard():
    check_odd_dimension(2)
    with pytest.raises(OddDimensionalOddPart) as exc:
        check_odd_dimension(1)
    assert exc.value.exit_code == 8


def test_orbit_size_defaults():
    assert nil("gl(2|1)", "2|1").orbit_size_default() == 1
    assert nil("osp(2|4)", "1,1|4").orbit_size_default() == 1
    assert nil("osp(2|4)", "1,1|2,2").orbit_size_default() is None

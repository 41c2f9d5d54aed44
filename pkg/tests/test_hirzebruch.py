import itertools
from fractions import Fraction
from math import factorial

import pytest

from toricgf import (
    Cone,
    Fan,
    GroupRingElement,
    RationalGenFun,
    SPolynomial,
    chi_y,
    closed_sum,
    dual_cone,
    face_lattice,
    genfun_equal,
    laurent_expand,
    local_class,
    open_orbit_class,
    todd_specialize,
)
from toricgf import series as ps
from toricgf.errors import FanNotFaceClosed, NotFullDimensional, ZeroDenominatorVector
from toricgf.hirzebruch import format_y_polynomial, laurent_expand_class

from .conftest import SEGRE

P1 = Fan.from_maximal(1, [(1,), (-1,)], [[0], [1]])
P1xP1 = Fan.from_maximal(2, [(1, 0), (0, 1), (-1, 0), (0, -1)], [[0, 1], [1, 2], [2, 3], [3, 0]])
P2 = Fan.from_maximal(2, [(1, 0), (0, 1), (-1, -1)], [[0, 1], [1, 2], [2, 0]])


def orthant(d):
    return Cone([tuple(int(i == j) for j in range(d)) for i in range(d)])


def test_rank_one_local_class():
    h = local_class(Cone([(1,)]))
    assert len(h.terms) == 2
    top = h.terms[frozenset({0})]
    assert top[0] == 0 and top[1].certificate.terms == {(): 1}
    codim, s = h.terms[frozenset()]
    assert codim == 1 and s.certificate.terms == {(0,): 1, (1,): 1}
    assert genfun_equal(todd_specialize(h), RationalGenFun.geometric((1,)))


@pytest.mark.parametrize("d", [2, 3])
def test_orthant_product_structure(d):
    h = local_class(orthant(d))
    rays, by_power = h.collapsed()
    variables = semigroup_vars = rays
    one = SPolynomial.constant(semigroup_vars)
    for c in range(d + 1):
        expected = SPolynomial(variables, {})
        for subset in itertools.combinations(range(d), c):
            term = one
            for i in range(d):
                e = [0] * d
                e[i] = 1
                s_i = SPolynomial(variables, {tuple(e): 1})
                term = term * ((one + s_i) if i in subset else s_i)
            expected = expected + term
        assert by_power[c] == expected


def test_segre_local_class(segre):
    h = local_class(segre)
    assert len(h.terms) == 10
    assert all(codim == 3 - segre._dim_of(f) for f, (codim, _) in h.terms.items())
    assert genfun_equal(todd_specialize(h), closed_sum(dual_cone(segre)).value)
    # dual faces used are exactly the faces of the dual cone
    dual = dual_cone(segre)
    used = sorted(tuple(sorted(dual.ray_set(s.cone))) for _, s in h.terms.values())
    assert used == sorted(tuple(sorted(f)) for f in face_lattice(dual).index_sets)


def test_open_orbit():
    power, s = open_orbit_class(orthant(2))
    assert power == 2
    assert s.certificate.terms == {(0, 0): 1, (1, 0): 1, (0, 1): 1, (1, 1): 1}
    power, s = open_orbit_class(Cone(SEGRE))
    assert power == 3 and s.certificate.is_nonnegative() and s.verify()
    sigma = dual_cone(Cone([(1, 0), (1, 2)]))
    power, s = open_orbit_class(sigma)
    assert set(s.ray_denominator) == {(1, 0), (1, 2)}
    assert s.certificate.is_nonnegative() and s.verify()
    with pytest.raises(NotFullDimensional):
        open_orbit_class(Cone([(1, 0, 0)]))


def test_chi_y_values():
    assert chi_y(P1).text() == "1 - y"
    assert chi_y(P1xP1).text() == "1 - 2*y + y^2"
    assert chi_y(P2).text() == "1 - y + y^2"
    for fan in (P1, P1xP1, P2):
        p = chi_y(fan)
        assert p(0) == 1
        assert p(-1) == len(fan.maximal_cones)
        assert p.degree <= fan.rank


def test_chi_y_needs_face_closed():
    with pytest.raises(FanNotFaceClosed):
        chi_y(Fan(2, [(1, 0), (0, 1)], [[0, 1]]))


def test_format_y_polynomial():
    assert format_y_polynomial([0]) == "0"
    assert format_y_polynomial([-1, 0, 3]) == "-1 + 3*y^2"


def long_division(num, den, n):
    """Power series num/den to n+1 terms, den[0] != 0."""
    q = []
    r = list(num) + [Fraction(0)] * (n + 1)
    for k in range(n + 1):
        c = r[k] / den[0]
        q.append(c)
        for j, d in enumerate(den):
            if k + j < len(r):
                r[k + j] -= c * d
    return q


def test_laurent_single_pole():
    g = RationalGenFun.geometric((1,))
    e = laurent_expand(g, 4)
    unit = [Fraction(1, factorial(j + 1)) for j in range(8)]
    q = long_division([Fraction(-1)], unit, 6)
    terms = e.laurent_terms()
    for p in range(-1, 5):
        assert terms.get(p, 0) == q[p + 1]
    assert terms[-1] == -1 and terms[0] == Fraction(1, 2) and terms[1] == Fraction(-1, 12)
    assert terms.get(2, 0) == 0
    e2 = laurent_expand(g, 2)
    assert [e2.laurent_terms().get(p, 0) for p in (-1, 0, 1, 2)] == [-1, Fraction(1, 2), Fraction(-1, 12), 0]


def test_laurent_no_denominator():
    g = RationalGenFun(GroupRingElement.monomial((1,)), [])
    e = laurent_expand(g, 3)
    assert [e.laurent_terms()[p] for p in range(4)] == [1, 1, Fraction(1, 2), Fraction(1, 6)]


def test_laurent_product_factors():
    g = RationalGenFun.geometric((1, 0)) * RationalGenFun.geometric((0, 1))
    e = laurent_expand(g, 3)
    assert set(e.pole_factors) == {(1, 0), (0, 1)}
    one = laurent_expand(RationalGenFun.geometric((1,)), 3)
    uni = {k[0]: v for k, v in one.series.items()}
    for (a, b), c in e.series.items():
        if a + b <= 3:
            assert c == uni.get(a, 0) * uni.get(b, 0)


def test_laurent_reconstructs_source():
    # series * prod(1 - e^m) == numerator * prod(m) up to the truncation order
    g = RationalGenFun(GroupRingElement.monomial((1, 1)) + GroupRingElement.one(2), [(1, 0), (1, 2)])
    e = laurent_expand(g, 3)
    top = e.truncation_order
    lhs = _series(e.series, top)
    for m in e.pole_factors:
        lhs = ps.mul(lhs, ps.add(ps.constant(1, 2, top), ps.scale(-1, ps.exp_linear(m, top))))
    rhs = ps.add(ps.exp_linear((1, 1), top), ps.constant(1, 2, top))
    for m in e.pole_factors:
        rhs = ps.mul(rhs, ps.linear_form(m, top))
    assert ps.as_dict(lhs) == ps.as_dict(rhs)


def test_laurent_linearity():
    # over the common poles (x1)(x1 + 2 x2): series(a + b) = series(a) * m_b + series(b) * m_a
    a = RationalGenFun.geometric((1, 0))
    b = RationalGenFun.geometric((1, 2))
    ea, eb, eab = laurent_expand(a, 3), laurent_expand(b, 3), laurent_expand(a + b, 3)
    top = 4
    rhs = ps.add(ps.mul(_series(ea.series, top), ps.linear_form((1, 2), top)),
                 ps.mul(_series(eb.series, top), ps.linear_form((1, 0), top)))
    assert ps.as_dict(_series(eab.series, top)) == ps.as_dict(rhs)


def _series(d, top):
    s = [dict() for _ in range(top + 1)]
    for k, v in d.items():
        if sum(k) <= top:
            s[sum(k)][k] = v
    return s


def test_laurent_zero_vector():
    with pytest.raises(ZeroDenominatorVector):
        laurent_expand(RationalGenFun(GroupRingElement.one(2), [(0, 0)]), 2)


def test_laurent_of_local_class():
    out = laurent_expand_class(local_class(Cone([(1,)])), 2)
    assert set(out) == {0, 1}
    assert out[0].laurent_terms() == {0: 1}

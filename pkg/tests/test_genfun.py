import pytest

from toricgf import (
    Cone,
    GroupRingElement,
    RationalGenFun,
    SPolynomial,
    closed_sum,
    decompose_in_generators,
    euler_multiplicity,
    face_lattice,
    genfun_equal,
    geometric_sum_simplicial,
    interior_sum,
    semigroup_generators,
    triangulate,
)
from toricgf.errors import CellNotInComplex, NotSimplicial
from toricgf.genfun import grading_functional, substitute_certificate, sum_genfuns

from .conftest import SEGRE

X, Y = (1, 0), (0, 1)


def cyc(i):
    return i % 4


def segre_poly(first):
    """The certificate with the given three leading terms plus the shared cyclic part."""
    terms = dict(first)
    for i in range(4):
        e = [0] * 4
        e[i] = e[cyc(i + 1)] = 1
        terms[tuple(e)] = 1
        e = [0] * 4
        e[i] = e[cyc(i + 1)] = e[cyc(i + 2)] = 1
        terms[tuple(e)] = 1
    terms[(1, 1, 1, 1)] = 1
    return SPolynomial(SEGRE, terms)


P = segre_poly({(1, 0, 0, 0): 1, (0, 0, 1, 0): 1, (1, 0, 1, 0): 1})
P_PRIME = segre_poly({(0, 1, 0, 0): 1, (0, 0, 0, 1): 1, (0, 1, 0, 1): 1})


def geo(m):
    return RationalGenFun.geometric(m)


def test_genfun_equal_examples():
    x2 = (2, 0)
    lhs = geo(X)
    rhs = RationalGenFun(GroupRingElement.one(2) + GroupRingElement.monomial(X), [x2])
    assert genfun_equal(lhs, rhs)
    assert not genfun_equal(geo(X), geo(Y))


def test_substitute_certificate():
    w = (1, 2)
    assert substitute_certificate(SPolynomial.constant([w])) == GroupRingElement.one(2)
    p = SPolynomial([w], {(0,): 1, (1,): 1})
    assert substitute_certificate(p) == GroupRingElement.monomial(w)
    assert substitute_certificate(P) == substitute_certificate(P_PRIME)


def test_grading_functional(orthant2, skew2):
    assert grading_functional(orthant2) == (1, 1)
    assert grading_functional(skew2) == (2, 0)
    assert grading_functional(Cone.trivial(2)) == (0, 0)


def test_geometric_sum_simplicial(orthant2, skew2):
    s = geometric_sum_simplicial(orthant2)
    assert s.certificate.terms == {(0, 0): 1}
    assert genfun_equal(s.value, geo(X) * geo(Y))
    s = geometric_sum_simplicial(skew2)
    assert s.certificate.terms == {(0, 0, 0): 2, (0, 0, 1): 1}
    assert s.sign == 1 and s.verify()
    t = closed_sum(Cone.trivial(2))
    assert t.certificate.terms == {(): 1}
    assert genfun_equal(t.value, RationalGenFun.one(2))
    with pytest.raises(NotSimplicial):
        geometric_sum_simplicial(Cone(SEGRE))


def test_decompose():
    gens = semigroup_generators(Cone([(1, 0), (1, 2)]))
    assert decompose_in_generators((1, 1), gens) == (0, 0, 1)
    assert decompose_in_generators((0, 0), gens) == (0, 0, 0)
    assert decompose_in_generators((2, 2), gens) == (0, 0, 2)
    assert decompose_in_generators((3, 2), gens) == (1, 0, 2)


def test_interior_sum_small(orthant2):
    ray = Cone([(1, 2)])
    s = interior_sum(ray)
    assert s.certificate.terms == {(0,): 1, (1,): 1}
    w = GroupRingElement.monomial((1, 2))
    assert genfun_equal(s.value, RationalGenFun(w, [(1, 2)]))
    s = interior_sum(orthant2)
    assert s.certificate.terms == {(0, 0): 1, (1, 0): 1, (0, 1): 1, (1, 1): 1}
    assert s.verify()


def test_segre_interior_both_diagonals(segre):
    s = interior_sum(segre)
    s2 = interior_sum(segre, order=[1, 2, 3, 0])
    assert s.certificate == P
    assert s2.certificate == P_PRIME
    assert s.sign == -1 and s.ray_denominator == tuple(SEGRE)
    assert genfun_equal(s.value, s2.value)
    assert s.verify() and s2.verify()


def test_closed_equals_face_sum(segre):
    c = closed_sum(segre)
    assert c.verify()
    faces = [interior_sum(f).value for f in face_lattice(segre).faces]
    assert len(faces) == 10
    assert genfun_equal(c.value, sum_genfuns(faces, 3))


def test_interior_equals_alternating_cell_sum(segre):
    # interior sum = sum over cells of (-1)^(n - dim) * closed sum
    tri = triangulate(segre)
    parts = []
    for cell in tri.all_cells:
        v = closed_sum(tri.cell_cone(cell)).value
        parts.append(v if (3 - len(cell)) % 2 == 0 else -v)
    assert genfun_equal(interior_sum(segre).value, sum_genfuns(parts, 3))


def test_euler_multiplicity(segre):
    tri = triangulate(segre)
    assert euler_multiplicity(tri, frozenset({1, 3})) == 1
    assert euler_multiplicity(tri, frozenset({0, 1})) == 0
    for cell in tri.maximal_cells:
        assert euler_multiplicity(tri, cell) == 1
    assert euler_multiplicity(tri, Cone([SEGRE[1], SEGRE[3]])) == 1
    with pytest.raises(CellNotInComplex):
        euler_multiplicity(tri, frozenset({0, 2}))


def test_custom_generators(skew2):
    from toricgf import GeneratorSet
    gens = GeneratorSet(skew2, [(1, 0), (1, 2), (1, 1), (2, 1)])
    s = interior_sum(skew2, gens)
    assert s.certificate.variables[-1] == (2, 1)
    assert s.verify()
    with pytest.raises(ValueError):
        GeneratorSet(skew2, [(1, 2), (1, 0)])

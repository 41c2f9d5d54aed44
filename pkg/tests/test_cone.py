import pytest

from toricgf import Cone, Fan, dual_cone, dual_face, face_lattice, parallelepiped_points, semigroup_generators, triangulate
from toricgf import cone as cone_mod
from toricgf.errors import NotAFace, NotFullDimensional, NotSimplicial, NotStrictlyConvex
from toricgf.lattice import dot

from .conftest import SEGRE


def test_generators_are_made_primitive_and_deduped():
    c = Cone([(2, 0), (0, 3), (1, 0)])
    assert c.rays == ((1, 0), (0, 1))


def test_not_strictly_convex():
    with pytest.raises(NotStrictlyConvex):
        Cone([(1, 0), (-1, 0)])


def test_non_extreme_generators_dropped():
    c = Cone([(1, 0), (1, 1), (0, 1)])
    assert c.rays == ((1, 0), (0, 1))


def test_dual_examples(orthant2, skew2, segre):
    assert set(dual_cone(orthant2).rays) == {(1, 0), (0, 1)}
    assert set(dual_cone(skew2).rays) == {(0, 1), (2, -1)}
    d = dual_cone(segre)
    assert set(d.rays) == {(1, 0, 0), (0, 1, 0), (-1, 0, 1), (0, -1, 1)}
    for m in d.rays:
        assert all(dot(m, r) >= 0 for r in segre.rays)
        assert sum(1 for r in segre.rays if dot(m, r) == 0) >= 2


def test_dual_needs_full_dimension():
    with pytest.raises(NotFullDimensional):
        dual_cone(Cone([(1, 0, 0), (0, 1, 0)]))


def test_double_dual(segre, skew2):
    for c in (segre, skew2):
        assert dual_cone(dual_cone(c)) == c


def test_face_lattice(skew2, segre):
    assert len(face_lattice(skew2)) == 4
    fl = face_lattice(segre)
    assert len(fl) == 10
    assert sorted(fl.dims) == [0, 1, 1, 1, 1, 2, 2, 2, 2, 3]
    assert len(face_lattice(Cone.trivial(3))) == 1


def test_face_lattice_polar_to_dual(segre):
    # faces of sigma and of its dual are in inclusion-reversing bijection
    assert sorted(face_lattice(segre).dims) == sorted(3 - d for d in face_lattice(dual_cone(segre)).dims)


def test_dual_face(orthant2, segre):
    full = frozenset(range(2))
    assert dual_face(orthant2, full).dim == 0
    assert dual_face(orthant2, frozenset()) == dual_cone(orthant2)
    df = dual_face(orthant2, Cone([(1, 0)], 2))
    assert df.rays == ((0, 1),)
    local, _ = df.local()
    assert local.rays == ((1,),)
    with pytest.raises(NotAFace):
        dual_face(segre, Cone([(0, 0, 1), (1, 1, 1)]))


def test_is_simplicial(orthant2, segre):
    assert orthant2.is_simplicial
    assert not segre.is_simplicial
    assert Cone.trivial(2).is_simplicial
    assert cone_mod.is_simplicial(orthant2)


def test_contains(orthant2):
    assert orthant2.contains((0, 1))
    assert not orthant2.contains((0, 1), interior=True)
    ray = Cone([(1, 2)])
    assert ray.contains((2, 4), interior=True)
    assert not ray.contains((0, 0), interior=True)
    assert not ray.contains((1, 3))


def test_hilbert_basis(orthant2, skew2, segre):
    assert semigroup_generators(orthant2).generators == ((1, 0), (0, 1))
    assert semigroup_generators(skew2).generators == ((1, 0), (1, 2), (1, 1))
    assert semigroup_generators(Cone.trivial(2)).generators == ()
    assert semigroup_generators(segre).generators == tuple(SEGRE)


def test_hilbert_basis_irreducible():
    c = Cone([(1, 0, 0), (0, 1, 0), (1, 1, 3), (2, -1, 2)])
    gens = semigroup_generators(c).generators
    # no generator is a sum of two nonzero lattice points of the cone
    ell = c.grading
    for g in gens:
        for h in gens:
            d = tuple(a - b for a, b in zip(g, h))
            if h != g and any(d) and c.contains(d):
                pytest.fail(f"{g} = {h} + {d}")
        assert dot(ell, g) > 0


def test_triangulations(segre):
    t = triangulate(segre)
    assert set(t.maximal_cells) == {frozenset({0, 1, 3}), frozenset({1, 2, 3})}
    t2 = triangulate(segre, [1, 2, 3, 0])
    assert set(t2.maximal_cells) == {frozenset({0, 1, 2}), frozenset({0, 2, 3})}
    simp = Cone([(1, 0), (1, 2)])
    assert triangulate(simp).maximal_cells == (frozenset({0, 1}),)
    assert len(t.all_cells) == 12


def test_parallelepiped(orthant2, skew2):
    assert parallelepiped_points(orthant2) == [(0, 0)]
    assert sorted(parallelepiped_points(skew2)) == [(0, 0), (1, 1)]
    assert len(parallelepiped_points(Cone([(1, 0, 0), (0, 1, 0), (1, 1, 2)]))) == 2
    with pytest.raises(NotSimplicial):
        parallelepiped_points(Cone(SEGRE))


def test_grading(orthant2, skew2):
    assert orthant2.grading == (1, 1)
    assert skew2.grading == (2, 0)
    assert Cone.trivial(2).grading == (0, 0)


def test_fan_closure_and_missing_faces():
    f = Fan.from_maximal(2, [(1, 0), (0, 1), (-1, -1)], [[0, 1], [1, 2], [2, 0]])
    assert len(f.cones) == 7
    assert f.missing_faces() == []
    assert f.check_complete()
    broken = Fan(2, [(1, 0), (0, 1)], [[0, 1]])
    assert frozenset() in broken.missing_faces()

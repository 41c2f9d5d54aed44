import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from toricgf import lattice as lat
from toricgf.errors import DependentGenerators, ZeroVector


def is_unimodular(u):
    return abs(lat.determinant(u)) == 1


def test_primitive():
    assert lat.primitive((2, 4)) == (1, 2)
    assert lat.primitive((-3, 6)) == (-1, 2)
    with pytest.raises(ZeroVector):
        lat.primitive((0, 0))


def test_hnf_identity_and_zero():
    h, u = lat.hermite_normal_form(lat.identity(3))
    assert h == lat.identity(3) and u == lat.identity(3)
    h, u = lat.hermite_normal_form([[0, 0], [0, 0]])
    assert h == ((0, 0), (0, 0)) and u == lat.identity(2)


def test_hnf_example():
    a = [[2, 4], [1, 3]]
    h, u = lat.hermite_normal_form(a)
    assert lat.matmul(u, a) == h
    assert is_unimodular(u)
    # reduced convention: entries above the pivot lie in [0, pivot)
    assert h == ((1, 1), (0, 2))
    assert abs(lat.determinant(h)) == 2


def test_snf_examples():
    for a, diag in [([[2, 0], [0, 3]], (1, 6)), ([[1, 0], [1, 2]], (1, 2)), (lat.identity(3), (1, 1, 1))]:
        d, u, v = lat.smith_normal_form(a)
        assert lat.matmul(lat.matmul(u, a), v) == d
        assert is_unimodular(u) and is_unimodular(v)
        assert tuple(d[i][i] for i in range(len(diag))) == diag


def test_lattice_index():
    assert lat.lattice_index([(1, 0), (0, 1)]) == 1
    assert lat.lattice_index([(1, 0), (1, 2)]) == 2
    assert lat.lattice_index([(1, 1, 1)]) == 1
    assert lat.lattice_index([(2, 0, 0)]) == 2
    with pytest.raises(DependentGenerators):
        lat.lattice_index([(1, 0), (2, 0)])


def test_sublattice_coordinates():
    e = lat.sublattice_coordinates([(2, 0, 0)])
    assert e.rank == 1
    assert e.embed(e.project((1, 0, 0))) == (1, 0, 0)
    assert abs(e.project((1, 0, 0))[0]) == 1
    assert not e.contains((0, 1, 0))
    e2 = lat.sublattice_coordinates([(1, 0), (0, 1)])
    assert e2.rank == 2
    for v in [(1, 0), (0, 1), (3, -5)]:
        assert e2.embed(e2.project(v)) == v
    e0 = lat.sublattice_coordinates([(0, 0)], 2)
    assert e0.rank == 0


def test_integer_kernel_saturated():
    k = lat.integer_kernel([(2, 4, 6)], 3)
    assert len(k) == 2
    for row in k:
        assert lat.dot(row, (2, 4, 6)) == 0
    assert lat.lattice_index(k) == 1


small = st.integers(-6, 6)
matrices = st.integers(1, 4).flatmap(
    lambda n: st.lists(st.lists(small, min_size=n, max_size=n), min_size=1, max_size=4))


@settings(max_examples=150, deadline=None)
@given(matrices)
def test_snf_properties(a):
    d, u, v = lat.smith_normal_form(a)
    assert lat.matmul(lat.matmul(u, a), v) == d
    assert is_unimodular(u) and is_unimodular(v)
    diag = [d[i][i] for i in range(min(len(d), len(d[0])))]
    for i in range(len(d)):
        for j in range(len(d[0])):
            if i != j:
                assert d[i][j] == 0
    nz = [x for x in diag if x]
    assert all(x > 0 for x in nz)
    assert all(b % a == 0 for a, b in zip(nz, nz[1:]))
    assert diag[:len(nz)] == nz


@settings(max_examples=150, deadline=None)
@given(matrices)
def test_hnf_properties(a):
    h, u = lat.hermite_normal_form(a)
    assert lat.matmul(u, a) == h
    assert is_unimodular(u)
    last = -1
    for row in h:
        nz = [j for j, x in enumerate(row) if x]
        if not nz:
            continue
        p = nz[0]
        assert p > last and row[p] > 0
        last = p


@settings(max_examples=100, deadline=None)
@given(st.lists(st.lists(small, min_size=3, max_size=3), min_size=1, max_size=3))
def test_embedding_round_trip(gens):
    e = lat.sublattice_coordinates(gens, 3)
    assert e.rank == lat.rank(gens)
    for g in gens:
        assert e.contains(g)
        assert e.embed(e.project(g)) == tuple(g)

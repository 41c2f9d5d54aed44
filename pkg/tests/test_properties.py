from hypothesis import HealthCheck, assume, given, settings
from hypothesis import strategies as st

from toricgf import Cone, closed_sum, face_lattice, genfun_equal, geometric_sum_simplicial, interior_sum, triangulate
from toricgf import lattice as lat
from toricgf import oracle
from toricgf.errors import NotStrictlyConvex
from toricgf.genfun import sum_genfuns

SETTINGS = settings(max_examples=40, deadline=None, suppress_health_check=[HealthCheck.filter_too_much])


@st.composite
def simplicial_cones(draw):
    n = draw(st.integers(1, 4))
    bound = {1: 5, 2: 5, 3: 3, 4: 2}[n]
    rays = draw(st.lists(st.lists(st.integers(-bound, bound), min_size=n, max_size=n), min_size=n, max_size=n))
    assume(lat.rank(rays) == n)
    return Cone(rays)


@st.composite
def general_cones(draw):
    n = draw(st.integers(3, 4))
    bound = 3 if n == 3 else 2
    k = draw(st.integers(4, 8))
    g = draw(st.lists(st.integers(-2, 2), min_size=n, max_size=n))
    assume(any(g))
    rays = draw(st.lists(st.lists(st.integers(-bound, bound), min_size=n, max_size=n), min_size=k, max_size=k))
    rays = [r for r in rays if lat.dot(g, r) > 0]
    assume(len(rays) >= n and lat.rank(rays) == n)
    try:
        c = Cone(rays)
    except NotStrictlyConvex:
        assume(False)
    return c


@SETTINGS
@given(simplicial_cones())
def test_simplicial_certificate(c):
    s = geometric_sum_simplicial(c)
    assert s.certificate.is_nonnegative()
    assert oracle.check_sum(c, s, 12).passed


@SETTINGS
@given(general_cones())
def test_interior_certificate(c):
    s = interior_sum(c)
    assert s.certificate.is_nonnegative()
    rep = oracle.check_sum(c, s, 12)
    assert rep.passed, rep.line()


@SETTINGS
@given(general_cones())
def test_face_partition_and_alternating_sum(c):
    faces = [interior_sum(f).value for f in face_lattice(c).faces]
    assert genfun_equal(closed_sum(c).value, sum_genfuns(faces, c.rank))
    tri = triangulate(c)
    parts = []
    for cell in tri.all_cells:
        v = closed_sum(tri.cell_cone(cell)).value
        parts.append(v if (c.dim - len(cell)) % 2 == 0 else -v)
    assert genfun_equal(interior_sum(c).value, sum_genfuns(parts, c.rank))


@SETTINGS
@given(general_cones(), st.randoms(use_true_random=False))
def test_triangulation_independence(c, rnd):
    order = list(range(len(c.rays)))
    rnd.shuffle(order)
    t = triangulate(c, order)
    assert oracle.check_euler(t).passed
    assert genfun_equal(interior_sum(c).value, interior_sum(c, order=order).value)

import random

import pytest

from toricgf import _kernels_py, kernels
from toricgf import lattice as lat
from toricgf.cone import semigroup_generators, triangulate
from toricgf.genfun import _suffix_tests
from toricgf.oracle import brute_force_facets, enumerate_points, random_cone

compiled = pytest.importorskip("toricgf._kernels")


def test_backend_selected():
    assert kernels.BACKEND in ("compiled", "python")


@pytest.mark.parametrize("seed", range(15))
def test_scan_box_agrees(seed):
    rng = random.Random(seed)
    c = random_cone(rng, 2 + seed % 3)
    eq, nm = brute_force_facets(c)
    ell = c.grading
    n = c.rank
    lo, hi = [-4] * n, [4] * n
    for interior in (False, True):
        a = _kernels_py.scan_box(lo, hi, nm, eq, ell, 8, interior)
        b = compiled.scan_box(lo, hi, [list(f) for f in nm], [list(e) for e in eq], list(ell), 8, interior)
        assert a == b


@pytest.mark.parametrize("seed", range(15))
def test_hilbert_reduce_agrees(seed):
    rng = random.Random(100 + seed)
    c = random_cone(rng, 2 + seed % 3)
    ell = c.grading
    cand = sorted(set(semigroup_generators(c).generators) | {tuple(a + b for a, b in zip(c.rays[0], c.rays[-1]))},
                  key=lambda v: (sum(x * y for x, y in zip(ell, v)), v))
    normals = [list(f) for f in c.facet_normals]
    assert _kernels_py.hilbert_reduce(cand, ell, normals) == compiled.hilbert_reduce(
        [list(v) for v in cand], list(ell), normals)


@pytest.mark.parametrize("seed", range(10))
def test_decomposer_agrees(seed):
    rng = random.Random(200 + seed)
    c = random_cone(rng, 2 + seed % 3)
    gens = semigroup_generators(c)
    tests = _suffix_tests(gens)
    py = _kernels_py.Decomposer(gens.generators, tests, c.rank)
    cc = compiled.Decomposer([list(g) for g in gens.generators],
                             [([list(e) for e in eq], [list(f) for f in nm]) for eq, nm in tests], c.rank)
    pts = enumerate_points(c, False, c.grading, 6)
    assert pts
    for v in pts:
        a = py.decompose(v)
        assert a == cc.decompose(list(v))
        total = lat.zero(c.rank)
        for k, w in zip(a, gens.generators):
            total = lat.add(total, lat.scale(k, w))
        assert total == v
    outside = tuple(-x for x in c.rays[0])
    assert py.decompose(outside) is None and cc.decompose(list(outside)) is None


@pytest.mark.parametrize("seed", range(10))
def test_box_points_agree(seed):
    rng = random.Random(300 + seed)
    c = random_cone(rng, 2 + seed % 4)
    for cell in triangulate(c).maximal_cells:
        rays = [c.rays[i] for i in sorted(cell)]
        dm, u, _ = lat.smith_normal_form(rays)
        inv = [dm[i][i] for i in range(len(rays))]
        big = inv[-1]
        steps = [[(big // inv[i]) * u[i][j] % big for j in range(len(rays))] for i in range(len(rays))]
        a = _kernels_py.box_points(inv, steps, rays, c.rank)
        b = compiled.box_points(inv, steps, [list(r) for r in rays], c.rank)
        assert a == b
        assert len(a) == abs(lat.determinant(rays))


def test_large_values_fall_back():
    big = 2 ** 70
    pts = kernels.scan_box([0], [2], [[1]], [], [big], 3 * big, False)
    assert pts == [(0,), (1,), (2,)]

"""Brute-force checks that do not share code paths with the summation routines.

Membership here uses facets found by scanning ray subsets, not the double
description used by :class:`~toricgf.cone.Cone`, and lattice points are found
by scanning a bounding box.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from fractions import Fraction
from math import ceil, floor
from typing import Mapping, Sequence

from . import kernels
from . import lattice as lat
from .cone import Cone, Triangulation
from .errors import GradingNotPositive, NonPositiveDenominatorGrading
from .genfun import CertifiedConeSum, RationalGenFun, euler_multiplicity
from .lattice import Vector, dot


@dataclass
class TruncatedSeries:
    grading: Vector
    bound: int
    terms: dict = field(default_factory=dict)

    def __eq__(self, other):
        return (isinstance(other, TruncatedSeries) and self.grading == other.grading
                and self.bound == other.bound and self.terms == other.terms)


@dataclass
class Report:
    name: str
    passed: bool
    checked: int = 0
    detail: str = ""

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        tail = f": {self.detail}" if self.detail else ""
        return f"{status} {self.name} (checked {self.checked}){tail}"


def brute_force_facets(c: Cone) -> tuple[list[Vector], list[Vector]]:
    """``(equations, inward facet normals)`` describing ``c`` inside ``Z^n``."""
    n = c.rank
    rays = list(c.rays)
    equations = list(lat.integer_kernel(rays, n)) if rays else list(lat.identity(n))
    d = c.dim
    if d <= 1:
        return equations, [r for r in rays]
    normals = set()
    for subset in itertools.combinations(rays, d - 1):
        if lat.rank(subset) != d - 1:
            continue
        ker = lat.integer_kernel(list(subset) + equations, n)
        if len(ker) != 1:
            continue
        eta = ker[0]
        vals = [dot(eta, r) for r in rays]
        if all(v >= 0 for v in vals):
            normals.add(lat.primitive(eta))
        elif all(v <= 0 for v in vals):
            normals.add(lat.primitive(lat.scale(-1, eta)))
    return equations, sorted(normals)


def _inside(v, equations, normals, interior=False) -> bool:
    if any(dot(e, v) for e in equations):
        return False
    t = 1 if interior else 0
    return all(dot(f, v) >= t for f in normals)


def enumerate_points(c: Cone, interior: bool, grading: Sequence[int], bound: int) -> list[Vector]:
    """Lattice points of ``c`` (or its relative interior) with grading at most ``bound``."""
    grading = lat.vec(grading)
    levels = [dot(grading, r) for r in c.rays]
    if any(x <= 0 for x in levels):
        raise GradingNotPositive(f"grading {grading} is not positive on every ray of {c}")
    equations, normals = brute_force_facets(c)
    if c.dim == 1:
        normals = [lat.vec(f) for f in normals]
    if bound < 0:
        return []
    n = c.rank
    lo, hi = [], []
    for k in range(n):
        vals = [Fraction(bound * r[k], lv) for r, lv in zip(c.rays, levels)] + [Fraction(0)]
        lo.append(floor(min(vals)))
        hi.append(ceil(max(vals)))
    pts = kernels.scan_box(lo, hi, normals, equations, grading, bound, interior)
    return sorted(pts, key=lambda v: (dot(grading, v), v))


def indicator_series(points, grading, bound) -> TruncatedSeries:
    return TruncatedSeries(lat.vec(grading), bound, {lat.vec(p): 1 for p in points})


def expand_truncated(g: RationalGenFun, grading: Sequence[int], bound: int) -> TruncatedSeries:
    """Expand every ``1/(1 - e^m)`` as a geometric series and drop terms above ``bound``."""
    grading = lat.vec(grading)
    for m in g.denominator:
        if dot(grading, m) <= 0:
            raise NonPositiveDenominatorGrading(f"denominator vector {m} has grading {dot(grading, m)}")
    terms = {e: c for e, c in g.numerator.terms.items() if dot(grading, e) <= bound}
    return TruncatedSeries(grading, bound, _geometric_expand(terms, g.denominator, grading, bound))


def _geometric_expand(terms: Mapping, den, grading, bound) -> dict:
    for m in den:
        step = dot(grading, m)
        out: dict = {}
        for e, c in terms.items():
            level = dot(grading, e)
            cur = e
            while level <= bound:
                v = out.get(cur, 0) + c
                if v:
                    out[cur] = v
                else:
                    out.pop(cur, None)
                cur = lat.add(cur, m)
                level += step
        terms = out
    return {e: c for e, c in terms.items() if c}


def _first_difference(a: Mapping, b: Mapping, grading) -> str:
    keys = sorted(set(a) | set(b), key=lambda v: (dot(grading, v), v))
    for k in keys:
        if a.get(k, 0) != b.get(k, 0):
            return f"exponent {list(k)}: computed {a.get(k, 0)}, enumerated {b.get(k, 0)}"
    return ""


def check_sum(c: Cone, s: CertifiedConeSum, bound: int = 12, grading: Sequence[int] | None = None) -> Report:
    """Compare a cone sum with enumeration, both as value and as certificate form."""
    grading = lat.vec(grading) if grading is not None else c.grading
    name = f"{s.kind}-sum {[list(r) for r in c.rays]}"
    neg = s.certificate.negative_terms()
    if neg:
        exps, coeff = neg[0]
        return Report(name, False, 0, f"negative certificate coefficient {coeff} at S-exponent {list(exps)}")
    if c.dim == 0:
        expected = {lat.zero(c.rank): 1}
    else:
        expected = indicator_series(enumerate_points(c, s.kind == "interior", grading, bound), grading, bound).terms
    got = expand_truncated(s.value, grading, bound).terms
    if got != expected:
        return Report(name, False, len(expected), "value " + _first_difference(got, expected, grading))
    k = len(s.ray_denominator)
    sub = s.certificate.substitute_truncated(grading, bound)
    sub = {e: v * s.sign * (-1) ** k for e, v in sub.items()}
    cert = _geometric_expand(sub, s.ray_denominator, grading, bound)
    if cert != expected:
        return Report(name, False, len(expected), "certificate " + _first_difference(cert, expected, grading))
    return Report(name, True, len(expected))


def check_euler(tri: Triangulation) -> Report:
    """Alternating cell counts against a geometric interior test, every cell."""
    base = tri.base
    equations, normals = brute_force_facets(base)
    name = f"euler {[sorted(x) for x in tri.maximal_cells]}"
    for kappa in tri.all_cells:
        point = lat.zero(base.rank)
        for i in kappa:
            point = lat.add(point, base.rays[i])
        expected = 1 if (kappa and _inside(point, equations, normals, interior=True)) else 0
        got = euler_multiplicity(tri, kappa)
        if got != expected:
            return Report(name, False, len(tri.all_cells),
                          f"cell {sorted(kappa)}: alternating sum {got}, expected {expected}")
    return Report(name, True, len(tri.all_cells))


def check_triangulation(tri: Triangulation, bound: int = 4) -> Report:
    """Every lattice point in a box lies in exactly one relative interior of a cell
    iff it lies in the base cone."""
    base = tri.base
    eq, nm = brute_force_facets(base)
    cells = [(tri.cell_cone(cell), brute_force_facets(tri.cell_cone(cell))) for cell in tri.all_cells]
    name = f"triangulation {[sorted(x) for x in tri.maximal_cells]}"
    count = 0
    for v in itertools.product(range(-bound, bound + 1), repeat=base.rank):
        inside = _inside(v, eq, nm)
        hits = sum(1 for _, (e, f) in cells if _inside(v, e, f, interior=True))
        count += 1
        if hits != (1 if inside else 0):
            return Report(name, False, count, f"point {list(v)} lies in {hits} cell interiors")
    return Report(name, True, count)


# entry bound by rank: multiplicities grow like entry^rank, so larger ranks
# use smaller boxes to keep the brute-force scans fast
ENTRY_BOUND = {1: 6, 2: 6, 3: 3, 4: 2, 5: 1}


def default_entry_bound(rank: int) -> int:
    return ENTRY_BOUND.get(rank, 1)


def random_cone(rng: random.Random, rank: int, max_rays: int = 8, max_entry: int | None = None,
                min_rays: int | None = None) -> Cone:
    """Random full-dimensional strictly convex cone.

    Vectors are drawn from the box ``[-max_entry, max_entry]^rank`` on the
    positive side of a random functional, then reduced to extreme rays.
    """
    min_rays = rank if min_rays is None else min_rays
    max_entry = default_entry_bound(rank) if max_entry is None else max_entry
    while True:
        g = [rng.randint(-2, 2) for _ in range(rank)]
        if not any(g):
            continue
        count = rng.randint(min_rays, max_rays)
        vecs = []
        while len(vecs) < count:
            v = tuple(rng.randint(-max_entry, max_entry) for _ in range(rank))
            if dot(g, v) > 0:
                vecs.append(v)
        c = Cone(vecs, rank)
        if c.is_full_dimensional and len(c.rays) >= min_rays:
            return c

"""Pure-Python implementations of the hot loops.

These are the reference versions; ``_kernels.pyx`` mirrors them with C
integer arithmetic and must return identical results.
"""

from __future__ import annotations

import itertools


def scan_box(lo, hi, normals, equations, grading, bound, interior):
    """Integer points ``v`` of the box ``lo <= v <= hi`` with

    * ``<e, v> == 0`` for every row of ``equations``,
    * ``<f, v> >= 0`` (``> 0`` when ``interior``) for every row of ``normals``,
    * ``<grading, v> <= bound``.

    Returned in lexicographic order.
    """
    out = []
    thresh = 1 if interior else 0
    ranges = [range(a, b + 1) for a, b in zip(lo, hi)]
    for v in itertools.product(*ranges):
        if sum(g * x for g, x in zip(grading, v)) > bound:
            continue
        ok = True
        for e in equations:
            if sum(a * x for a, x in zip(e, v)):
                ok = False
                break
        if not ok:
            continue
        for f in normals:
            if sum(a * x for a, x in zip(f, v)) < thresh:
                ok = False
                break
        if ok:
            out.append(v)
    return out


def hilbert_reduce(cand, grading, normals):
    """Drop candidates that are a basis element plus a cone point.

    ``cand`` must be sorted by grading; anything reducible is reducible by an
    irreducible element of strictly smaller grading, so only the basis found
    so far needs to be tried.
    """
    basis = []
    levels = []
    for v in cand:
        lv = sum(g * x for g, x in zip(grading, v))
        reducible = False
        for h, lh in zip(basis, levels):
            if lh >= lv:
                continue
            w = [a - b for a, b in zip(v, h)]
            if all(sum(a * x for a, x in zip(f, w)) >= 0 for f in normals):
                reducible = True
                break
        if not reducible:
            basis.append(tuple(v))
            levels.append(lv)
    return basis


def box_points(inv, steps, rays, rank):
    """Points ``sum t_j rays[j] / L`` with ``t = sum z_i steps[i] mod L``.

    ``L = inv[-1]`` and ``z`` runs over ``prod range(inv[i])`` in
    lexicographic order.  Returns ``(point, t)`` pairs.
    """
    big = inv[-1]
    d = len(inv)
    out = []
    for z in itertools.product(*(range(x) for x in inv)):
        t = tuple(sum(z[i] * steps[i][j] for i in range(d)) % big for j in range(d))
        p = tuple(sum(t[j] * rays[j][c] for j in range(d)) // big for c in range(rank))
        out.append((p, t))
    return out


def _dot(a, v):
    return sum(x * y for x, y in zip(a, v))


def _inside(test, v) -> bool:
    eqs, normals = test
    for e in eqs:
        if sum(a * x for a, x in zip(e, v)):
            return False
    for f in normals:
        if sum(a * x for a, x in zip(f, v)) < 0:
            return False
    return True


class Decomposer:
    """Lexicographically smallest ``c >= 0`` with ``v = sum c_i gens[i]``.

    ``tests[i]`` is ``(equations, normals)`` describing the cone spanned by
    ``gens[i:]``; it must have ``len(gens) + 1`` entries.  Failed
    ``(i, remainder)`` pairs are memoized.
    """

    def __init__(self, gens, tests, n):
        self.n = n
        self.gens = [tuple(g) for g in gens]
        self.tests = tests
        self.failed = set()
        # rows of the next test, each paired with its value on gens[i]
        self.next_rows = []
        for i, w in enumerate(self.gens):
            eqs, normals = tests[i + 1]
            self.next_rows.append(([(e, _dot(e, w)) for e in eqs], [(f, _dot(f, w)) for f in normals]))

    def decompose(self, v):
        v = tuple(v)
        if not _inside(self.tests[0], v):
            return None
        coef = [0] * len(self.gens)
        return tuple(coef) if self._dfs(0, v, coef) else None

    def _range(self, i, v):
        """Integers ``a >= 0`` with ``v - a gens[i]`` in the cone of ``gens[i + 1:]``.

        Each condition is linear in ``a``, so the answer is an interval.
        """
        lo, hi = 0, None
        eqs, normals = self.next_rows[i]
        for e, ew in eqs:
            ev = _dot(e, v)
            if ew == 0:
                if ev:
                    return range(0)
            elif ev % ew:
                return range(0)
            else:
                a = ev // ew
                lo, hi = max(lo, a), a if hi is None else min(hi, a)
        for f, fw in normals:
            fv = _dot(f, v)
            if fw > 0:
                hi = fv // fw if hi is None else min(hi, fv // fw)
            elif fw < 0:
                lo = max(lo, -(fv // -fw))
            elif fv < 0:
                return range(0)
        if hi is None:
            raise ValueError(f"generator {self.gens[i]} is unbounded in the cone")
        return range(lo, hi + 1)

    def _dfs(self, i, v, coef):
        if not any(v):
            for j in range(i, len(coef)):
                coef[j] = 0
            return True
        if i == len(self.gens):
            return False
        key = (i, v)
        if key in self.failed:
            return False
        w = self.gens[i]
        for a in self._range(i, v):
            if self._dfs(i + 1, tuple([x - a * y for x, y in zip(v, w)]), coef):
                coef[i] = a
                return True
        self.failed.add(key)
        return False

"""Dispatch between the compiled kernels and the pure-Python fallback.

The compiled module is used when it imports and the inputs are small enough
for 64-bit arithmetic; set ``TORICGF_PURE_PYTHON=1`` to force the fallback.
"""

from __future__ import annotations

import os

from . import _kernels_py

try:
    if os.environ.get("TORICGF_PURE_PYTHON", "") not in ("", "0"):
        raise ImportError("pure Python requested")
    from . import _kernels as _compiled
except ImportError:
    _compiled = None

BACKEND = "compiled" if _compiled is not None else "python"

_LIMIT = 2 ** 62


def _norm1(rows) -> int:
    return max((sum(abs(x) for x in r) for r in rows), default=0)


def _fits(coord_bound: int, *row_groups) -> bool:
    worst = max((_norm1(rows) for rows in row_groups), default=0)
    return coord_bound < _LIMIT and worst * max(coord_bound, 1) < _LIMIT


def scan_box(lo, hi, normals, equations, grading, bound, interior):
    coord = max([abs(x) for x in lo] + [abs(x) for x in hi] + [0])
    if _compiled is not None and abs(bound) < _LIMIT and _fits(coord, normals, equations, [grading]):
        return _compiled.scan_box(list(lo), list(hi), [list(f) for f in normals],
                                  [list(e) for e in equations], list(grading), bound, interior)
    return _kernels_py.scan_box(lo, hi, normals, equations, grading, bound, interior)


def hilbert_reduce(cand, grading, normals):
    coord = 2 * max((abs(x) for v in cand for x in v), default=0)
    if _compiled is not None and _fits(coord, normals, [grading]):
        return _compiled.hilbert_reduce([list(v) for v in cand], list(grading),
                                        [list(f) for f in normals])
    return _kernels_py.hilbert_reduce(cand, grading, normals)


def box_points(inv, steps, rays, rank):
    big = inv[-1] if inv else 1
    d = len(inv)
    coord = max((abs(x) for r in rays for x in r), default=0)
    if _compiled is not None and d and big * big * d < _LIMIT and big * d * max(coord, 1) < _LIMIT:
        return _compiled.box_points(list(inv), [list(s) for s in steps], [list(r) for r in rays], rank)
    return _kernels_py.box_points(inv, steps, rays, rank)


def make_decomposer(gens, tests, n, grading):
    """Lex-min decomposition engine for ``gens``; see ``_kernels_py.Decomposer``.

    ``grading`` must be positive on every nonzero generator.  Each remainder
    the search visits lies in the cone (or one generator outside it) with
    grading at most that of the input, which bounds its coordinates; the
    compiled engine is used only when that bound keeps every dot product
    below ``2**62``.
    """
    return _DecomposerDispatch(gens, tests, n, grading)


class _DecomposerDispatch:
    def __init__(self, gens, tests, n, grading):
        self._py = _kernels_py.Decomposer(gens, tests, n)
        self._c = None
        if _compiled is not None:
            rows = [r for eq, nm in tests for r in list(eq) + list(nm)]
            self._rows = max(_norm1(rows), 1)
            self._gen = max((abs(x) for g in gens for x in g), default=1)
            self._ell = max(sum(abs(x) for x in grading), 1)
            self._c = _compiled.Decomposer([list(g) for g in gens],
                                           [([list(e) for e in eq], [list(f) for f in nm]) for eq, nm in tests], n)

    def decompose(self, v):
        if self._c is not None:
            coord = (self._ell * max((abs(x) for x in v), default=0) + 2) * self._gen
            if coord * self._rows < _LIMIT:
                return self._c.decompose(list(v))
        return self._py.decompose(tuple(v))

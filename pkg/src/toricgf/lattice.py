"""Exact integer linear algebra on lattices.

Vectors are tuples of Python ints and matrices are tuples of row tuples, so
nothing here can overflow. Conventions (fixed so that output is stable):

* row Hermite normal form: ``H = U @ A`` is in row echelon form, pivots are
  positive and entries above a pivot lie in ``[0, pivot)``;
* Smith normal form: ``D = U @ A @ V`` is diagonal with nonnegative entries
  and ``d_1 | d_2 | ...``.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence

from .errors import DependentGenerators, ZeroVector

Vector = tuple  # tuple[int, ...]
Matrix = tuple  # tuple[tuple[int, ...], ...]


def vec(v: Iterable[int]) -> Vector:
    return tuple(int(x) for x in v)


def dot(a: Sequence[int], b: Sequence[int]) -> int:
    return sum(x * y for x, y in zip(a, b))


def add(a: Sequence[int], b: Sequence[int]) -> Vector:
    return tuple(x + y for x, y in zip(a, b))


def sub(a: Sequence[int], b: Sequence[int]) -> Vector:
    return tuple(x - y for x, y in zip(a, b))


def scale(k: int, a: Sequence[int]) -> Vector:
    return tuple(k * x for x in a)


def zero(n: int) -> Vector:
    return (0,) * n


def content(v: Sequence[int]) -> int:
    g = 0
    for x in v:
        g = gcd(g, x)
    return g


def primitive(v: Sequence[int]) -> Vector:
    """Return the primitive lattice vector on the ray through ``v``."""
    g = content(v)
    if g == 0:
        raise ZeroVector(f"zero vector {tuple(v)} has no primitive direction")
    return tuple(x // g for x in v)


def identity(n: int) -> Matrix:
    return tuple(tuple(int(i == j) for j in range(n)) for i in range(n))


def transpose(a: Sequence[Sequence[int]], cols: int | None = None) -> Matrix:
    if not a:
        return tuple(() for _ in range(cols or 0))
    return tuple(zip(*a))


def matmul(a: Sequence[Sequence[int]], b: Sequence[Sequence[int]]) -> Matrix:
    bt = list(zip(*b)) if b else []
    return tuple(tuple(dot(row, col) for col in bt) for row in a)


def vecmat(v: Sequence[int], a: Sequence[Sequence[int]]) -> Vector:
    """Row vector times matrix."""
    if not a:
        return ()
    return tuple(dot(v, col) for col in zip(*a))


def determinant(a: Sequence[Sequence[int]]) -> int:
    """Bareiss fraction-free determinant."""
    n = len(a)
    if n == 0:
        return 1
    m = [list(r) for r in a]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for i in range(k + 1, n):
                if m[i][k] != 0:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


def rank(rows: Sequence[Sequence[int]]) -> int:
    """Rank over Q of an integer (or rational) matrix given by rows."""
    m = []
    for r in rows:
        den = 1
        for x in r:
            if isinstance(x, Fraction):
                den = den * x.denominator // gcd(den, x.denominator)
        m.append([int(x * den) for x in r])
    if not m:
        return 0
    ncols = len(m[0])
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        top = m[r]
        a = top[c]
        for i in range(r + 1, len(m)):
            b = m[i][c]
            if b:
                row = [a * x - b * y for x, y in zip(m[i], top)]
                g = 0
                for x in row:
                    g = gcd(g, x)
                m[i] = [x // g for x in row] if g > 1 else row
        r += 1
        if r == len(m):
            break
    return r


def solve_rational(a: Sequence[Sequence[int]], b: Sequence[int]) -> tuple[Fraction, ...]:
    """Solve ``x @ a = b`` for a square nonsingular integer matrix ``a``."""
    n = len(a)
    # transpose so that we solve a^T x = b with row reduction
    m = [[Fraction(a[j][i]) for j in range(n)] + [Fraction(b[i])] for i in range(n)]
    for c in range(n):
        piv = next(i for i in range(c, n) if m[i][c] != 0)
        m[c], m[piv] = m[piv], m[c]
        p = m[c][c]
        m[c] = [x / p for x in m[c]]
        for i in range(n):
            if i != c and m[i][c] != 0:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[c])]
    return tuple(m[i][n] for i in range(n))


def adjugate(a: Sequence[Sequence[int]]) -> Matrix:
    """Integer adjugate, so that ``a @ adj(a) = det(a) * I``."""
    n = len(a)
    if n == 1:
        return ((1,),)
    adj = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            minor = [row[:j] + row[j + 1:] for k, row in enumerate(a) if k != i]
            adj[j][i] = (-1) ** (i + j) * determinant(minor)
    return tuple(map(tuple, adj))


def inverse_unimodular(a: Sequence[Sequence[int]]) -> Matrix:
    d = determinant(a)
    if d not in (1, -1):
        raise ValueError("matrix is not unimodular")
    return tuple(tuple(d * x for x in row) for row in adjugate(a))


def hermite_normal_form(a: Sequence[Sequence[int]], cols: int | None = None) -> tuple[Matrix, Matrix]:
    """Row Hermite normal form ``H = U @ A`` with ``U`` unimodular."""
    m = len(a)
    n = len(a[0]) if m else (cols or 0)
    h = [list(r) for r in a]
    u = [list(r) for r in identity(m)]
    r = 0
    for c in range(n):
        if r == m:
            break
        while True:
            nz = [i for i in range(r, m) if h[i][c] != 0]
            if not nz:
                break
            piv = min(nz, key=lambda i: (abs(h[i][c]), i))
            h[r], h[piv] = h[piv], h[r]
            u[r], u[piv] = u[piv], u[r]
            done = True
            for i in range(r + 1, m):
                if h[i][c] != 0:
                    q = h[i][c] // h[r][c]
                    h[i] = [x - q * y for x, y in zip(h[i], h[r])]
                    u[i] = [x - q * y for x, y in zip(u[i], u[r])]
                    if h[i][c] != 0:
                        done = False
            if done:
                break
        if h[r][c] == 0:
            continue
        if h[r][c] < 0:
            h[r] = [-x for x in h[r]]
            u[r] = [-x for x in u[r]]
        for i in range(r):
            q = h[i][c] // h[r][c]
            if q:
                h[i] = [x - q * y for x, y in zip(h[i], h[r])]
                u[i] = [x - q * y for x, y in zip(u[i], u[r])]
        r += 1
    return tuple(map(tuple, h)), tuple(map(tuple, u))


def smith_normal_form(a: Sequence[Sequence[int]], cols: int | None = None) -> tuple[Matrix, Matrix, Matrix]:
    """Smith normal form ``D = U @ A @ V`` with ``U``, ``V`` unimodular."""
    m = len(a)
    n = len(a[0]) if m else (cols or 0)
    d = [list(r) for r in a]
    u = [list(r) for r in identity(m)]
    v = [list(r) for r in identity(n)]

    def swap_rows(i, j):
        d[i], d[j] = d[j], d[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for row in d:
            row[i], row[j] = row[j], row[i]
        for row in v:
            row[i], row[j] = row[j], row[i]

    def row_axpy(dst, q, src):
        # row_dst -= q * row_src
        d[dst] = [x - q * y for x, y in zip(d[dst], d[src])]
        u[dst] = [x - q * y for x, y in zip(u[dst], u[src])]

    def col_axpy(dst, q, src):
        for row in d:
            row[dst] -= q * row[src]
        for row in v:
            row[dst] -= q * row[src]

    for t in range(min(m, n)):
        entries = [(abs(d[i][j]), i, j) for i in range(t, m) for j in range(t, n) if d[i][j] != 0]
        if not entries:
            break
        _, i0, j0 = min(entries)
        swap_rows(t, i0)
        swap_cols(t, j0)
        while True:
            clean = True
            for i in range(t + 1, m):
                if d[i][t]:
                    row_axpy(i, d[i][t] // d[t][t], t)
                    if d[i][t]:
                        clean = False
            for j in range(t + 1, n):
                if d[t][j]:
                    col_axpy(j, d[t][j] // d[t][t], t)
                    if d[t][j]:
                        clean = False
            if not clean:
                rest = [(abs(d[i][t]), i, 'r') for i in range(t + 1, m) if d[i][t]]
                rest += [(abs(d[t][j]), j, 'c') for j in range(t + 1, n) if d[t][j]]
                val, k, kind = min(rest)
                if val < abs(d[t][t]):
                    if kind == 'r':
                        swap_rows(t, k)
                    else:
                        swap_cols(t, k)
                continue
            bad = next(((i, j) for i in range(t + 1, m) for j in range(t + 1, n)
                        if d[i][j] % d[t][t]), None)
            if bad is None:
                break
            # fold the offending row into row t and go around again
            row_axpy(t, -1, bad[0])
        if d[t][t] < 0:
            d[t] = [-x for x in d[t]]
            u[t] = [-x for x in u[t]]
    return tuple(map(tuple, d)), tuple(map(tuple, u)), tuple(map(tuple, v))


def smith_invariants(a: Sequence[Sequence[int]]) -> tuple[int, ...]:
    d, _, _ = smith_normal_form(a)
    return tuple(d[i][i] for i in range(min(len(d), len(d[0]) if d else 0)) if d[i][i])


def lattice_index(gens: Sequence[Sequence[int]]) -> int:
    """Index of the lattice spanned by ``gens`` inside its saturation."""
    if not gens:
        return 1
    inv = smith_invariants(gens)
    if len(inv) < len(gens):
        raise DependentGenerators(f"generators {list(map(tuple, gens))} are linearly dependent")
    out = 1
    for x in inv:
        out *= x
    return out


def integer_kernel(a: Sequence[Sequence[int]], cols: int) -> Matrix:
    """Basis (as rows) of the saturated lattice ``{x : a @ x = 0}``."""
    if not a:
        return identity(cols)
    d, _, v = smith_normal_form(a)
    r = sum(1 for i in range(min(len(d), cols)) if d[i][i])
    return tuple(tuple(v[i][j] for i in range(cols)) for j in range(r, cols))


class LatticeEmbedding:
    """Coordinates on the saturated lattice ``span(gens) ∩ Z^n``.

    ``basis`` holds ``k`` rows of a unimodular matrix, so ``embed`` and
    ``project`` are mutually inverse bijections between ``Z^k`` and the
    saturated sublattice.
    """

    def __init__(self, basis: Matrix, coords: Matrix, ambient_rank: int):
        self.basis = basis
        self._coords = coords  # n x n, v @ coords = (local coords, zeros)
        self.ambient_rank = ambient_rank
        self.rank = len(basis)

    def embed(self, x: Sequence[int]) -> Vector:
        if self.rank == 0:
            return zero(self.ambient_rank)
        return vecmat(x, self.basis)

    def project(self, v: Sequence[int]) -> Vector:
        w = vecmat(v, self._coords)
        if any(w[self.rank:]):
            raise ValueError(f"{tuple(v)} is not in the span")
        return w[:self.rank]

    def contains(self, v: Sequence[int]) -> bool:
        return not any(vecmat(v, self._coords)[self.rank:])

    def lift_functional(self, f: Sequence[int]) -> Vector:
        """Ambient functional agreeing with local functional ``f`` on the span."""
        cols = [tuple(row[j] for row in self._coords) for j in range(self.rank)]
        return tuple(sum(fj * col[i] for fj, col in zip(f, cols)) for i in range(self.ambient_rank))

    def __repr__(self):
        return f"LatticeEmbedding(rank={self.rank}, basis={self.basis})"


def sublattice_coordinates(span_gens: Sequence[Sequence[int]], ambient_rank: int | None = None) -> LatticeEmbedding:
    n = ambient_rank if ambient_rank is not None else len(span_gens[0])
    gens = [g for g in span_gens if any(g)]
    if not gens:
        return LatticeEmbedding((), identity(n), n)
    if rank(gens) == n:
        return LatticeEmbedding(identity(n), identity(n), n)
    d, _, v = smith_normal_form(gens)
    r = sum(1 for i in range(min(len(d), n)) if d[i][i])
    vinv = inverse_unimodular(v)
    return LatticeEmbedding(vinv[:r], v, n)

# cython: language_level=3, boundscheck=False, wraparound=False
"""C versions of the hot loops in ``_kernels_py``.

All arithmetic is on 64-bit integers.  ``kernels.py`` only dispatches here
after checking that no intermediate value can exceed ``2**62``.
"""

from cpython.bytes cimport PyBytes_FromStringAndSize
from libc.stdlib cimport malloc, free


cdef long long _dot(long long *a, long long *v, int n) noexcept nogil:
    cdef long long s = 0
    cdef int i
    for i in range(n):
        s += a[i] * v[i]
    return s


cdef long long *_flatten(rows, int n) except NULL:
    cdef int m = len(rows)
    cdef long long *buf = <long long *> malloc(max(m * n, 1) * sizeof(long long))
    if buf == NULL:
        raise MemoryError()
    cdef int i, j
    for i in range(m):
        row = rows[i]
        for j in range(n):
            buf[i * n + j] = row[j]
    return buf


def scan_box(lo, hi, normals, equations, grading, long long bound, bint interior):
    cdef int n = len(lo)
    cdef int nf = len(normals)
    cdef int ne = len(equations)
    cdef long long thresh = 1 if interior else 0
    cdef long long *f = _flatten(normals, n)
    cdef long long *e = NULL
    cdef long long *g = NULL
    cdef long long *v = NULL
    cdef long long *clo = NULL
    cdef long long *chi = NULL
    cdef int i, k
    cdef bint ok
    out = []
    try:
        e = _flatten(equations, n)
        g = _flatten([grading], n)
        clo = _flatten([lo], n)
        chi = _flatten([hi], n)
        v = <long long *> malloc(max(n, 1) * sizeof(long long))
        if v == NULL:
            raise MemoryError()
        for i in range(n):
            if clo[i] > chi[i]:
                return out
            v[i] = clo[i]
        while True:
            if _dot(g, v, n) <= bound:
                ok = True
                for k in range(ne):
                    if _dot(e + k * n, v, n) != 0:
                        ok = False
                        break
                if ok:
                    for k in range(nf):
                        if _dot(f + k * n, v, n) < thresh:
                            ok = False
                            break
                if ok:
                    out.append(tuple([v[i] for i in range(n)]))
            # odometer, last coordinate fastest (lexicographic order)
            i = n - 1
            while i >= 0:
                if v[i] < chi[i]:
                    v[i] += 1
                    break
                v[i] = clo[i]
                i -= 1
            if i < 0:
                break
        return out
    finally:
        free(f)
        free(e)
        free(g)
        free(v)
        free(clo)
        free(chi)


def hilbert_reduce(cand, grading, normals):
    cdef int m = len(cand)
    if m == 0:
        return []
    cdef int n = len(grading)
    cdef int nf = len(normals)
    cdef long long *c = _flatten(cand, n)
    cdef long long *f = NULL
    cdef long long *g = NULL
    cdef long long *lev = NULL
    cdef int *basis = NULL
    cdef long long *w = NULL
    cdef int nb = 0
    cdef int a, b, k, j
    cdef bint reducible, inside
    try:
        f = _flatten(normals, n)
        g = _flatten([grading], n)
        lev = <long long *> malloc(m * sizeof(long long))
        basis = <int *> malloc(m * sizeof(int))
        w = <long long *> malloc(max(n, 1) * sizeof(long long))
        if lev == NULL or basis == NULL or w == NULL:
            raise MemoryError()
        for a in range(m):
            lev[a] = _dot(g, c + a * n, n)
        for a in range(m):
            reducible = False
            for b in range(nb):
                j = basis[b]
                if lev[j] >= lev[a]:
                    continue
                for k in range(n):
                    w[k] = c[a * n + k] - c[j * n + k]
                inside = True
                for k in range(nf):
                    if _dot(f + k * n, w, n) < 0:
                        inside = False
                        break
                if inside:
                    reducible = True
                    break
            if not reducible:
                basis[nb] = a
                nb += 1
        return [tuple(cand[basis[b]]) for b in range(nb)]
    finally:
        free(c)
        free(f)
        free(g)
        free(lev)
        free(basis)
        free(w)


def box_points(inv, steps, rays, int rank):
    cdef int d = len(inv)
    cdef long long big = inv[d - 1]
    cdef long long *ci = _flatten([inv], d)
    cdef long long *st = NULL
    cdef long long *r = NULL
    cdef long long *z = NULL
    cdef long long *t = NULL
    cdef long long acc
    cdef int i, j, c
    out = []
    try:
        st = _flatten(steps, d)
        r = _flatten(rays, rank)
        z = <long long *> malloc(d * sizeof(long long))
        t = <long long *> malloc(d * sizeof(long long))
        if z == NULL or t == NULL:
            raise MemoryError()
        for i in range(d):
            z[i] = 0
        while True:
            for j in range(d):
                acc = 0
                for i in range(d):
                    acc = (acc + z[i] * st[i * d + j]) % big
                t[j] = acc
            p = []
            for c in range(rank):
                acc = 0
                for j in range(d):
                    acc += t[j] * r[j * rank + c]
                # exact division; acc may be negative
                p.append(acc // big if acc >= 0 else -((-acc) // big))
            out.append((tuple(p), tuple([t[j] for j in range(d)])))
            i = d - 1
            while i >= 0:
                if z[i] < ci[i] - 1:
                    z[i] += 1
                    break
                z[i] = 0
                i -= 1
            if i < 0:
                break
        return out
    finally:
        free(ci)
        free(st)
        free(r)
        free(z)
        free(t)


cdef class Decomposer:
    """C version of ``_kernels_py.Decomposer``; same results.

    Failed ``(i, remainder)`` pairs with more than one choice of coefficient
    are memoized, keyed by their raw bytes; a success is written straight
    into ``coef``.
    """

    cdef int n, k
    cdef long long *gens
    cdef long long *work
    cdef long long *coef
    cdef long long *keybuf
    cdef int *neq
    cdef int *nnorm
    cdef long long **eqs
    cdef long long **norms
    cdef long long **eqw
    cdef long long **normw
    cdef set failed

    def __cinit__(self, gens, tests, int rank):
        cdef int i, j
        self.n = rank
        self.k = len(gens)
        self.gens = NULL
        self.work = NULL
        self.coef = NULL
        self.keybuf = NULL
        self.neq = NULL
        self.nnorm = NULL
        self.eqs = NULL
        self.norms = NULL
        self.eqw = NULL
        self.normw = NULL
        self.failed = set()
        cdef int n = self.n
        cdef int k = self.k
        self.gens = _flatten(gens, n)
        self.work = <long long *> malloc(max((k + 1) * n, 1) * sizeof(long long))
        self.coef = <long long *> malloc(max(k, 1) * sizeof(long long))
        self.keybuf = <long long *> malloc((n + 1) * sizeof(long long))
        self.neq = <int *> malloc((k + 1) * sizeof(int))
        self.nnorm = <int *> malloc((k + 1) * sizeof(int))
        self.eqs = <long long **> malloc((k + 1) * sizeof(long long *))
        self.norms = <long long **> malloc((k + 1) * sizeof(long long *))
        self.eqw = <long long **> malloc((k + 1) * sizeof(long long *))
        self.normw = <long long **> malloc((k + 1) * sizeof(long long *))
        if (self.work == NULL or self.coef == NULL or self.keybuf == NULL or self.neq == NULL
                or self.nnorm == NULL or self.eqs == NULL or self.norms == NULL
                or self.eqw == NULL or self.normw == NULL):
            raise MemoryError()
        for i in range(k + 1):
            self.eqs[i] = NULL
            self.norms[i] = NULL
            self.eqw[i] = NULL
            self.normw[i] = NULL
        for i in range(k + 1):
            eq, nm = tests[i]
            self.neq[i] = len(eq)
            self.nnorm[i] = len(nm)
            self.eqs[i] = _flatten(eq, n)
            self.norms[i] = _flatten(nm, n)
        # eqw[i][j]: row j of test i + 1 on gens[i]
        for i in range(k):
            self.eqw[i] = <long long *> malloc(max(self.neq[i + 1], 1) * sizeof(long long))
            self.normw[i] = <long long *> malloc(max(self.nnorm[i + 1], 1) * sizeof(long long))
            if self.eqw[i] == NULL or self.normw[i] == NULL:
                raise MemoryError()
            for j in range(self.neq[i + 1]):
                self.eqw[i][j] = _dot(self.eqs[i + 1] + j * n, self.gens + i * n, n)
            for j in range(self.nnorm[i + 1]):
                self.normw[i][j] = _dot(self.norms[i + 1] + j * n, self.gens + i * n, n)

    def __dealloc__(self):
        cdef int i
        if self.eqs != NULL:
            for i in range(self.k + 1):
                free(self.eqs[i])
        if self.norms != NULL:
            for i in range(self.k + 1):
                free(self.norms[i])
        if self.eqw != NULL:
            for i in range(self.k + 1):
                free(self.eqw[i])
        if self.normw != NULL:
            for i in range(self.k + 1):
                free(self.normw[i])
        free(self.eqs)
        free(self.norms)
        free(self.eqw)
        free(self.normw)
        free(self.neq)
        free(self.nnorm)
        free(self.gens)
        free(self.work)
        free(self.coef)
        free(self.keybuf)

    cdef bint _inside(self, int i, long long *v) noexcept:
        cdef int j
        cdef int n = self.n
        for j in range(self.neq[i]):
            if _dot(self.eqs[i] + j * n, v, n) != 0:
                return False
        for j in range(self.nnorm[i]):
            if _dot(self.norms[i] + j * n, v, n) < 0:
                return False
        return True

    def decompose(self, v):
        cdef int j
        for j in range(self.n):
            self.work[j] = v[j]
        if not self._inside(0, self.work):
            return None
        if not self._dfs(0, self.work):
            return None
        return tuple([self.coef[j] for j in range(self.k)])

    cdef bytes _key(self, int i, long long *v):
        cdef int j
        for j in range(self.n):
            self.keybuf[j] = v[j]
        self.keybuf[self.n] = i
        return PyBytes_FromStringAndSize(<char *> self.keybuf, (self.n + 1) * sizeof(long long))

    cdef bint _range(self, int i, long long *v, long long *lo, long long *hi) except -1:
        """Interval of ``a >= 0`` with ``v - a gens[i]`` in test ``i + 1``; False if empty."""
        cdef int j
        cdef int n = self.n
        cdef long long val, wv, a
        cdef bint bounded = False
        lo[0] = 0
        hi[0] = 0
        for j in range(self.neq[i + 1]):
            val = _dot(self.eqs[i + 1] + j * n, v, n)
            wv = self.eqw[i][j]
            if wv == 0:
                if val != 0:
                    return False
            else:
                if val % wv != 0:
                    return False
                a = val // wv
                if a > lo[0]:
                    lo[0] = a
                if not bounded or a < hi[0]:
                    hi[0] = a
                bounded = True
        for j in range(self.nnorm[i + 1]):
            val = _dot(self.norms[i + 1] + j * n, v, n)
            wv = self.normw[i][j]
            if wv > 0:
                a = val // wv
                if not bounded or a < hi[0]:
                    hi[0] = a
                bounded = True
            elif wv < 0:
                a = -(val // (-wv))
                if a > lo[0]:
                    lo[0] = a
            elif val < 0:
                return False
        return bounded and lo[0] <= hi[0]

    cdef int _dfs(self, int i, long long *v) except -1:
        cdef int n = self.n
        cdef int j
        cdef long long a, lo, hi
        cdef long long *cur
        cdef long long *w
        cdef bint nonzero = False
        for j in range(n):
            if v[j] != 0:
                nonzero = True
                break
        if not nonzero:
            for j in range(i, self.k):
                self.coef[j] = 0
            return 1
        if i == self.k:
            return 0
        if not self._range(i, v, &lo, &hi):
            return 0
        cur = self.work + (i + 1) * n
        w = self.gens + i * n
        for j in range(n):
            cur[j] = v[j] - lo * w[j]
        if lo == hi:
            # a single choice fails exactly when its child does, which is
            # memoized one level down
            if self._dfs(i + 1, cur):
                self.coef[i] = lo
                return 1
            return 0
        key = self._key(i, v)
        if key in self.failed:
            return 0
        a = lo
        while a <= hi:
            if self._dfs(i + 1, cur):
                self.coef[i] = a
                return 1
            for j in range(n):
                cur[j] -= w[j]
            a += 1
        self.failed.add(key)
        return 0

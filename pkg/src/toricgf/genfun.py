"""Summable exponential series over a lattice.

``GroupRingElement`` is a finite sum ``sum a_m e^m``; ``RationalGenFun`` is
such an element over a product of factors ``1 - e^{m_i}``; ``SPolynomial`` is
a polynomial in variables ``S_w = e^w - 1``.  Cone sums come back as
:class:`CertifiedConeSum`, which carries both the rational value and a
polynomial certificate ``P`` with::

    value = sign * prod(1 / S_w for w in rays) * P(S)
"""

from __future__ import annotations

import sys
from array import array
from collections import Counter
from math import comb
from typing import Iterable, Mapping, Sequence

from . import kernels
from . import lattice as lat
from .cone import (
    Cone,
    GeneratorSet,
    Triangulation,
    cone_inequalities,
    _ParallelepipedData,
    half_open_parallelepiped,
    parallelepiped_points,
    semigroup_generators,
    triangulate,
)
from .errors import CellNotInComplex, NotDecomposable, NotSimplicial, ZeroDenominatorVector
from .lattice import Vector, dot


def _add_into(acc: dict, key, value) -> None:
    v = acc.get(key, 0) + value
    if v:
        acc[key] = v
    else:
        acc.pop(key, None)


def _mul_terms(a: Mapping[Vector, int], b: Mapping[Vector, int]) -> dict[Vector, int]:
    out: dict[Vector, int] = {}
    for ea, ca in a.items():
        for eb, cb in b.items():
            _add_into(out, lat.add(ea, eb), ca * cb)
    return out


# unsigned array typecodes by item width in bits
_WORDS = {8 * array(t).itemsize: t for t in "BHIQ"}


def _word_width(top: int) -> int:
    for width in sorted(_WORDS):
        if top < 1 << width:
            return width
    raise OverflowError(f"exponent {top} is too large")


def _pack(e: Sequence[int], width: int) -> int:
    words = array(_WORDS[width], e)
    if sys.byteorder != "little":
        words.byteswap()
    return int.from_bytes(words.tobytes(), "little")


def _unpack(key: int, width: int, k: int) -> tuple[int, ...]:
    words = array(_WORDS[width])
    words.frombytes(key.to_bytes(k * words.itemsize, "little"))
    if sys.byteorder != "little":
        words.byteswap()
    return tuple(words)


class _Packing:
    """Exponent vectors as biased ints, one machine word per coordinate.

    Coordinates must stay within ``[-reach, reach]``; then adding packed
    vectors adds coordinatewise, so multiplying by ``e^m`` is one addition.
    """

    def __init__(self, n: int, reach: int):
        self.n = n
        self.reach = reach
        self.width = _word_width(2 * reach)
        self.bias = sum(reach << (self.width * i) for i in range(n))

    def step(self, v: Sequence[int]) -> int:
        w = self.width
        return sum(x << (w * i) for i, x in enumerate(v))

    def pack(self, v: Sequence[int]) -> int:
        return self.step(v) + self.bias

    def unpack(self, key: int) -> Vector:
        reach = self.reach
        return tuple([x - reach for x in _unpack(key, self.width, self.n)])


def _reach(terms: Iterable[Vector], factors: Iterable[Vector]) -> int:
    return (max((abs(x) for e in terms for x in e), default=0)
            + sum(max(map(abs, m), default=0) for m in factors))


def _times_one_minus_all(terms: Mapping[Vector, int], vectors: Sequence[Vector]) -> dict[Vector, int]:
    """``terms * prod (1 - e^m)`` over ``vectors``."""
    if not terms or not vectors:
        return dict(terms)
    pk = _Packing(len(next(iter(terms))), _reach(terms, vectors))
    acc = {pk.pack(e): c for e, c in terms.items()}
    for m in vectors:
        step = pk.step(m)
        out = dict(acc)
        get = out.get
        for e, c in acc.items():
            out[e + step] = get(e + step, 0) - c
        acc = out
    return {pk.unpack(e): c for e, c in acc.items() if c}


def _over_common_denominator(parts: list[tuple[frozenset[int], dict]],
                             rays: Sequence[Vector]) -> dict[Vector, int]:
    """``sum_parts terms * prod_{i not in cell} (1 - e^{rays[i]})``.

    Parts are split on whether they use each ray in turn; each branch is
    summed before its common factor is applied, so every factor is multiplied
    in once per branch rather than once per part.  Exponents are packed into
    biased ints so that multiplying by ``e^m`` is one addition.
    """
    if not parts:
        return {}
    n = len(rays[0]) if rays else len(next(iter(parts[0][1]), ()))
    pk = _Packing(n, _reach((e for _, terms in parts for e in terms), rays))
    steps = [pk.step(r) for r in rays]
    packed = [(cell, {pk.pack(e): c for e, c in terms.items()}) for cell, terms in parts]

    def split(group, j):
        if j == len(rays):
            acc: dict[int, int] = {}
            for _, terms in group:
                for e, c in terms.items():
                    acc[e] = acc.get(e, 0) + c
            return acc
        inside = [p for p in group if j in p[0]]
        outside = [p for p in group if j not in p[0]]
        acc = split(inside, j + 1) if inside else {}
        if outside:
            step = steps[j]
            for e, c in split(outside, j + 1).items():
                acc[e] = acc.get(e, 0) + c
                acc[e + step] = acc.get(e + step, 0) - c
        return acc

    return {pk.unpack(key): c for key, c in split(packed, 0).items() if c}


class GroupRingElement:
    """Finite integer combination of formal exponentials ``e^m``."""

    __slots__ = ("terms", "rank")

    def __init__(self, terms: Mapping[Sequence[int], int] | Iterable[tuple[Sequence[int], int]] = (),
                 rank: int | None = None):
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict[Vector, int] = {}
        for e, c in items:
            _add_into(acc, lat.vec(e), int(c))
        if rank is None:
            if not acc:
                raise ValueError("rank is required for the zero element")
            rank = len(next(iter(acc)))
        if any(len(e) != rank for e in acc):
            raise ValueError("exponents of mixed rank")
        self.terms = acc
        self.rank = rank

    @classmethod
    def _trusted(cls, terms: dict[Vector, int], rank: int) -> "GroupRingElement":
        """Wrap ``terms`` (tuple keys, no zero coefficients) without copying."""
        self = object.__new__(cls)
        self.terms = terms
        self.rank = rank
        return self

    @classmethod
    def one(cls, rank: int) -> "GroupRingElement":
        return cls({lat.zero(rank): 1}, rank)

    @classmethod
    def monomial(cls, m: Sequence[int], coeff: int = 1) -> "GroupRingElement":
        return cls({lat.vec(m): coeff}, len(m))

    def __eq__(self, other):
        if isinstance(other, int):
            other = GroupRingElement({lat.zero(self.rank): other}, self.rank)
        return isinstance(other, GroupRingElement) and self.rank == other.rank and self.terms == other.terms

    def __hash__(self):
        return hash((self.rank, frozenset(self.terms.items())))

    def __add__(self, other: "GroupRingElement") -> "GroupRingElement":
        acc = dict(self.terms)
        for e, c in other.terms.items():
            _add_into(acc, e, c)
        return GroupRingElement._trusted(acc, self.rank)

    def __neg__(self):
        return GroupRingElement._trusted({e: -c for e, c in self.terms.items()}, self.rank)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            return GroupRingElement({e: c * other for e, c in self.terms.items()}, self.rank)
        return GroupRingElement(_mul_terms(self.terms, other.terms), self.rank)

    __rmul__ = __mul__

    def times_one_minus(self, vectors: Iterable[Sequence[int]]) -> "GroupRingElement":
        """Multiply by ``prod (1 - e^m)``."""
        vectors = [lat.vec(m) for m in vectors]
        return GroupRingElement._trusted(_times_one_minus_all(self.terms, vectors), self.rank)

    def is_zero(self) -> bool:
        return not self.terms

    def sorted_terms(self, grading: Sequence[int] | None = None) -> list[tuple[Vector, int]]:
        grading = grading or (1,) * self.rank
        return sorted(self.terms.items(), key=lambda t: (dot(grading, t[0]), t[0]))

    def __repr__(self):
        return f"GroupRingElement({dict(self.sorted_terms())})"


class RationalGenFun:
    """``numerator / prod(1 - e^{m_i})`` over a multiset of nonzero ``m_i``."""

    __slots__ = ("numerator", "denominator")

    def __init__(self, numerator: GroupRingElement, denominator: Iterable[Sequence[int]] = ()):
        self.numerator = numerator
        den = tuple(sorted(lat.vec(m) for m in denominator))
        if any(not any(m) for m in den):
            raise ZeroDenominatorVector("denominator factor 1 - e^0 is zero")
        self.denominator = den

    @property
    def rank(self) -> int:
        return self.numerator.rank

    @classmethod
    def one(cls, rank: int) -> "RationalGenFun":
        return cls(GroupRingElement.one(rank))

    @classmethod
    def geometric(cls, m: Sequence[int]) -> "RationalGenFun":
        """``1 / (1 - e^m) = sum_{k>=0} e^{km}``."""
        return cls(GroupRingElement.one(len(m)), [m])

    def _over(self, den: Counter) -> GroupRingElement:
        missing = den - Counter(self.denominator)
        return self.numerator.times_one_minus(missing.elements())

    def __add__(self, other: "RationalGenFun") -> "RationalGenFun":
        den = Counter(self.denominator) | Counter(other.denominator)
        return RationalGenFun(self._over(den) + other._over(den), den.elements())

    def __neg__(self):
        return RationalGenFun(-self.numerator, self.denominator)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            return RationalGenFun(self.numerator * other, self.denominator)
        return RationalGenFun(self.numerator * other.numerator, self.denominator + other.denominator)

    __rmul__ = __mul__

    def __eq__(self, other):
        return isinstance(other, RationalGenFun) and genfun_equal(self, other)

    __hash__ = None

    def __repr__(self):
        return f"RationalGenFun({self.numerator!r}, {list(self.denominator)})"


def sum_genfuns(items: Iterable[RationalGenFun], rank: int) -> RationalGenFun:
    items = list(items)
    if not items:
        return RationalGenFun(GroupRingElement({}, rank))
    den = Counter()
    for g in items:
        den |= Counter(g.denominator)
    acc: dict[Vector, int] = {}
    for g in items:
        for e, c in g._over(den).terms.items():
            _add_into(acc, e, c)
    return RationalGenFun(GroupRingElement._trusted(acc, rank), den.elements())


def genfun_equal(a: RationalGenFun, b: RationalGenFun) -> bool:
    """Equality of sums, by cross-multiplying out the denominators."""
    if a.rank != b.rank:
        return False
    ca, cb = Counter(a.denominator), Counter(b.denominator)
    common = ca & cb
    lhs = a.numerator.times_one_minus((cb - common).elements())
    rhs = b.numerator.times_one_minus((ca - common).elements())
    return lhs == rhs


class SPolynomial:
    """Integer polynomial in ``S_w = e^w - 1``, one variable per vector ``w``."""

    __slots__ = ("variables", "terms")

    def __init__(self, variables: Sequence[Sequence[int]], terms: Mapping[Sequence[int], int] = ()):
        self.variables = tuple(lat.vec(w) for w in variables)
        acc: dict[tuple[int, ...], int] = {}
        items = terms.items() if isinstance(terms, Mapping) else terms
        for e, c in items:
            e = tuple(e)
            if len(e) != len(self.variables):
                raise ValueError("exponent length does not match the variables")
            _add_into(acc, e, int(c))
        self.terms = acc

    @classmethod
    def constant(cls, variables, c: int = 1) -> "SPolynomial":
        return cls(variables, {(0,) * len(variables): c})

    def __eq__(self, other):
        return isinstance(other, SPolynomial) and self.variables == other.variables and self.terms == other.terms

    def __hash__(self):
        return hash((self.variables, frozenset(self.terms.items())))

    def __add__(self, other: "SPolynomial") -> "SPolynomial":
        if other.variables != self.variables:
            raise ValueError("polynomials over different variables")
        acc = dict(self.terms)
        for e, c in other.terms.items():
            _add_into(acc, e, c)
        return SPolynomial(self.variables, acc)

    def __mul__(self, other):
        if isinstance(other, int):
            return SPolynomial(self.variables, {e: c * other for e, c in self.terms.items()})
        if other.variables != self.variables:
            raise ValueError("polynomials over different variables")
        acc: dict = {}
        for ea, ca in self.terms.items():
            for eb, cb in other.terms.items():
                _add_into(acc, tuple(x + y for x, y in zip(ea, eb)), ca * cb)
        return SPolynomial(self.variables, acc)

    @property
    def rank(self) -> int:
        return len(self.variables[0]) if self.variables else 0

    def sorted_terms(self) -> list[tuple[tuple[int, ...], int]]:
        return sorted(self.terms.items(), key=lambda t: (sum(t[0]), tuple(-x for x in t[0])))

    def negative_terms(self) -> list[tuple[tuple[int, ...], int]]:
        return [t for t in self.sorted_terms() if t[1] < 0]

    def is_nonnegative(self) -> bool:
        return all(c > 0 for c in self.terms.values())

    def with_variables(self, variables: Sequence[Sequence[int]]) -> "SPolynomial":
        """Rewrite over a larger variable list containing every current variable."""
        variables = tuple(lat.vec(w) for w in variables)
        pos = [variables.index(w) for w in self.variables]
        acc = {}
        for e, c in self.terms.items():
            new = [0] * len(variables)
            for p, x in zip(pos, e):
                new[p] += x
            _add_into(acc, tuple(new), c)
        return SPolynomial(variables, acc)

    def map_variables(self, fn) -> "SPolynomial":
        return SPolynomial([fn(w) for w in self.variables], self.terms)

    def substitute(self, rank: int | None = None) -> GroupRingElement:
        """Expand ``S_w -> e^w - 1`` and multiply out in ``Z[M]``."""
        rank = self.rank if rank is None else rank
        return GroupRingElement(_substitute(self, rank, None, None), rank)

    def substitute_truncated(self, grading: Sequence[int], bound: int) -> dict[Vector, int]:
        """Terms of the substitution with ``<grading, m> <= bound``.

        Valid whenever the grading is nonnegative on every variable, since then
        no product can come back below the bound once it has left it.
        """
        if any(dot(grading, w) < 0 for w in self.variables):
            raise ValueError("grading is negative on a variable")
        return _substitute(self, self.rank, grading, bound)

    def __repr__(self):
        return f"SPolynomial({len(self.variables)} vars, {dict(self.sorted_terms())})"


def _substitute(p: SPolynomial, rank: int, grading, bound) -> dict[Vector, int]:
    zero = lat.zero(rank)
    powers: dict[tuple[int, int], dict[Vector, int]] = {}

    def power(i: int, a: int) -> dict[Vector, int]:
        key = (i, a)
        if key not in powers:
            w = p.variables[i]
            out = {}
            for j in range(a + 1):
                e = lat.scale(j, w)
                if grading is not None and dot(grading, e) > bound:
                    break
                _add_into(out, e, comb(a, j) * (-1) ** (a - j))
            powers[key] = out
        return powers[key]

    acc: dict[Vector, int] = {}
    for e, c in p.terms.items():
        part = {zero: c}
        for i, a in enumerate(e):
            if a:
                nxt: dict[Vector, int] = {}
                for ea, ca in part.items():
                    for eb, cb in power(i, a).items():
                        m = lat.add(ea, eb)
                        if grading is not None and dot(grading, m) > bound:
                            continue
                        _add_into(nxt, m, ca * cb)
                part = nxt
        for m, cm in part.items():
            _add_into(acc, m, cm)
    return acc


def substitute_certificate(p: SPolynomial) -> GroupRingElement:
    return p.substitute()


class CertifiedConeSum:
    """Sum of ``e^t`` over a cone (closed) or its relative interior."""

    def __init__(self, cone: Cone, kind: str, sign: int, ray_denominator: Sequence[Vector],
                 certificate: SPolynomial, value: RationalGenFun):
        if kind not in ("closed", "interior"):
            raise ValueError(f"unknown kind {kind!r}")
        self.cone = cone
        self.kind = kind
        self.sign = sign
        self.ray_denominator = tuple(ray_denominator)
        self.certificate = certificate
        self.value = value

    def certificate_value(self) -> RationalGenFun:
        """The certificate form rewritten as a ``RationalGenFun``.

        ``1/S_w = -1/(1 - e^w)``, hence the extra ``(-1)^k``.
        """
        k = len(self.ray_denominator)
        num = self.certificate.substitute(self.cone.rank) * (self.sign * (-1) ** k)
        return RationalGenFun(num, self.ray_denominator)

    def verify(self) -> bool:
        return self.certificate.is_nonnegative() and genfun_equal(self.value, self.certificate_value())

    def __repr__(self):
        return (f"CertifiedConeSum({self.kind}, cone={self.cone!r}, sign={self.sign}, "
                f"terms={len(self.certificate.terms)})")


def grading_functional(c: Cone) -> Vector:
    return c.grading


def decompose_in_generators(u: Sequence[int], gens: GeneratorSet) -> tuple[int, ...]:
    """Lexicographically smallest ``c >= 0`` with ``u = sum c_i w_i``."""
    u = lat.vec(u)
    if not gens.cone.contains(u):
        raise NotDecomposable(f"{u} is not in the cone of the generators")
    res = _decompose(gens, u)
    if res is None:
        raise NotDecomposable(f"{u} is not a nonnegative combination of {list(gens.generators)}")
    return res


def _suffix_tests(gens: GeneratorSet) -> list:
    """For each ``i``: ``(equations, normals)`` of the cone spanned by ``generators[i:]``.

    A remainder can only be written in ``generators[i:]`` if it lies in that
    cone, which prunes most dead branches of the search.
    """
    tests = getattr(gens, "_suffix", None)
    if tests is None:
        n = gens.cone.rank
        k = len(gens.generators)
        tests = [None] * (k + 1)
        tests[k] = ([lat.vec(e) for e in lat.identity(n)], [])
        for i in range(k - 1, -1, -1):
            w = gens.generators[i]
            eqs, normals = tests[i + 1]
            if i < k - 1 and not any(dot(e, w) for e in eqs) and all(dot(f, w) >= 0 for f in normals):
                # w already lies in the cone of the later generators
                tests[i] = tests[i + 1]
                continue
            tests[i] = cone_inequalities(gens.generators[i:], n)
        gens._suffix = tests
    return tests


def _decompose(gens: GeneratorSet, v: Vector):
    engine = getattr(gens, "_engine", None)
    if engine is None:
        engine = kernels.make_decomposer(gens.generators, _suffix_tests(gens), gens.cone.rank, gens.cone.grading)
        gens._engine = engine
    return engine.decompose(v)


def _binomial_shift(terms: Mapping[int, int], used: Iterable[int], width: int) -> dict[int, int]:
    """Rewrite ``sum m_c x^c`` with ``x_i = 1 + S_i``, one variable at a time.

    Exponent vectors are packed into ints, ``width`` bits per variable, so
    that lowering one exponent is a subtraction.
    """
    mask = (1 << width) - 1
    for i in used:
        sh = width * i
        out: dict[int, int] = {}
        get = out.get
        for key, c in terms.items():
            top = (key >> sh) & mask
            if top == 0:
                out[key] = get(key, 0) + c
                continue
            base = key - (top << sh)
            for j in range(top + 1):
                k2 = base + (j << sh)
                out[k2] = get(k2, 0) + c * comb(top, j)
        terms = out
    return terms


class _CertificateBuilder:
    def __init__(self, gens: GeneratorSet):
        self.gens = gens
        # S-factor -> {generator exponent vector c: multiplicity}; each point u
        # contributes prod S^{s_factor} * e^u and e^u = prod (1 + S_i)^{c_i}
        self.raw: dict[tuple[int, ...], Counter] = {}
        self._seen: dict[Vector, tuple[int, ...]] = {}

    def add_points(self, points: Iterable[Vector], s_factor: Sequence[int]) -> None:
        # points come from parallelepipeds inside the cone, so the membership
        # check of decompose_in_generators is skipped
        bucket = self.raw.setdefault(tuple(s_factor), Counter())
        seen = self._seen
        for u in points:
            c = seen.get(u)
            if c is None:
                c = _decompose(self.gens, u)
                if c is None:
                    raise NotDecomposable(f"{u} is not a nonnegative combination of {list(self.gens.generators)}")
                seen[u] = c
            bucket[c] += 1

    def polynomial(self) -> SPolynomial:
        k = len(self.gens.generators)
        top = max((x for bucket in self.raw.values() for e in bucket for x in e), default=0)
        top += max((x for s in self.raw for x in s), default=0)
        width = _word_width(top)
        acc: dict[int, int] = {}
        for s_factor, bucket in sorted(self.raw.items()):
            used = sorted({i for e in bucket for i, x in enumerate(e) if x})
            shift = _pack(s_factor, width)
            packed = _binomial_shift({_pack(e, width): m for e, m in bucket.items()}, used, width)
            for key, coeff in packed.items():
                key += shift
                acc[key] = acc.get(key, 0) + coeff
        terms = {_unpack(key, width, k): c for key, c in acc.items() if c}
        return SPolynomial(self.gens.generators, terms)


def _ray_positions(gens: GeneratorSet, rays: Iterable[Vector]) -> list[int]:
    return [gens.generators.index(r) for r in rays]


def _s_factor(gens: GeneratorSet, rays: Iterable[Vector]) -> tuple[int, ...]:
    e = [0] * len(gens.generators)
    for p in _ray_positions(gens, rays):
        e[p] += 1
    return tuple(e)


def geometric_sum_simplicial(c: Cone, gens: GeneratorSet | None = None) -> CertifiedConeSum:
    """Closed sum of a simplicial cone: parallelepiped points over the ray factors."""
    if not c.is_simplicial:
        raise NotSimplicial(f"{c} is not simplicial")
    gens = gens if gens is not None else semigroup_generators(c)
    pts = parallelepiped_points(c)
    builder = _CertificateBuilder(gens)
    builder.add_points(pts, (0,) * len(gens.generators))
    num = GroupRingElement({p: 1 for p in pts}, c.rank)
    return CertifiedConeSum(c, "closed", (-1) ** c.dim, c.rays, builder.polynomial(),
                            RationalGenFun(num, c.rays))


def _trivial_sum(c: Cone, kind: str, gens: GeneratorSet | None) -> CertifiedConeSum:
    variables = gens.generators if gens is not None else ()
    return CertifiedConeSum(c, kind, 1, (), SPolynomial.constant(variables),
                            RationalGenFun.one(c.rank))


def _cell_points(c: Cone, tri: Triangulation):
    """``(cell, parallelepiped points)`` for every cell of ``tri``."""
    boxes = {}
    for m in tri.maximal_cells:
        # each point with the bitmask of host rays it uses
        data = _ParallelepipedData(tri.cell_rays(m), c.rank)
        boxes[m] = [(p, sum(1 << j for j, x in enumerate(t) if x)) for p, t in data.points]
    for cell in tri.all_cells:
        # a face's parallelepiped is the slice of its host's with zero
        # coefficients on the host rays it does not use
        host = next(m for m in tri.maximal_cells if cell <= m)
        off = sum(1 << pos for pos, i in enumerate(sorted(host)) if i not in cell)
        yield cell, [p for p, used in boxes[host] if not used & off]


def _interior_value(c: Cone, cells) -> RationalGenFun:
    n = c.dim
    parts = [(cell, {p: (-1) ** (n - len(cell)) for p in pts}) for cell, pts in cells]
    num = _over_common_denominator(parts, c.rays)
    return RationalGenFun(GroupRingElement._trusted(num, c.rank), c.rays)


def interior_value(c: Cone, order: Sequence[int] | None = None) -> RationalGenFun:
    """Value of :func:`interior_sum` without building the certificate."""
    if c.dim == 0:
        return RationalGenFun.one(c.rank)
    return _interior_value(c, _cell_points(c, triangulate(c, order)))


def interior_sum(c: Cone, gens: GeneratorSet | None = None,
                 order: Sequence[int] | None = None) -> CertifiedConeSum:
    """Sum over the relative interior via the alternating sum over cells.

    Every cell of the triangulation (all dimensions, down to the trivial
    cone) contributes ``(-1)^(n - dim) * closed sum``; over the common
    denominator the signs cancel and each cell adds a nonnegative polynomial.
    """
    if c.dim == 0:
        return _trivial_sum(c, "interior", gens)
    gens = gens if gens is not None else semigroup_generators(c, order)
    cells = list(_cell_points(c, triangulate(c, order)))
    builder = _CertificateBuilder(gens)
    for cell, pts in cells:
        missing = [r for i, r in enumerate(c.rays) if i not in cell]
        builder.add_points(pts, _s_factor(gens, missing))
    value = _interior_value(c, cells)
    return CertifiedConeSum(c, "interior", (-1) ** c.dim, c.rays, builder.polynomial(), value)


def _lex_sign(eta: Vector, q0: Vector) -> int:
    """Sign of ``<eta, q0 + eps e_1 + eps^2 e_2 + ...>`` for tiny ``eps``."""
    for x in (dot(eta, q0),) + tuple(eta):
        if x:
            return 1 if x > 0 else -1
    raise ValueError("zero normal")


def _half_open_cells(c: Cone, tri: Triangulation):
    """Maximal cells with the facets that a generic interior point sees from outside."""
    local = c._local_rays
    k = c.dim
    q0 = tuple(sum(col) for col in zip(*local))
    for cell in tri.maximal_cells:
        idx = sorted(cell)
        mask = []
        for j in idx:
            others = [local[t] for t in idx if t != j]
            eta = lat.integer_kernel(others, k)[0]
            if dot(eta, local[j]) < 0:
                eta = lat.scale(-1, eta)
            mask.append(_lex_sign(eta, q0) < 0)
        yield idx, mask


def closed_sum(c: Cone, gens: GeneratorSet | None = None,
               order: Sequence[int] | None = None) -> CertifiedConeSum:
    """Sum over the closed cone.

    The value is the sum of interior sums over all faces.  For a non-simplicial
    cone the certificate comes from a half-open decomposition of a
    triangulation, which keeps every coefficient nonnegative; the two routes
    agree as rational functions.
    """
    if c.dim == 0:
        return _trivial_sum(c, "closed", gens)
    if c.is_simplicial:
        return geometric_sum_simplicial(c, gens)
    gens = gens if gens is not None else semigroup_generators(c, order)
    parts = [interior_value(c.subcone(s)) for s in c.face_sets]
    value = sum_genfuns(parts, c.rank)
    tri = triangulate(c, order)
    builder = _CertificateBuilder(gens)
    for idx, mask in _half_open_cells(c, tri):
        rays = [c.rays[i] for i in idx]
        missing = [r for i, r in enumerate(c.rays) if i not in idx]
        builder.add_points(half_open_parallelepiped(rays, c.rank, mask), _s_factor(gens, missing))
    return CertifiedConeSum(c, "closed", (-1) ** c.dim, c.rays, builder.polynomial(), value)


def face_sum(c: Cone) -> RationalGenFun:
    """Sum of interior sums over all faces (equals the closed sum)."""
    return sum_genfuns((interior_value(c.subcone(s)) for s in c.face_sets), c.rank)


def euler_multiplicity(tri: Triangulation, kappa: Iterable[int] | Cone) -> int:
    """``sum (-1)^(n - dim tau)`` over cells ``tau`` containing ``kappa``."""
    if isinstance(kappa, Cone):
        kappa = tri.base.ray_set(kappa)
    kappa = frozenset(kappa)
    if kappa not in set(tri.all_cells):
        raise CellNotInComplex(f"{sorted(kappa)} is not a cell of {tri}")
    n = tri.base.dim
    return sum((-1) ** (n - len(tau)) for tau in tri.all_cells if kappa <= tau)

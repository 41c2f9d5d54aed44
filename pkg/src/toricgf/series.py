"""Truncated multivariate power series with exact rational coefficients.

A series is a list of homogeneous components: ``comps[d]`` maps exponent
tuples of total degree ``d`` to ``Fraction`` coefficients.
"""

from __future__ import annotations

from fractions import Fraction
from math import factorial
from typing import Sequence

Series = list  # list[dict[tuple[int, ...], Fraction]]


def zero(order: int) -> Series:
    return [{} for _ in range(order + 1)]


def constant(c, nvars: int, order: int) -> Series:
    s = zero(order)
    if c:
        s[0][(0,) * nvars] = Fraction(c)
    return s


def _acc(d: dict, k, v) -> None:
    v = d.get(k, 0) + v
    if v:
        d[k] = v
    else:
        d.pop(k, None)


def add(a: Series, b: Series) -> Series:
    out = [dict(x) for x in a]
    for d, comp in enumerate(b):
        for k, v in comp.items():
            _acc(out[d], k, v)
    return out


def scale(c, a: Series) -> Series:
    c = Fraction(c)
    return [{k: v * c for k, v in comp.items()} if c else {} for comp in a]


def mul(a: Series, b: Series) -> Series:
    order = min(len(a), len(b)) - 1
    out = zero(order)
    for da in range(order + 1):
        for ka, va in a[da].items():
            for db in range(order + 1 - da):
                for kb, vb in b[db].items():
                    _acc(out[da + db], tuple(x + y for x, y in zip(ka, kb)), va * vb)
    return out


def inverse(a: Series) -> Series:
    """Multiplicative inverse; the constant term must be nonzero."""
    order = len(a) - 1
    if not a[0]:
        raise ZeroDivisionError("series has no constant term")
    (k0, a0), = a[0].items()
    out = zero(order)
    out[0][k0] = 1 / Fraction(a0)
    for d in range(1, order + 1):
        acc: dict = {}
        for k in range(1, d + 1):
            for ka, va in a[k].items():
                for kb, vb in out[d - k].items():
                    _acc(acc, tuple(x + y for x, y in zip(ka, kb)), va * vb)
        out[d] = {key: -v / a0 for key, v in acc.items()}
    return out


def linear_form(m: Sequence[int], order: int) -> Series:
    """The degree-one series ``sum m_i x_i``."""
    n = len(m)
    s = zero(order)
    if order >= 1:
        for i, c in enumerate(m):
            if c:
                s[1][tuple(int(j == i) for j in range(n))] = Fraction(c)
    return s


def compose_univariate(coeffs: Sequence, m: Sequence[int], order: int) -> Series:
    """``sum_j coeffs[j] * (m . x)^j`` truncated at ``order``."""
    n = len(m)
    lin = linear_form(m, order)
    power = constant(1, n, order)
    out = zero(order)
    for j in range(order + 1):
        if j < len(coeffs) and coeffs[j]:
            out = add(out, scale(coeffs[j], power))
        power = mul(power, lin)
    return out


def exp_linear(m: Sequence[int], order: int) -> Series:
    """``e^{m . x} = sum_j (m . x)^j / j!``."""
    return compose_univariate([Fraction(1, factorial(j)) for j in range(order + 1)], m, order)


def truncate(a: Series, order: int) -> Series:
    return [dict(c) for c in a[:order + 1]]


def as_dict(a: Series) -> dict[tuple[int, ...], Fraction]:
    out = {}
    for comp in a:
        out.update(comp)
    return out

"""Local equivariant Hirzebruch classes of affine toric varieties and χ_y-genera.

For a full-dimensional cone ``sigma`` in ``N`` the class at the fixed point is

    sum over faces tau of sigma:  (1+y)^{codim tau} * sum_{m in Int(sigma^∨ ∩ tau^⊥)} e^m

and with ``δ = -1 - y`` every term is ``δ^{codim} * prod 1/S * P`` with ``P``
nonnegative.  The orbit class ``[Ω_σ]`` is carried as a label only.
"""

from __future__ import annotations

from fractions import Fraction
from math import comb, factorial
from typing import Sequence

from . import series as ps
from .cone import Cone, Fan, dual_cone, dual_face, semigroup_generators
from .errors import FanNotFaceClosed, NotFullDimensional, ZeroDenominatorVector
from .genfun import (
    CertifiedConeSum,
    RationalGenFun,
    SPolynomial,
    _s_factor,
    interior_sum,
    sum_genfuns,
)


class HirzebruchLocalClass:
    """Per-face terms ``(delta_power, interior sum over the dual face)``."""

    orbit_marker = "[Omega_sigma]"

    def __init__(self, sigma: Cone, dual: Cone, terms: dict[frozenset[int], tuple[int, CertifiedConeSum]]):
        self.sigma = sigma
        self.dual = dual
        self.terms = terms

    def faces(self) -> list[frozenset[int]]:
        return sorted(self.terms, key=lambda s: (-self.terms[s][0], sorted(s)))

    def collapsed(self) -> tuple[tuple, dict[int, SPolynomial]]:
        """Everything over ``prod 1/S`` of the dual rays.

        Returns ``(dual rays, {delta_power: numerator})``; the class equals
        ``sum_c δ^c * prod 1/S * numerator[c]``.
        """
        gens = semigroup_generators(self.dual)
        out: dict[int, SPolynomial] = {}
        for face in self.faces():
            c, cs = self.terms[face]
            p = cs.certificate.with_variables(gens.generators)
            missing = [r for r in self.dual.rays if r not in cs.ray_denominator]
            s = SPolynomial(gens.generators, {_s_factor(gens, missing): 1})
            out[c] = out[c] + p * s if c in out else p * s
        return self.dual.rays, out

    def __repr__(self):
        return f"HirzebruchLocalClass(sigma={self.sigma!r}, faces={len(self.terms)})"


def local_class(sigma: Cone) -> HirzebruchLocalClass:
    if not sigma.is_full_dimensional:
        raise NotFullDimensional(f"{sigma} is not full dimensional")
    dual = dual_cone(sigma)
    terms = {}
    for face in sigma.face_sets:
        dface = dual_face(sigma, face)
        codim = sigma.rank - sigma._dim_of(face)
        assert dface.dim == codim
        terms[face] = (codim, interior_sum(dface, semigroup_generators(dface)))
    return HirzebruchLocalClass(sigma, dual, terms)


def open_orbit_class(sigma: Cone) -> tuple[int, CertifiedConeSum]:
    """The ``tau = {0}`` term: ``δ^d prod 1/S P`` over the whole dual cone."""
    if not sigma.is_full_dimensional:
        raise NotFullDimensional(f"{sigma} is not full dimensional")
    return sigma.rank, interior_sum(dual_cone(sigma))


def todd_specialize(h: HirzebruchLocalClass) -> RationalGenFun:
    """Set ``y = 0``: the plain sum of all face contributions."""
    return sum_genfuns((cs.value for _, cs in h.terms.values()), h.sigma.rank)


class ChiYPolynomial:
    """Integer polynomial in ``y``; ``coefficients[j]`` multiplies ``y^j``."""

    def __init__(self, coefficients: Sequence[int]):
        coeffs = list(coefficients)
        while coeffs and coeffs[-1] == 0:
            coeffs.pop()
        self.coefficients = tuple(coeffs)

    def __call__(self, y):
        return sum(c * y ** j for j, c in enumerate(self.coefficients))

    def __eq__(self, other):
        return isinstance(other, ChiYPolynomial) and self.coefficients == other.coefficients

    def __hash__(self):
        return hash(self.coefficients)

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    def text(self) -> str:
        return format_y_polynomial(self.coefficients)

    def __repr__(self):
        return f"ChiYPolynomial({self.text()!r})"


def format_y_polynomial(coeffs: Sequence[int], var: str = "y") -> str:
    parts = []
    for j, c in enumerate(coeffs):
        if not c:
            continue
        mag = abs(c)
        if j == 0:
            body = str(mag)
        else:
            mono = var if j == 1 else f"{var}^{j}"
            body = mono if mag == 1 else f"{mag}*{mono}"
        if not parts:
            parts.append(body if c > 0 else f"-{body}")
        else:
            parts.append(("+ " if c > 0 else "- ") + body)
    return " ".join(parts) if parts else "0"


def chi_y(fan: Fan) -> ChiYPolynomial:
    """``sum over cones of (-1 - y)^{codim}``."""
    missing = fan.missing_faces()
    if missing:
        raise FanNotFaceClosed(f"fan is missing faces {[sorted(m) for m in missing]}")
    coeffs = [0] * (fan.rank + 1)
    for d in fan.dims():
        c = fan.rank - d
        for j in range(c + 1):
            coeffs[j] += (-1) ** c * comb(c, j)
    return ChiYPolynomial(coeffs)


class LaurentExpansion:
    """``series / prod (m_i . x)`` with ``series`` exact through ``truncation_order``."""

    def __init__(self, pole_factors, series: dict[tuple[int, ...], Fraction], truncation_order: int, rank: int):
        self.pole_factors = tuple(tuple(m) for m in pole_factors)
        self.series = series
        self.truncation_order = truncation_order
        self.rank = rank

    def coefficient(self, exps: Sequence[int]) -> Fraction:
        return self.series.get(tuple(exps), Fraction(0))

    def laurent_terms(self) -> dict[int, Fraction]:
        """Rank-one view: power of ``x`` -> coefficient, poles divided out."""
        if self.rank != 1:
            raise ValueError("laurent_terms is only defined in rank one")
        scale = Fraction(1)
        for (a,) in self.pole_factors:
            scale *= a
        p = len(self.pole_factors)
        return {e[0] - p: c / scale for e, c in sorted(self.series.items())}

    def __repr__(self):
        return (f"LaurentExpansion(poles={list(self.pole_factors)}, "
                f"order={self.truncation_order}, terms={len(self.series)})")


def laurent_expand(g: RationalGenFun, order: int) -> LaurentExpansion:
    """Cohomological expansion ``e^m -> sum m^j / j!``.

    Each ``1/(1 - e^m)`` is split as ``(1/m) * 1/((1 - e^m)/m)`` and the unit
    series in the second factor is inverted by truncated division.  The series
    is kept through degree ``order + max(2, len(poles))`` so that every Laurent
    term of degree ``<= order`` is exact.
    """
    if order < 0:
        raise ValueError("order must be nonnegative")
    for m in g.denominator:
        if not any(m):
            raise ZeroDenominatorVector("zero vector in denominator")
    n = g.rank
    top = order + max(2, len(g.denominator))
    num = ps.zero(top)
    for e, c in g.numerator.terms.items():
        num = ps.add(num, ps.scale(c, ps.exp_linear(e, top)))
    for m in g.denominator:
        # (1 - e^m) / m = -(1 + m/2 + m^2/6 + ...)
        unit = ps.compose_univariate([Fraction(-1, factorial(j + 1)) for j in range(top + 1)], m, top)
        num = ps.mul(num, ps.inverse(unit))
    return LaurentExpansion(g.denominator, ps.as_dict(num), top, n)


def laurent_expand_class(h: HirzebruchLocalClass, order: int) -> dict[int, LaurentExpansion]:
    """Expansion of the coefficient of each power of ``(1 + y)``."""
    by_power: dict[int, list[RationalGenFun]] = {}
    for c, cs in h.terms.values():
        by_power.setdefault(c, []).append(cs.value)
    return {c: laurent_expand(sum_genfuns(v, h.sigma.rank), order) for c, v in sorted(by_power.items())}

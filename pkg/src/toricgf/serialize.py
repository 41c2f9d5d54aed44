"""Text and JSON forms of the library's objects, plus input document parsing.

JSON output re-parses to equal values; text output is for people.  S
variables are named by their lattice vectors, e.g. ``S[1,2]``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Sequence

from .cone import Cone, Fan, FaceLattice, GeneratorSet, Triangulation
from .errors import InputError
from .genfun import CertifiedConeSum, GroupRingElement, RationalGenFun, SPolynomial
from .hirzebruch import ChiYPolynomial, HirzebruchLocalClass, LaurentExpansion


@dataclass
class ConeDocument:
    rank: int
    rays: list[tuple[int, ...]]
    fan: list[list[int]] | None = None
    generators: list[tuple[int, ...]] | None = None

    def cone(self) -> Cone:
        return Cone(self.rays, self.rank)

    def to_json(self) -> dict:
        out: dict[str, Any] = {"rank": self.rank, "rays": [list(r) for r in self.rays]}
        if self.fan is not None:
            out["fan"] = [list(c) for c in self.fan]
        if self.generators is not None:
            out["generators"] = [list(g) for g in self.generators]
        return out


def _int_vector(x, rank: int, what: str) -> tuple[int, ...]:
    if not isinstance(x, list) or not all(isinstance(v, int) and not isinstance(v, bool) for v in x):
        raise InputError(f"{what} must be an array of integers, got {json.dumps(x)}")
    if len(x) != rank:
        raise InputError(f"{what} has length {len(x)}, expected rank {rank}")
    return tuple(x)


def load_json(text: str) -> Any:
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"invalid JSON: {exc.msg}", exc.lineno, exc.colno) from None


def parse_document(data: Any) -> ConeDocument:
    if not isinstance(data, dict):
        raise InputError("document must be a JSON object")
    rank = data.get("rank")
    if not isinstance(rank, int) or isinstance(rank, bool) or rank < 0:
        raise InputError("field 'rank' must be a nonnegative integer")
    rays_raw = data.get("rays", [])
    if not isinstance(rays_raw, list):
        raise InputError("field 'rays' must be an array")
    rays = [_int_vector(r, rank, f"rays[{i}]") for i, r in enumerate(rays_raw)]
    for i, r in enumerate(rays):
        if not any(r):
            raise InputError(f"rays[{i}] is the zero vector")
    fan = None
    if "fan" in data:
        if not isinstance(data["fan"], list):
            raise InputError("field 'fan' must be an array of ray-index arrays")
        fan = []
        for i, c in enumerate(data["fan"]):
            if not isinstance(c, list) or not all(isinstance(j, int) and not isinstance(j, bool) for j in c):
                raise InputError(f"fan[{i}] must be an array of ray indices")
            bad = [j for j in c if j < 0 or j >= len(rays)]
            if bad:
                raise InputError(f"fan[{i}] refers to ray index {bad[0]}, but there are {len(rays)} rays")
            fan.append(list(c))
    gens = None
    if "generators" in data:
        if not isinstance(data["generators"], list):
            raise InputError("field 'generators' must be an array")
        gens = [_int_vector(g, rank, f"generators[{i}]") for i, g in enumerate(data["generators"])]
    if not rays and fan:
        raise InputError("a fan needs rays")
    return ConeDocument(rank, rays, fan, gens)


def read_document(text: str) -> ConeDocument:
    return parse_document(load_json(text))


# text rendering

def vector_text(v: Sequence[int]) -> str:
    return "(" + ",".join(str(x) for x in v) + ")"


def s_name(w: Sequence[int]) -> str:
    return "S[" + ",".join(str(x) for x in w) + "]"


def _monomial(names: Sequence[str], exps: Sequence[int]) -> str:
    parts = [n if e == 1 else f"{n}^{e}" for n, e in zip(names, exps) if e]
    return "*".join(parts)


def _signed_join(items: list[tuple[int, str]]) -> str:
    out = []
    for c, mono in items:
        mag = abs(c)
        body = mono if mono and mag == 1 else (f"{mag}*{mono}" if mono else str(mag))
        if not out:
            out.append(body if c > 0 else f"-{body}")
        else:
            out.append(("+ " if c > 0 else "- ") + body)
    return " ".join(out) if out else "0"


def spolynomial_text(p: SPolynomial) -> str:
    names = [s_name(w) for w in p.variables]
    return _signed_join([(c, _monomial(names, e)) for e, c in p.sorted_terms()])


def _den_text(rays) -> str:
    if not rays:
        return ""
    return "1/(" + "*".join(s_name(w) for w in rays) + ") * "


def certified_text(cs: CertifiedConeSum) -> str:
    k = cs.cone.dim
    sign = "" if cs.sign == 1 and k == 0 else f"(-1)^{k} * "
    if cs.sign != (-1) ** k:
        sign = "-" + sign
    return f"{sign}{_den_text(cs.ray_denominator)}({spolynomial_text(cs.certificate)})"


def group_ring_text(g: GroupRingElement) -> str:
    items = []
    for e, c in g.sorted_terms():
        mono = "" if not any(e) else "e^" + vector_text(e)
        items.append((c, mono))
    return _signed_join(items)


def genfun_text(g: RationalGenFun) -> str:
    den = "".join(f"(1 - e^{vector_text(m)})" for m in g.denominator)
    num = group_ring_text(g.numerator)
    return f"({num}) / ({den})" if den else num


def fraction_text(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def laurent_text(e: LaurentExpansion) -> str:
    if e.rank == 1:
        items = [(c, "" if p == 0 else ("t" if p == 1 else f"t^{p}"))
                 for p, c in sorted(e.laurent_terms().items()) if c]
        return _signed_join(items) + f" + O(t^{e.truncation_order - len(e.pole_factors) + 1})"
    names = [f"x{i + 1}" for i in range(e.rank)]
    poles = "".join("(" + _signed_join([(a, n) for a, n in zip(m, names) if a]) + ")" for m in e.pole_factors)
    terms = sorted(e.series.items(), key=lambda t: (sum(t[0]), tuple(-x for x in t[0])))
    body = _signed_join([(c, _monomial(names, exps)) for exps, c in terms])
    return (f"1/({poles}) * " if poles else "") + f"({body}) + O(deg {e.truncation_order + 1})"


def delta_text(c: int) -> str:
    return "" if c == 0 else ("(-1-y) * " if c == 1 else f"(-1-y)^{c} * ")


def open_orbit_text(power: int, cs: CertifiedConeSum) -> str:
    """``(1+y)^d`` times the interior sum; its ``(-1)^d`` turns ``(1+y)^d`` into ``δ^d``."""
    lead = "-" if cs.sign != (-1) ** cs.cone.dim else ""
    return f"{lead}{delta_text(power)}{_den_text(cs.ray_denominator)}({spolynomial_text(cs.certificate)})"


def local_class_text(h: HirzebruchLocalClass) -> str:
    rays, by_power = h.collapsed()
    lines = [f"local class at {h.orbit_marker}, sigma rays {[list(r) for r in h.sigma.rays]}"]
    for c in sorted(by_power, reverse=True):
        lines.append(f"  {delta_text(c)}{_den_text(rays)}({spolynomial_text(by_power[c])})")
    return "\n".join(lines)


# JSON records

def _frac_json(q: Fraction):
    return q.numerator if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def _frac_parse(x) -> Fraction:
    return Fraction(x)


def group_ring_json(g: GroupRingElement) -> list:
    return [{"exponent": list(e), "coefficient": c} for e, c in g.sorted_terms()]


def genfun_json(g: RationalGenFun) -> dict:
    return {"type": "genfun", "rank": g.rank, "numerator": group_ring_json(g.numerator),
            "denominator": [list(m) for m in g.denominator]}


def spolynomial_json(p: SPolynomial) -> dict:
    return {"variables": [list(w) for w in p.variables],
            "terms": [{"exponent": list(e), "coefficient": c} for e, c in p.sorted_terms()]}


def certified_json(cs: CertifiedConeSum) -> dict:
    return {"type": "cone-sum", "kind": cs.kind, "rank": cs.cone.rank,
            "cone": [list(r) for r in cs.cone.rays], "sign": cs.sign,
            "denominator": [list(w) for w in cs.ray_denominator],
            "certificate": spolynomial_json(cs.certificate), "value": genfun_json(cs.value),
            "text": certified_text(cs)}


def laurent_json(e: LaurentExpansion) -> dict:
    return {"type": "laurent", "rank": e.rank, "order": e.truncation_order,
            "poles": [list(m) for m in e.pole_factors],
            "series": [{"exponent": list(k), "coefficient": _frac_json(v)}
                       for k, v in sorted(e.series.items(), key=lambda t: (sum(t[0]), tuple(-x for x in t[0])))]}


def chi_y_json(p: ChiYPolynomial) -> dict:
    return {"type": "chi-y", "coefficients": list(p.coefficients), "text": p.text()}


def local_class_json(h: HirzebruchLocalClass) -> dict:
    rays, by_power = h.collapsed()
    return {"type": "local-class", "orbit": h.orbit_marker, "rank": h.sigma.rank,
            "sigma": [list(r) for r in h.sigma.rays], "dual_rays": [list(r) for r in rays],
            "delta": "(-1-y)",
            "terms": [{"delta_power": c, "numerator": spolynomial_json(by_power[c])}
                      for c in sorted(by_power, reverse=True)],
            "faces": [{"rays": sorted(f), "codim": h.terms[f][0],
                       "sum": certified_json(h.terms[f][1])} for f in h.faces()]}


def faces_json(fl: FaceLattice) -> dict:
    return {"type": "faces", "rays": [list(r) for r in fl.cone.rays],
            "faces": [{"dim": d, "rays": sorted(s)} for s, d in zip(fl.index_sets, fl.dims)]}


def triangulation_json(t: Triangulation) -> dict:
    return {"type": "triangulation", "rays": [list(r) for r in t.base.rays],
            "cells": [sorted(c) for c in t.maximal_cells]}


def generators_json(g: GeneratorSet) -> dict:
    return {"type": "hilbert", "rays": [list(r) for r in g.cone.rays],
            "generators": [list(v) for v in g.generators]}


def cone_json(c: Cone) -> dict:
    return {"rank": c.rank, "rays": [list(r) for r in c.rays]}


def fan_json(f: Fan) -> dict:
    return {"rank": f.rank, "rays": [list(r) for r in f.rays], "fan": [sorted(s) for s in f.maximal_cones]}


# parsing serialized objects back

def parse_group_ring(records, rank: int) -> GroupRingElement:
    return GroupRingElement({tuple(r["exponent"]): int(r["coefficient"]) for r in records}, rank)


def parse_genfun(doc: dict) -> RationalGenFun:
    try:
        return RationalGenFun(parse_group_ring(doc["numerator"], doc["rank"]),
                              [tuple(m) for m in doc["denominator"]])
    except (KeyError, TypeError) as exc:
        raise InputError(f"malformed generating function: {exc}") from None


def parse_spolynomial(doc: dict) -> SPolynomial:
    return SPolynomial([tuple(w) for w in doc["variables"]],
                       {tuple(t["exponent"]): t["coefficient"] for t in doc["terms"]})


def parse_certified(doc: dict) -> CertifiedConeSum:
    try:
        cone = Cone([tuple(r) for r in doc["cone"]], doc["rank"])
        return CertifiedConeSum(cone, doc["kind"], doc["sign"], [tuple(w) for w in doc["denominator"]],
                                parse_spolynomial(doc["certificate"]), parse_genfun(doc["value"]))
    except (KeyError, TypeError) as exc:
        raise InputError(f"malformed cone sum: {exc}") from None


def parse_laurent(doc: dict) -> LaurentExpansion:
    series = {tuple(t["exponent"]): _frac_parse(t["coefficient"]) for t in doc["series"]}
    return LaurentExpansion([tuple(m) for m in doc["poles"]], series, doc["order"], doc["rank"])


def parse_chi_y(doc: dict) -> ChiYPolynomial:
    return ChiYPolynomial(doc["coefficients"])


def dumps(obj: dict) -> str:
    return json.dumps(obj, indent=2)

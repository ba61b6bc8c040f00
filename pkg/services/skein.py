"""
Oriented skein recursion toward descending diagrams.

A rule is c+ P(K+) + c- P(K-) = c0 P(K0) with c+ and c- unit monomials, plus
the value delta of an extra split unknotted component. Components are ordered
and based at their lowest edge label; a diagram is descending when every
crossing is first met as an over-crossing, and then evaluates as an unlink.
"""

from __future__ import annotations

import logging
import threading
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

from services.diagram import Diagram, End, canonical_key, opposite, smooth_crossing, switch_crossing
from services.errors import NonPlanar
from services.laurent import LaurentPoly
from services.limits import enforce_cap

logger = logging.getLogger(__name__)

_a = LaurentPoly.var("a")
_z = LaurentPoly.var("z")
_t = LaurentPoly.var("t")
_SQRT_T = LaurentPoly.var("t", Fraction(1, 2))


@dataclass(frozen=True)
class SkeinRule:
    name: str
    c_plus: LaurentPoly
    c_minus: LaurentPoly
    c_zero: LaurentPoly
    # None means every split unlink with 2+ components is zero
    delta: Optional[LaurentPoly]

    def unlink(self, components: int) -> LaurentPoly:
        if components <= 1:
            return LaurentPoly.constant(1)
        if self.delta is None:
            return LaurentPoly.zero()
        return self.delta ** (components - 1)


CONWAY = SkeinRule("conway", LaurentPoly.constant(1), LaurentPoly.constant(-1), _z, None)
HOMFLYPT = SkeinRule("homflypt", _a, -(_a ** -1), _z, (_a - _a ** -1) * _z ** -1)
JONES = SkeinRule("jones", _t ** -1, -_t, _SQRT_T - _SQRT_T ** -1, -(_SQRT_T + _SQRT_T ** -1))

SKEIN_RULES: Dict[str, SkeinRule] = {r.name: r for r in (CONWAY, HOMFLYPT, JONES)}

_SKEIN_CACHE: Dict[Tuple[str, Tuple], LaurentPoly] = {}
_CACHE_LOCK = threading.Lock()


def clear_cache() -> None:
    with _CACHE_LOCK:
        _SKEIN_CACHE.clear()


def _walk_order(d: Diagram) -> List[List[End]]:
    """Arrival ends of each component, from its lowest edge, components ordered by that edge."""
    heads = d.require_oriented()
    comp = d.component_of_edge()
    lowest: Dict[int, int] = {}
    for label, k in comp.items():
        lowest[k] = min(label, lowest.get(k, label))
    walks = []
    for k in sorted(lowest, key=lambda k: lowest[k]):
        a, b = d.edge_ends[lowest[k]]
        u = b if a in heads else a
        start = u
        arrivals = []
        while True:
            v = d.partner(u)
            arrivals.append(v)
            u = opposite(v)
            if u == start:
                break
        walks.append(arrivals)
    return walks


def first_undercrossing(d: Diagram) -> Optional[int]:
    """The first crossing whose first meeting is as an under-crossing, or None if descending."""
    met = set()
    for arrivals in _walk_order(d):
        for c, s in arrivals:
            if c in met:
                continue
            met.add(c)
            if s in (0, 2):
                return c
    return None


def skein_eval(d: Diagram, rule: SkeinRule, max_crossings: Optional[int] = None) -> LaurentPoly:
    d.require_oriented()
    if d.virtual:
        raise NonPlanar("skein recursion handles classical diagrams only")
    enforce_cap("crossings", len(d.crossings), max_crossings)
    return _evaluate(d, rule)


def _evaluate(d: Diagram, rule: SkeinRule) -> LaurentPoly:
    key = (rule.name, canonical_key(d))
    hit = _SKEIN_CACHE.get(key)
    if hit is not None:
        return hit
    c = first_undercrossing(d)
    if c is None:
        value = rule.unlink(d.num_components)
    else:
        switched = _evaluate(switch_crossing(d, c), rule)
        smoothed = _evaluate(smooth_crossing(d, c, "oriented"), rule)
        if d.sign(c) > 0:
            value = (rule.c_zero * smoothed - rule.c_minus * switched) * rule.c_plus.inverse()
        else:
            value = (rule.c_zero * smoothed - rule.c_plus * switched) * rule.c_minus.inverse()
    with _CACHE_LOCK:
        _SKEIN_CACHE.setdefault(key, value)
    return value


def conway_poly(d: Diagram, max_crossings: Optional[int] = None) -> LaurentPoly:
    return skein_eval(d, CONWAY, max_crossings)


def homflypt_poly(d: Diagram, max_crossings: Optional[int] = None) -> LaurentPoly:
    return skein_eval(d, HOMFLYPT, max_crossings)


def skein_jones(d: Diagram, max_crossings: Optional[int] = None) -> LaurentPoly:
    return skein_eval(d, JONES, max_crossings)


def homflypt_to_conway(p: LaurentPoly) -> LaurentPoly:
    return p.substitute("a", 1)


def homflypt_to_jones(p: LaurentPoly) -> LaurentPoly:
    """a -> t^-1, z -> t^(1/2) - t^(-1/2); needs no negative powers of z (knots)."""
    return p.substitute("a", _t ** -1).substitute("z", _SQRT_T - _SQRT_T ** -1)

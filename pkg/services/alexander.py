"""
Alexander polynomial from the region matrix, and its marker-state expansion.

Rows are crossings, columns are regions. At a crossing whose incoming under-edge
sits on slot i, the corners (c, i), (c, i+1), (c, i+2), (c, i+3) carry
t, -t, 1, -1. The two regions on either side of the lowest edge are deleted.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

import sympy

from services.diagram import Diagram, End, resolve_state
from services.errors import NonIntegralComposition, NonPlanar
from services.laurent import LaurentPoly
from services.limits import enforce_cap
from services.planar import RegionComplex, regions

logger = logging.getLogger(__name__)

T = LaurentPoly.var("t")
_CORNER_LABELS = (T, LaurentPoly.constant(-1) * T, LaurentPoly.constant(1), LaurentPoly.constant(-1))
_t = sympy.Symbol("t")


def _require_alexander_input(d: Diagram) -> None:
    d.require_oriented()
    if d.virtual:
        raise NonPlanar("the Alexander polynomial is computed for classical diagrams only")


def corner_label(d: Diagram, corner: End) -> LaurentPoly:
    c, a = corner
    i = d.incoming_under_slot(c)
    return _CORNER_LABELS[(a - i) % 4]


def deleted_regions(d: Diagram, rc: RegionComplex) -> Tuple[int, int]:
    """The two regions beside the lowest edge."""
    a, b = d.edge_ends[min(d.edges)]
    # the face to the right of the dart leaving a holds the corner at b, and vice versa
    return tuple(sorted((rc.corner_region[b], rc.corner_region[a])))


def region_matrix(d: Diagram, rc: Optional[RegionComplex] = None) -> List[List[LaurentPoly]]:
    rc = rc or regions(d)
    rows = [[LaurentPoly.zero() for _ in range(rc.count)] for _ in d.crossings]
    for corner, r in rc.corner_region.items():
        rows[corner[0]][r] = rows[corner[0]][r] + corner_label(d, corner)
    return rows


def _to_sympy(p: LaurentPoly):
    # region matrix entries only use integral powers of t
    return sum((c * _t ** (e[0] // 4) if e else c for e, c in p.terms.items()), sympy.Integer(0))


def _from_sympy(expr) -> LaurentPoly:
    poly = sympy.Poly(sympy.expand(expr), _t)
    out = LaurentPoly.zero()
    for (k,), c in poly.terms():
        out = out + (LaurentPoly.var("t", k, int(c)) if k else int(c))
    return out


def alexander_determinant(d: Diagram, max_crossings: Optional[int] = None) -> LaurentPoly:
    """Determinant of the region matrix with the two deleted columns removed, before normalization."""
    _require_alexander_input(d)
    enforce_cap("crossings", len(d.crossings), max_crossings)
    if not d.crossings:
        return LaurentPoly.constant(1)
    rc = regions(d)
    dropped = deleted_regions(d, rc)
    keep = [r for r in range(rc.count) if r not in dropped]
    rows = region_matrix(d, rc)
    m = sympy.Matrix([[_to_sympy(row[r]) for r in keep] for row in rows])
    det = m.det(method="bareiss")
    logger.debug("alexander minor %dx%d", m.rows, m.cols)
    return _from_sympy(det)


def normalize_alexander(p: LaurentPoly) -> LaurentPoly:
    """Multiply by ±t^N so the exponent range is symmetric about 0 and the lowest coefficient is positive."""
    if not p:
        return p
    exps = p.exponents_of("t")
    shift = -(exps[0] + exps[-1]) / 2
    out = p * LaurentPoly.var("t", shift) if shift else p
    if out.coefficient(t=exps[0] + shift) < 0:
        out = -out
    return out


def alexander_poly(d: Diagram, max_crossings: Optional[int] = None) -> LaurentPoly:
    return normalize_alexander(alexander_determinant(d, max_crossings))


def knot_determinant(d: Diagram, max_crossings: Optional[int] = None) -> int:
    """|Δ(-1)|."""
    p = alexander_poly(d, max_crossings)
    total = 0
    for e in p.exponents_of("t"):
        if e.denominator != 1:
            raise NonIntegralComposition("Δ(-1) needs integral exponents; this is a link")
        total += -p.coefficient(t=e) if int(e) % 2 else p.coefficient(t=e)
    return abs(int(total))


def conway_to_alexander(conway: LaurentPoly) -> LaurentPoly:
    """z -> t^(1/2) - t^(-1/2), normalized."""
    image = LaurentPoly.var("t", Fraction(1, 2)) - LaurentPoly.var("t", Fraction(-1, 2))
    return normalize_alexander(conway.substitute("z", image))


@dataclass(frozen=True)
class MarkerState:
    """One system of distinct representatives: each kept region marks a corner."""

    markers: Tuple[Tuple[int, End], ...]
    sign: int
    weight: LaurentPoly
    loops: int

    @property
    def choice(self) -> Dict[int, str]:
        return {c: _marker_smoothing(a) for _, (c, a) in self.markers}

    def to_json(self) -> dict:
        return {
            "markers": [{"region": r, "crossing": c, "corner": a} for r, (c, a) in self.markers],
            "sign": self.sign,
            "weight": self.weight.to_text(),
            "loops": self.loops,
        }


def _marker_smoothing(corner: int) -> str:
    # A joins corners 1 and 3, B joins corners 0 and 2; the marked corner is opened
    return "A" if corner % 2 else "B"


def _permutation_sign(perm: List[int]) -> int:
    sign = 1
    for i in range(len(perm)):
        for j in range(i + 1, len(perm)):
            if perm[i] > perm[j]:
                sign = -sign
    return sign


def trail_state_sum(d: Diagram, max_crossings: Optional[int] = None) -> Tuple[LaurentPoly, List[MarkerState]]:
    """Signed sum over marker states; equals `alexander_determinant`."""
    _require_alexander_input(d)
    enforce_cap("crossings", len(d.crossings), max_crossings)
    if not d.crossings:
        return LaurentPoly.constant(1), [MarkerState((), 1, LaurentPoly.constant(1), d.num_components)]
    rc = regions(d)
    dropped = deleted_regions(d, rc)
    keep = [r for r in range(rc.count) if r not in dropped]
    corners_of: Dict[int, List[End]] = {r: sorted(rc.regions[r]) for r in keep}

    states: List[MarkerState] = []
    total = LaurentPoly.zero()
    chosen: List[End] = []
    used = set()

    def walk(k: int) -> None:
        nonlocal total
        if k == len(keep):
            sign = _permutation_sign([c for c, _ in chosen])
            weight = LaurentPoly.constant(sign)
            for corner in chosen:
                weight = weight * corner_label(d, corner)
            markers = tuple(zip(keep, chosen))
            choice = {c: _marker_smoothing(a) for c, a in chosen}
            loops = resolve_state(d, choice).loop_count
            states.append(MarkerState(markers, sign, weight, loops))
            total = total + weight
            return
        for corner in corners_of[keep[k]]:
            if corner[0] in used:
                continue
            used.add(corner[0])
            chosen.append(corner)
            walk(k + 1)
            chosen.pop()
            used.discard(corner[0])

    walk(0)
    logger.debug("%d marker states over %d crossings", len(states), len(d.crossings))
    return total, states

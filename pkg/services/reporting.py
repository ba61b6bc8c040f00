"""Invariant registry and the payloads printed by the CLI."""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional

from pydantic import BaseModel, Field

from services.alexander import alexander_poly, knot_determinant
from services.arrow import arrow_polynomial
from services.bracket import bracket_poly, determinant, normalized_jones
from services.diagram import Diagram, linking_number, writhe
from services.errors import BadIndex
from services.khovanov import build_complex, homology, poincare_polynomial
from services.skein import conway_poly, homflypt_poly, skein_jones
from services.temperley_lieb import braid_to_tl, closure_trace
from services.tensor_net import compile_morse, contract, default_rmatrix
from services.vassiliev import jones_vassiliev_coeffs

logger = logging.getLogger(__name__)

SCHEMA = "skeinlab/1"


@dataclass
class Caps:
    crossings: Optional[int] = None
    khovanov: Optional[int] = None
    nmax: int = 3


@dataclass
class BraidInput:
    n_strands: int
    word: List[int] = field(default_factory=list)


@dataclass
class InvariantResult:
    name: str
    value: Any
    text: str
    key: Any = None

    def __post_init__(self):
        if self.key is None:
            self.key = self.text


def _poly(name, p):
    return InvariantResult(name, p.to_text(), p.to_text(), p)


def _bracket(d, braid, caps):
    return _poly("bracket", bracket_poly(d, caps.crossings))


def _f(d, braid, caps):
    return _poly("f", normalized_jones(d, caps.crossings).f)


def _jones(d, braid, caps):
    return _poly("jones", normalized_jones(d, caps.crossings).jones)


def _determinant(d, braid, caps):
    value = determinant(d, caps.crossings)
    return InvariantResult("determinant", value, str(value), value)


def _arrow(d, braid, caps):
    value = arrow_polynomial(d, caps.crossings)
    return InvariantResult("arrow", value.to_json(), value.normalized.to_text(), value.normalized)


def _alexander(d, braid, caps):
    return _poly("alexander", alexander_poly(d, caps.crossings))


def _knot_determinant(d, braid, caps):
    value = knot_determinant(d, caps.crossings)
    return InvariantResult("knot-determinant", value, str(value), value)


def _conway(d, braid, caps):
    return _poly("conway", conway_poly(d, caps.crossings))


def _homflypt(d, braid, caps):
    return _poly("homflypt", homflypt_poly(d, caps.crossings))


def _skein_jones(d, braid, caps):
    return _poly("skein-jones", skein_jones(d, caps.crossings))


def _khovanov(d, braid, caps):
    table = homology(build_complex(d, caps.khovanov))
    value = {"table": table.to_json(), "poincare": poincare_polynomial(table).to_text()}
    return InvariantResult("khovanov", value, table.to_text(), tuple(sorted(table.groups.items())))


def _vcoeffs(d, braid, caps):
    coeffs = jones_vassiliev_coeffs(d, caps.nmax, caps.crossings)
    texts = [str(c) for c in coeffs]
    return InvariantResult("vcoeffs", texts, "[" + ", ".join(texts) + "]", tuple(coeffs))


def _writhe(d, braid, caps):
    value = writhe(d)
    return InvariantResult("writhe", value, str(value), value)


def _linking(d, braid, caps):
    value = linking_number(d)
    return InvariantResult("linking", value, str(value), value)


def _require_braid(braid, name):
    if braid is None:
        raise BadIndex(f"invariant {name} needs a braid word input")
    return braid


def _tl(d, braid, caps):
    b = _require_braid(braid, "tl")
    # bracket of the closure
    p = closure_trace(braid_to_tl(b.n_strands, b.word))
    return _poly("tl", p)


def _tensor(d, braid, caps):
    b = _require_braid(braid, "tensor")
    # d times the bracket of the closure
    p = contract(compile_morse(b.n_strands, b.word), default_rmatrix())
    return InvariantResult("tensor", p.to_text(), p.to_text(), p)


INVARIANTS = {
    "bracket": _bracket,
    "f": _f,
    "jones": _jones,
    "determinant": _determinant,
    "arrow": _arrow,
    "alexander": _alexander,
    "knot-determinant": _knot_determinant,
    "conway": _conway,
    "homflypt": _homflypt,
    "skein-jones": _skein_jones,
    "khovanov": _khovanov,
    "vcoeffs": _vcoeffs,
    "writhe": _writhe,
    "linking": _linking,
    "tl": _tl,
    "tensor": _tensor,
}


def compute_invariant(d: Diagram, name: str, caps: Optional[Caps] = None, braid: Optional[BraidInput] = None):
    if name not in INVARIANTS:
        raise BadIndex(f"unknown invariant {name!r}; known: {', '.join(INVARIANTS)}")
    result = INVARIANTS[name](d, braid, caps or Caps())
    logger.debug("%s: %s", name, result.text)
    return result


# payloads


class ComputeOutput(BaseModel):
    schema_version: str = Field(default=SCHEMA, serialization_alias="schema")
    input: str
    invariant: str
    value: Any
    text: str


class CheckOutcome(BaseModel):
    suite: str
    name: str
    passed: bool
    detail: Optional[str] = None


class VerifyOutput(BaseModel):
    schema_version: str = Field(default=SCHEMA, serialization_alias="schema")
    command: str
    passed: bool
    checks: List[CheckOutcome]


class StatesOutput(BaseModel):
    schema_version: str = Field(default=SCHEMA, serialization_alias="schema")
    mode: str
    input: str
    states: List[Dict[str, Any]]
    summary: Dict[str, Any] = Field(default_factory=dict)


class SearchOutput(BaseModel):
    schema_version: str = Field(default=SCHEMA, serialization_alias="schema")
    max_classical: int
    searched: int
    distinct: int
    unit_bracket: int
    hits: List[Dict[str, Any]]
    complete: bool


def dump(model: BaseModel):
    return model.model_dump_json(by_alias=True, indent=2)


def render_checks(checks) -> str:
    lines = []
    for c in checks:
        mark = "ok  " if c.passed else "FAIL"
        lines.append(f"{mark} {c.suite}: {c.name}" + (f" ({c.detail})" if c.detail else ""))
    return "\n".join(lines)

"""
Arrow polynomial of oriented (virtual) diagrams.

At a positive crossing the A-smoothing respects orientation and the B-smoothing
is disoriented; at a negative crossing the roles swap. Each pass through a
disoriented smoothing leaves a cusp, recorded as L or R by the side it points to.
After cancelling equal neighbours, a loop with 2n cusps carries the variable K_n.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Dict, List, Optional

from services.bracket import _tiered_bits, normalize_bracket
from services.diagram import VIRTUAL, Diagram, trace_loops, writhe
from services.errors import OddLength
from services.laurent import A, LOOP_VALUE, LaurentPoly
from services.limits import enforce_cap

logger = logging.getLogger(__name__)


def reduce_cusp_word(word: str) -> int:
    """Zigzag index of a cyclic cusp word: cancel equal neighbours, return half the remaining length."""
    if any(ch not in "LR" for ch in word):
        raise ValueError(f"cusp words use L and R only, got {word!r}")
    if len(word) % 2:
        raise OddLength(f"cusp word {word!r} has odd length")
    stack: List[str] = []
    for ch in word:
        if stack and stack[-1] == ch:
            stack.pop()
        else:
            stack.append(ch)
    lo, hi = 0, len(stack)
    while hi - lo >= 2 and stack[lo] == stack[hi - 1]:
        lo += 1
        hi -= 1
    return (hi - lo) // 2


def loop_variable(n: int) -> LaurentPoly:
    return LaurentPoly.constant(1) if n == 0 else LaurentPoly.var(f"K{n}")


def cusp_words(d: Diagram, choice: Dict[int, str]) -> List[str]:
    """Cusp word of every state loop, traversed from its lowest end."""
    signs = d.signs
    words = []
    for steps in trace_loops(d, choice):
        letters = []
        for c, s, t in steps:
            if d.crossings[c].kind == VIRTUAL:
                continue
            disoriented = (choice[c] == "B") == (signs[c] > 0)
            if disoriented:
                letters.append("L" if t == (s + 1) % 4 else "R")
        words.append("".join(letters))
    words.extend("" for _ in range(d.free_loops))
    return words


@dataclass(frozen=True)
class ArrowValue:
    raw: LaurentPoly
    normalized: LaurentPoly

    def to_json(self) -> dict:
        return {"raw": self.raw.to_text(), "normalized": self.normalized.to_text()}


def arrow_polynomial(d: Diagram, max_crossings: Optional[int] = None) -> ArrowValue:
    d.require_oriented()
    enforce_cap("crossings", len(d.classical), max_crossings)
    n = len(d.classical)
    raw = LaurentPoly.zero()
    for b, bits in _tiered_bits(n):
        choice = {c: ("B" if bit else "A") for c, bit in zip(d.classical, bits)}
        words = cusp_words(d, choice)
        term = A ** (n - 2 * b) * LOOP_VALUE ** (len(words) - 1)
        for w in words:
            term = term * loop_variable(reduce_cusp_word(w))
        raw = raw + term
    logger.debug("arrow polynomial over %d states", 2 ** n)
    return ArrowValue(raw=raw, normalized=normalize_bracket(raw, writhe(d)))


def collapse_loop_variables(p: LaurentPoly) -> LaurentPoly:
    """Set every K_i to 1."""
    return p.substitute_many({v: 1 for v in p.variables if v.startswith("K")})

"""
Kauffman bracket by state summation, writhe normalization and the Jones polynomial.

States are produced tier by tier (number of B-smoothings), in revolving-door
order inside each tier so consecutive states differ by one swap.
"""

from __future__ import annotations

import logging
import math
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, List, Optional, Tuple

from services.diagram import Diagram, LoopCounter, writhe
from services.errors import NonIntegralComposition, NonPlanar
from services.laurent import A, LOOP_VALUE, LaurentPoly
from services.limits import enforce_cap

logger = logging.getLogger(__name__)

T_QUARTER = LaurentPoly.var("t", Fraction(-1, 4))


def revolving_door(n: int, k: int) -> Iterator[Tuple[int, ...]]:
    """k-subsets of range(n); consecutive subsets differ by exchanging one element."""
    if k < 0 or k > n:
        return
    if k == 0:
        yield ()
        return
    if k == n:
        yield tuple(range(n))
        return
    yield from revolving_door(n - 1, k)
    for comb in reversed(list(revolving_door(n - 1, k - 1))):
        yield comb + (n - 1,)


def _tiered_bits(n: int) -> Iterator[Tuple[int, List[int]]]:
    for b in range(n + 1):
        for subset in revolving_door(n, b):
            bits = [0] * n
            for i in subset:
                bits[i] = 1
            yield b, bits


def enumerate_states(d: Diagram, max_crossings: Optional[int] = None):
    enforce_cap("crossings", len(d.classical), max_crossings)
    counter = LoopCounter(d)
    out = []
    for _, bits in _tiered_bits(len(d.classical)):
        choice = {c: ("B" if bit else "A") for c, bit in zip(d.classical, bits)}
        out.append((choice, counter.count(bits)))
    return out


def state_histogram(d: Diagram, max_crossings: Optional[int] = None) -> Counter:
    enforce_cap("crossings", len(d.classical), max_crossings)
    counter = LoopCounter(d)
    hist: Counter = Counter()
    for b, bits in _tiered_bits(len(d.classical)):
        hist[(b, counter.count(bits))] += 1
    return hist


def bracket_poly(d: Diagram, max_crossings: Optional[int] = None) -> LaurentPoly:
    """<K> = sum over states of A^(#A - #B) d^(loops - 1)."""
    hist = state_histogram(d, max_crossings)
    n = len(d.classical)
    powers = {}
    out = LaurentPoly.zero()
    for (b, loops), count in sorted(hist.items()):
        if loops - 1 not in powers:
            powers[loops - 1] = LOOP_VALUE ** (loops - 1)
        out = out + (A ** (n - 2 * b)) * powers[loops - 1] * count
    logger.debug("bracket over %d states of %d crossings", 2 ** n, n)
    return out


@dataclass(frozen=True)
class BracketValue:
    bracket: LaurentPoly
    f: LaurentPoly
    jones: LaurentPoly

    def to_json(self) -> dict:
        return {"bracket": self.bracket.to_text(), "f": self.f.to_text(), "jones": self.jones.to_text()}


def to_jones(f: LaurentPoly) -> LaurentPoly:
    """A -> t^(-1/4)."""
    return f.substitute("A", T_QUARTER)


def normalize_bracket(bracket: LaurentPoly, wr: int) -> LaurentPoly:
    return bracket * (-(A ** 3)) ** (-wr)


def normalized_jones(d: Diagram, max_crossings: Optional[int] = None) -> BracketValue:
    wr = writhe(d)
    bracket = bracket_poly(d, max_crossings)
    f = normalize_bracket(bracket, wr)
    return BracketValue(bracket=bracket, f=f, jones=to_jones(f))


def _eval_zeta8(p: LaurentPoly, var: str) -> Tuple[int, int, int, int]:
    """Value of p at var = e^(i pi/4), in the basis 1, z, z^2, z^3 with z^4 = -1."""
    if p.variables and p.variables != (var,):
        raise NonIntegralComposition(f"expected a polynomial in {var}, got {p.variables}")
    out = [0, 0, 0, 0]
    for e, c in p.terms.items():
        quarters = e[0] if e else 0
        if quarters % 4:
            raise NonIntegralComposition("fractional exponent")
        k = (quarters // 4) % 8
        sign = -1 if k >= 4 else 1
        out[k % 4] += sign * c
    return tuple(out)


def determinant(d: Diagram, max_crossings: Optional[int] = None) -> int:
    """|V(-1)|, read off the bracket at A = e^(i pi/4)."""
    if d.virtual:
        raise NonPlanar("the determinant is defined for classical diagrams only")
    a0, a1, a2, a3 = _eval_zeta8(bracket_poly(d, max_crossings), "A")
    # |x|^2 = sum a_k^2 + sqrt(2) (a0 a1 + a1 a2 + a2 a3 - a0 a3) for z = e^(i pi/4)
    if a0 * a1 + a1 * a2 + a2 * a3 - a0 * a3:
        raise NonIntegralComposition("bracket value at A = e^(i pi/4) has irrational modulus")
    square = a0 * a0 + a1 * a1 + a2 * a2 + a3 * a3
    root = math.isqrt(square)
    if root * root != square:
        raise NonIntegralComposition(f"|V(-1)|^2 = {square} is not a square")
    return root

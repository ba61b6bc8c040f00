"""
Diagrammatic Temperley-Lieb algebra and the connection category.

A matching with `top` points above and `bottom` points below numbers its
boundary 0..top+bottom-1 going along the top left to right and then along the
bottom right to left. ``x * y`` stacks x over y and needs x.bottom == y.top.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Dict, Iterable, List, Mapping, Sequence, Tuple

from services.errors import BadIndex, NotAProjector, SignatureMismatch
from services.laurent import A, LOOP_VALUE, LaurentPoly

logger = logging.getLogger(__name__)


@dataclass(frozen=True, order=True)
class Matching:
    top: int
    bottom: int
    partner: Tuple[int, ...]

    def __post_init__(self):
        size = self.top + self.bottom
        if len(self.partner) != size or size % 2:
            raise SignatureMismatch(f"{self.top}->{self.bottom} needs an even number of points")
        for i, j in enumerate(self.partner):
            if not (0 <= j < size) or j == i or self.partner[j] != i:
                raise SignatureMismatch(f"not a perfect matching: {self.partner}")
        if not _non_crossing(self.partner):
            raise SignatureMismatch(f"matching {self.pairs()} is not planar")

    @classmethod
    def from_pairs(cls, top: int, bottom: int, pairs: Iterable[Tuple[int, int]]) -> "Matching":
        partner = [-1] * (top + bottom)
        for i, j in pairs:
            partner[i] = j
            partner[j] = i
        return cls(top, bottom, tuple(partner))

    @classmethod
    def identity(cls, n: int) -> "Matching":
        return cls.from_pairs(n, n, [(j, n + (n - 1 - j)) for j in range(n)])

    @classmethod
    def cup_cap(cls, n: int, i: int) -> "Matching":
        """U_i on n strands, 1 <= i < n: top points i, i+1 joined, bottom points i, i+1 joined."""
        if not 1 <= i < n:
            raise BadIndex(f"U_{i} does not exist on {n} strands")
        pairs = [(i - 1, i), (n + (n - i), n + (n - 1 - i))]
        pairs += [(j, n + (n - 1 - j)) for j in range(n) if j not in (i - 1, i)]
        return cls.from_pairs(n, n, pairs)

    def bottom_index(self, position: int) -> int:
        return self.top + (self.bottom - 1 - position)

    def pairs(self) -> List[Tuple[int, int]]:
        return [(i, j) for i, j in enumerate(self.partner) if i < j]

    def rotated(self) -> "Matching":
        """Half-turn: the bottom row becomes the top row."""
        m, n = self.top, self.bottom
        shift = [i - m if i >= m else i + n for i in range(m + n)]
        return Matching.from_pairs(n, m, [(shift[i], shift[j]) for i, j in self.pairs()])

    def to_json(self) -> dict:
        return {"top": self.top, "bottom": self.bottom, "pairs": [list(p) for p in self.pairs()]}


def _non_crossing(partner: Sequence[int]) -> bool:
    stack: List[int] = []
    for i, j in enumerate(partner):
        if j > i:
            stack.append(i)
        else:
            if not stack or stack[-1] != j:
                return False
            stack.pop()
    return not stack


def compose(x: Matching, y: Matching) -> Tuple[Matching, int]:
    """Stack x over y; returns the resulting matching and the number of closed loops."""
    if x.bottom != y.top:
        raise SignatureMismatch(f"cannot stack {x.top}->{x.bottom} over {y.top}->{y.bottom}")
    m, n, k = x.top, x.bottom, y.bottom
    # node ids: ("x", i) and ("y", i); middle point j is x.bottom_index(j) == y index j
    def x_to_y(i: int) -> int:
        return n - 1 - (i - m)

    def y_to_x(j: int) -> int:
        return x.bottom_index(j)

    def outer(side: str, i: int) -> bool:
        return (side == "x" and i < m) or (side == "y" and i >= n)

    def result_index(side: str, i: int) -> int:
        return i if side == "x" else m + (i - n)

    pairs = []
    seen_middle = set()
    starts = [("x", i) for i in range(m)] + [("y", i) for i in range(n, n + k)]
    done = set()
    for side, i in starts:
        if (side, i) in done:
            continue
        cur_side, cur = side, i
        while True:
            tbl = x if cur_side == "x" else y
            nxt = tbl.partner[cur]
            if outer(cur_side, nxt):
                break
            if cur_side == "x":
                j = x_to_y(nxt)
                seen_middle.add(j)
                cur_side, cur = "y", j
            else:
                seen_middle.add(nxt)
                cur_side, cur = "x", y_to_x(nxt)
        done.add((side, i))
        done.add((cur_side, nxt))
        pairs.append((result_index(side, i), result_index(cur_side, nxt)))
    loops = 0
    for j in range(n):
        if j in seen_middle:
            continue
        loops += 1
        cur = j
        while True:
            seen_middle.add(cur)
            # up through x, then down through y
            up = x.partner[y_to_x(cur)]
            seen_middle.add(x_to_y(up))
            cur = y.partner[x_to_y(up)]
            if cur == j:
                break
    return Matching.from_pairs(m, k, pairs), loops


class TLElement:
    """Finite Laurent-linear combination of matchings with a common signature."""

    __slots__ = ("top", "bottom", "terms")

    def __init__(self, top: int, bottom: int, terms: Mapping[Matching, LaurentPoly] = None):
        self.top = top
        self.bottom = bottom
        clean: Dict[Matching, LaurentPoly] = {}
        for mt, c in (terms or {}).items():
            if (mt.top, mt.bottom) != (top, bottom):
                raise SignatureMismatch(f"term {mt.top}->{mt.bottom} in a {top}->{bottom} element")
            c = LaurentPoly.coerce(c)
            if c:
                clean[mt] = c
        self.terms = clean

    @classmethod
    def of(cls, mt: Matching, coeff=1) -> "TLElement":
        return cls(mt.top, mt.bottom, {mt: LaurentPoly.coerce(coeff)})

    @classmethod
    def identity(cls, n: int) -> "TLElement":
        return cls.of(Matching.identity(n))

    @classmethod
    def generator(cls, n: int, i: int) -> "TLElement":
        return cls.of(Matching.cup_cap(n, i))

    def __add__(self, other: "TLElement") -> "TLElement":
        if (self.top, self.bottom) != (other.top, other.bottom):
            raise SignatureMismatch("adding elements of different signatures")
        out = dict(self.terms)
        for mt, c in other.terms.items():
            out[mt] = out.get(mt, LaurentPoly.zero()) + c
        return TLElement(self.top, self.bottom, out)

    def __sub__(self, other: "TLElement") -> "TLElement":
        return self + other.scale(-1)

    def scale(self, c) -> "TLElement":
        c = LaurentPoly.coerce(c)
        return TLElement(self.top, self.bottom, {mt: v * c for mt, v in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, TLElement):
            return tl_multiply(self, other)
        return self.scale(other)

    __rmul__ = scale

    def __eq__(self, other) -> bool:
        if not isinstance(other, TLElement):
            return NotImplemented
        return (self.top, self.bottom, self.terms) == (other.top, other.bottom, other.terms)

    def __repr__(self) -> str:
        body = " + ".join(f"({c})*{mt.pairs()}" for mt, c in sorted(self.terms.items()))
        return f"TLElement({self.top}->{self.bottom}: {body or '0'})"


def tl_multiply(x: TLElement, y: TLElement) -> TLElement:
    if x.bottom != y.top:
        raise SignatureMismatch(f"cannot stack {x.top}->{x.bottom} over {y.top}->{y.bottom}")
    out: Dict[Matching, LaurentPoly] = {}
    for mx, cx in x.terms.items():
        for my, cy in y.terms.items():
            mt, loops = compose(mx, my)
            out[mt] = out.get(mt, LaurentPoly.zero()) + cx * cy * LOOP_VALUE ** loops
    return TLElement(x.top, y.bottom, out)


def braid_to_tl(n: int, word: Sequence[int]) -> TLElement:
    """sigma_i -> A + A^-1 U_i, sigma_i^-1 -> A^-1 + A U_i."""
    if n < 1:
        raise BadIndex(f"braid needs at least one strand, got {n}")
    out = TLElement.identity(n)
    one = TLElement.identity(n)
    for g in word:
        if g == 0 or abs(g) >= n:
            raise BadIndex(f"generator {g} out of range for {n} strands")
        u = TLElement.generator(n, abs(g))
        letter = one.scale(A) + u.scale(A ** -1) if g > 0 else one.scale(A ** -1) + u.scale(A)
        out = out * letter
    return out


def closure_loops(mt: Matching) -> int:
    if mt.top != mt.bottom:
        raise SignatureMismatch(f"closure needs a square matching, got {mt.top}->{mt.bottom}")
    n = mt.top
    seen = [False] * (2 * n)
    loops = 0
    for start in range(2 * n):
        if seen[start]:
            continue
        loops += 1
        cur = start
        while not seen[cur]:
            seen[cur] = True
            other = mt.partner[cur]
            seen[other] = True
            # the closing arc joins top j with bottom j
            cur = mt.bottom_index(other) if other < n else n - 1 - (other - n)
    return loops


def closure_trace(x: TLElement) -> LaurentPoly:
    if x.top != x.bottom:
        raise SignatureMismatch(f"closure needs a square element, got {x.top}->{x.bottom}")
    out = LaurentPoly.zero()
    for mt, c in x.terms.items():
        out = out + c * LOOP_VALUE ** (closure_loops(mt) - 1)
    return out


def meander_projector(a: Matching, b: Matching) -> Tuple[TLElement, int]:
    """q = a stacked over b, and k with q * q = d^k q.

    Requires b stacked over a to be the identity up to k closed loops.
    """
    if a.bottom != b.top or a.top != b.bottom:
        raise SignatureMismatch(f"{a.top}->{a.bottom} and {b.top}->{b.bottom} do not compose both ways")
    if a.top < a.bottom:
        raise SignatureMismatch("the first morphism must not increase the number of points")
    inner, k = compose(b, a)
    if inner != Matching.identity(b.top):
        raise NotAProjector(f"b.a is {inner.pairs()}, not a multiple of the identity")
    q, loops = compose(a, b)
    return TLElement(q.top, q.bottom, {q: LOOP_VALUE ** loops}), k


def catalan_basis(n: int) -> List[Matching]:
    def build(points: List[int]) -> List[List[Tuple[int, int]]]:
        if not points:
            return [[]]
        out = []
        first = points[0]
        for k in range(1, len(points), 2):
            inside, outside = points[1:k], points[k + 1:]
            for left in build(inside):
                for right in build(outside):
                    out.append([(first, points[k])] + left + right)
        return out

    return [Matching.from_pairs(n, n, pairs) for pairs in build(list(range(2 * n)))]


def check_relations(n: int) -> List[Tuple[str, bool]]:
    """U_i^2 = d U_i, U_i U_(i+-1) U_i = U_i, far commutativity, for all generators of TL_n."""
    u = {i: TLElement.generator(n, i) for i in range(1, n)}
    results = []
    for i in range(1, n):
        results.append((f"U{i}^2 = d U{i}", u[i] * u[i] == u[i].scale(LOOP_VALUE)))
        for j in (i - 1, i + 1):
            if j in u:
                results.append((f"U{i} U{j} U{i} = U{i}", u[i] * u[j] * u[i] == u[i]))
        for j in range(i + 2, n):
            results.append((f"U{i} U{j} = U{j} U{i}", u[i] * u[j] == u[j] * u[i]))
    return results

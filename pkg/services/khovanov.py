"""
Integral Khovanov homology from the cube of resolutions.

Generators label every loop of a state by 1 or x (stored as 0 / 1). The edge
of the cube that changes the crossing in position k from A to B carries the
merge m or the split Δ of V = Z[x]/(x^2), with sign (-1)^(number of A's before
position k). Gradings: i = b - n_-, j = (#1 - #x) + b + n_+ - 2 n_-.
"""

from __future__ import annotations

import logging
from collections import Counter
from dataclasses import dataclass, field
from itertools import product
from typing import Dict, FrozenSet, List, Optional, Sequence, Tuple

import numpy as np
from networkx.utils import UnionFind

from services.diagram import Diagram, End, smooth_crossing, state_unions
from services.errors import ComplexError, NonPlanar
from services.laurent import LaurentPoly, poly_sum
from services.limits import enforce_cap
from services.smith import IntMatrix, smith_normal_form

logger = logging.getLogger(__name__)

Loop = FrozenSet
Bits = Tuple[int, ...]


@dataclass(frozen=True)
class CubeState:
    bits: Bits
    loops: Tuple[Loop, ...]

    @property
    def tier(self) -> int:
        return sum(self.bits)


@dataclass(frozen=True)
class Generator:
    state: Bits
    labels: Tuple[int, ...]
    i: int
    j: int


@dataclass
class KhovanovComplex:
    n_plus: int
    n_minus: int
    generators: Dict[int, List[Generator]]
    differentials: Dict[int, IntMatrix]

    def rank(self, i: int) -> int:
        return len(self.generators.get(i, []))

    def ranks(self) -> Dict[int, int]:
        return {i: len(g) for i, g in sorted(self.generators.items())}


@dataclass(frozen=True)
class HomologyGroup:
    free: int
    torsion: Tuple[int, ...] = ()

    def to_text(self) -> str:
        parts = []
        if self.free:
            parts.append("Z" if self.free == 1 else f"Z^{self.free}")
        parts.extend(f"Z/{k}" for k in self.torsion)
        return "+".join(parts) or "0"


@dataclass
class HomologyTable:
    groups: Dict[Tuple[int, int], HomologyGroup] = field(default_factory=dict)

    def to_json(self) -> List[dict]:
        return [
            {"i": i, "j": j, "free": g.free, "torsion": list(g.torsion)}
            for (i, j), g in sorted(self.groups.items())
        ]

    def to_text(self) -> str:
        """Grid with quantum degree j down the side and homological degree i across."""
        if not self.groups:
            return "0"
        is_ = sorted({i for i, _ in self.groups})
        js = sorted({j for _, j in self.groups}, reverse=True)
        cells = {k: g.to_text() for k, g in self.groups.items()}
        width = max(max(len(s) for s in cells.values()), max(len(str(i)) for i in is_)) + 1
        lines = ["j\\i " + "".join(str(i).rjust(width) for i in is_)]
        for j in js:
            lines.append(str(j).rjust(3) + " " + "".join(cells.get((i, j), ".").rjust(width) for i in is_))
        return "\n".join(lines)


def state_loops(d: Diagram, bits: Sequence[int]) -> Tuple[Loop, ...]:
    """Loops of a state as end sets, sorted by least edge label; free loops last."""
    choice = {c: ("B" if b else "A") for c, b in zip(d.classical, bits)}
    uf = UnionFind(list(d.ends()))
    for a, b in state_unions(d, choice):
        uf.union(a, b)
    groups = [frozenset(g) for g in uf.to_sets()]
    groups.sort(key=lambda g: min(d.label(e) for e in g))
    groups.extend(frozenset({("free", k)}) for k in range(d.free_loops))
    return tuple(groups)


def _require_classical(d: Diagram) -> None:
    if d.virtual:
        raise NonPlanar("Khovanov homology is computed for classical diagrams only")


def cube_states(d: Diagram) -> List[CubeState]:
    """All states in bit-lexicographic order."""
    return [CubeState(bits, state_loops(d, bits)) for bits in product((0, 1), repeat=len(d.classical))]


def _quantum(labels: Sequence[int], b: int, n_plus: int, n_minus: int) -> int:
    ones = labels.count(0)
    return (ones - (len(labels) - ones)) + b + n_plus - 2 * n_minus


def _loop_index(loops: Sequence[Loop], end: End) -> int:
    for k, loop in enumerate(loops):
        if end in loop:
            return k
    raise KeyError(end)


def _edge_map(d: Diagram, src: CubeState, dst: CubeState, c: int) -> Dict[Tuple[int, ...], List[Tuple[int, ...]]]:
    """Image of every labeling of `src` under the merge or split at crossing c."""
    p, q = _loop_index(src.loops, (c, 0)), _loop_index(src.loops, (c, 2))
    image = {}
    if p != q:
        merged = _loop_index(dst.loops, (c, 0))
        rest = {k: dst.loops.index(loop) for k, loop in enumerate(src.loops) if k not in (p, q)}
        for labels in product((0, 1), repeat=len(src.loops)):
            total = labels[p] + labels[q]
            if total == 2:
                image[labels] = []
                continue
            out = [0] * len(dst.loops)
            out[merged] = total
            for k, k2 in rest.items():
                out[k2] = labels[k]
            image[labels] = [tuple(out)]
    else:
        left, right = _loop_index(dst.loops, (c, 0)), _loop_index(dst.loops, (c, 1))
        rest = {k: dst.loops.index(loop) for k, loop in enumerate(src.loops) if k != p}
        for labels in product((0, 1), repeat=len(src.loops)):
            pairs = [(0, 1), (1, 0)] if labels[p] == 0 else [(1, 1)]
            outs = []
            for a, b in pairs:
                out = [0] * len(dst.loops)
                out[left], out[right] = a, b
                for k, k2 in rest.items():
                    out[k2] = labels[k]
                outs.append(tuple(out))
            image[labels] = outs
    return image


def build_complex(d: Diagram, max_crossings: Optional[int] = None, check: bool = True) -> KhovanovComplex:
    d.require_oriented()
    _require_classical(d)
    n = len(d.classical)
    enforce_cap("khovanov", n, max_crossings)
    signs = [d.signs[c] for c in d.classical]
    n_plus, n_minus = signs.count(1), signs.count(-1)

    states = cube_states(d)
    by_bits = {s.bits: s for s in states}
    generators: Dict[int, List[Generator]] = {}
    index: Dict[Tuple[Bits, Tuple[int, ...]], int] = {}
    for s in states:
        i = s.tier - n_minus
        bucket = generators.setdefault(i, [])
        for labels in product((0, 1), repeat=len(s.loops)):
            index[(s.bits, labels)] = len(bucket)
            bucket.append(Generator(s.bits, labels, i, _quantum(labels, s.tier, n_plus, n_minus)))

    entries: Dict[int, Dict[Tuple[int, int], int]] = {}
    for s in states:
        i = s.tier - n_minus
        for k, bit in enumerate(s.bits):
            if bit:
                continue
            sign = -1 if s.bits[:k].count(0) % 2 else 1
            dst = by_bits[s.bits[:k] + (1,) + s.bits[k + 1:]]
            block = entries.setdefault(i, {})
            for labels, outs in _edge_map(d, s, dst, d.classical[k]).items():
                col = index[(s.bits, labels)]
                for out in outs:
                    row = index[(dst.bits, out)]
                    block[(row, col)] = block.get((row, col), 0) + sign

    differentials = {}
    for i in sorted(generators):
        rows = len(generators.get(i + 1, []))
        differentials[i] = IntMatrix(rows, len(generators[i]), entries.get(i, {}))
    cx = KhovanovComplex(n_plus, n_minus, generators, differentials)
    logger.debug("khovanov complex: %d states, ranks %s", len(states), cx.ranks())
    if check:
        check_d_squared(cx)
    return cx


def check_d_squared(cx: KhovanovComplex) -> None:
    for i, dm in cx.differentials.items():
        nxt = cx.differentials.get(i + 1)
        if nxt is None or not dm.rows:
            continue
        if not (nxt @ dm).is_zero():
            raise ComplexError(f"d o d is not zero from degree {i}")


def _block(cx: KhovanovComplex, i: int, j: int) -> IntMatrix:
    """Differential C^{i,j} -> C^{i+1,j}."""
    cols = [k for k, g in enumerate(cx.generators.get(i, [])) if g.j == j]
    rows = [k for k, g in enumerate(cx.generators.get(i + 1, [])) if g.j == j]
    dm = cx.differentials.get(i)
    if dm is None or not rows or not cols:
        return IntMatrix.zeros(len(rows), len(cols))
    return dm.submatrix(rows, cols)


def homology(cx: KhovanovComplex) -> HomologyTable:
    table = HomologyTable()
    degrees = sorted({(g.i, g.j) for gens in cx.generators.values() for g in gens})
    for i, j in degrees:
        dim = sum(1 for g in cx.generators[i] if g.j == j)
        out_rank = smith_normal_form(_block(cx, i, j)).rank
        incoming = smith_normal_form(_block(cx, i - 1, j))
        free = dim - out_rank - incoming.rank
        torsion = tuple(incoming.torsion)
        if free or torsion:
            table.groups[(i, j)] = HomologyGroup(free, torsion)
    logger.debug("homology in %d bidegrees", len(table.groups))
    return table


def graded_euler(cx: KhovanovComplex) -> LaurentPoly:
    counts: Counter = Counter()
    for i, gens in cx.generators.items():
        for g in gens:
            counts[g.j] += -1 if i % 2 else 1
    return poly_sum(LaurentPoly.var("q", j, k) for j, k in counts.items() if k)


def homology_euler(table: HomologyTable) -> LaurentPoly:
    out = LaurentPoly.zero()
    for (i, j), g in table.groups.items():
        out = out + LaurentPoly.var("q", j, g.free * (-1) ** (i % 2))
    return out


def poincare_polynomial(table: HomologyTable) -> LaurentPoly:
    """Sum of free rank * t^i q^j."""
    out = LaurentPoly.zero()
    for (i, j), g in table.groups.items():
        if g.free:
            out = out + LaurentPoly.monomial(g.free, t=i, q=j)
    return out


def khovanov_homology(d: Diagram, max_crossings: Optional[int] = None) -> HomologyTable:
    return homology(build_complex(d, max_crossings))


def chain_ranks_by_tier(d: Diagram, max_crossings: Optional[int] = None) -> List[int]:
    """Number of generators in each tier b = 0..n (unshifted)."""
    _require_classical(d)
    n = len(d.classical)
    enforce_cap("khovanov", n, max_crossings)
    ranks = [0] * (n + 1)
    for s in cube_states(d):
        ranks[s.tier] += 2 ** len(s.loops)
    return ranks


def mapping_cone_counts(d: Diagram, c: int) -> Tuple[List[int], List[int], List[int]]:
    """Tier ranks of d and of its A- and B-smoothings at crossing c."""
    whole = chain_ranks_by_tier(d)
    a_side = chain_ranks_by_tier(smooth_crossing(d, c, "A"))
    b_side = chain_ranks_by_tier(smooth_crossing(d, c, "B"))
    return whole, a_side, b_side


def mapping_cone_holds(d: Diagram, c: int) -> bool:
    """rank C^b(K) = rank C^b(K_A) + rank C^(b-1)(K_B) for every tier b."""
    whole, a_side, b_side = mapping_cone_counts(d, c)
    for b, total in enumerate(whole):
        left = a_side[b] if b < len(a_side) else 0
        right = b_side[b - 1] if 0 < b <= len(b_side) else 0
        if total != left + right:
            return False
    return True


# Frobenius algebra V = Z[x]/(x^2) on the basis (1, x)

UNIT = np.array([[1], [0]], dtype=object)
COUNIT = np.array([[0, 1]], dtype=object)
MULT = np.array([[1, 0, 0, 0], [0, 1, 1, 0]], dtype=object)
COMULT = np.array([[0, 0], [1, 0], [1, 0], [0, 1]], dtype=object)
_ID = np.eye(2, dtype=object)
_SWAP = np.array([[1, 0, 0, 0], [0, 0, 1, 0], [0, 1, 0, 0], [0, 0, 0, 1]], dtype=object)


def check_frobenius() -> List[Tuple[str, bool]]:
    """Algebra, coalgebra and Frobenius identities for the merge and split maps."""
    kron = np.kron
    eq = np.array_equal
    checks = [
        ("associativity", eq(MULT @ kron(MULT, _ID), MULT @ kron(_ID, MULT))),
        ("coassociativity", eq(kron(COMULT, _ID) @ COMULT, kron(_ID, COMULT) @ COMULT)),
        ("commutativity", eq(MULT @ _SWAP, MULT)),
        ("cocommutativity", eq(_SWAP @ COMULT, COMULT)),
        ("unit", eq(MULT @ kron(UNIT, _ID), _ID)),
        ("counit", eq(kron(COUNIT, _ID) @ COMULT, _ID)),
        ("frobenius", eq(COMULT @ MULT, kron(_ID, MULT) @ kron(COMULT, _ID))),
        ("x^2 = 0", eq(MULT @ np.array([[0], [0], [0], [1]], dtype=object), np.zeros((2, 1), dtype=object))),
    ]
    return [(name, bool(ok)) for name, ok in checks]

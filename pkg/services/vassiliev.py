"""
Chord diagrams, four-term relations, Lie algebra weight systems and the
finite-type coefficients of the Jones polynomial at t = e^x.

A chord diagram is a cyclic word in which every chord label occurs twice. The
canonical form relabels chords by first appearance and takes the smallest such
word over all rotations (no reflections).
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import FrozenSet, List, Optional, Sequence, Tuple

import numpy as np

from services.bracket import normalized_jones
from services.diagram import Diagram, opposite, switch_crossing
from services.errors import InconsistentCode, MultiComponent, NonPlanar
from services.limits import enforce_cap

logger = logging.getLogger(__name__)


def _relabel(word):
    names = {}
    out = []
    for x in word:
        if x not in names:
            names[x] = len(names) + 1
        out.append(names[x])
    return tuple(out)


def canonical_chord_word(word: Sequence) -> Tuple[int, ...]:
    if not word:
        return ()
    rotations = (_relabel(tuple(word[k:]) + tuple(word[:k])) for k in range(len(word)))
    return min(rotations)


@dataclass(frozen=True, order=True)
class ChordDiagram:
    word: Tuple[int, ...]

    def __post_init__(self):
        counts = {}
        for x in self.word:
            counts[x] = counts.get(x, 0) + 1
        if any(v != 2 for v in counts.values()):
            raise InconsistentCode(f"every chord needs exactly two endpoints: {self.word}")
        object.__setattr__(self, "word", canonical_chord_word(self.word))

    @classmethod
    def parse(cls, text: str) -> "ChordDiagram":
        tokens = text.split() if " " in text.strip() else list(text.strip())
        return cls(tuple(int(x) for x in tokens))

    @property
    def degree(self) -> int:
        return len(self.word) // 2

    def endpoints(self, chord: int) -> Tuple[int, int]:
        first = self.word.index(chord)
        return first, self.word.index(chord, first + 1)

    def to_text(self) -> str:
        sep = "" if self.degree < 10 else " "
        return sep.join(map(str, self.word))

    def __str__(self) -> str:
        return self.to_text()


@dataclass(frozen=True)
class NodalDiagram:
    diagram: Diagram
    nodes: FrozenSet[int]

    def __post_init__(self):
        object.__setattr__(self, "nodes", frozenset(self.nodes))
        bad = [c for c in self.nodes if c not in self.diagram.classical]
        if bad:
            raise InconsistentCode(f"nodes must be classical crossings, got {sorted(bad)}")


def chord_from_nodal(nd: NodalDiagram, start_edge: Optional[int] = None) -> ChordDiagram:
    """Walk the knot from `start_edge` (default: lowest label) and record node encounters."""
    d = nd.diagram
    if d.num_components != 1:
        raise MultiComponent(f"chord diagrams need a knot, got {d.num_components} components")
    if not d.crossings:
        return ChordDiagram(())
    label = min(d.edges) if start_edge is None else start_edge
    a, b = d.edge_ends[label]
    u = b if d.heads is not None and a in d.heads else a
    start = u
    word = []
    while True:
        v = d.partner(u)
        if v[0] in nd.nodes:
            word.append(v[0])
        u = opposite(v)
        if u == start:
            break
    return ChordDiagram(tuple(word))


def all_chord_diagrams(n: int, max_degree: Optional[int] = None) -> List[ChordDiagram]:
    enforce_cap("degree", n, max_degree)
    found = set()

    def place(word, label):
        if label > n:
            found.add(canonical_chord_word(word))
            return
        first = word.index(0)
        for second in range(first + 1, 2 * n):
            if word[second] == 0:
                word[first] = word[second] = label
                place(word, label + 1)
                word[first] = word[second] = 0

    place([0] * (2 * n), 1)
    return [ChordDiagram(w) for w in sorted(found)]


@dataclass(frozen=True)
class FourTermRelation:
    """sum(sign * diagram) = 0."""

    terms: Tuple[Tuple[int, ChordDiagram], ...]

    def to_json(self) -> list:
        return [{"sign": s, "diagram": cd.to_text()} for s, cd in self.terms]


def _slides(word, c, pos):
    moving = word[pos]
    rest = word[:pos] + word[pos + 1:]
    p = rest.index(c)
    q = rest.index(c, p + 1)
    out = []
    for k in (p, p + 1, q, q + 1):
        out.append(rest[:k] + (moving,) + rest[k:])
    # before P, after P, before Q, after Q
    return tuple(out)


def four_term_relations(n: int, max_degree: Optional[int] = None) -> List[FourTermRelation]:
    enforce_cap("degree", n, max_degree)
    seen = set()
    relations = []
    for cd in all_chord_diagrams(n, max_degree):
        w = cd.word
        for c in range(1, n + 1):
            for pos, x in enumerate(w):
                if x == c:
                    continue
                before_p, after_p, before_q, after_q = (ChordDiagram(s) for s in _slides(w, c, pos))
                terms = ((1, before_p), (-1, after_p), (1, before_q), (-1, after_q))
                net = {}
                for s, t in terms:
                    net[t] = net.get(t, 0) + s
                vector = tuple(sorted((t.word, s) for t, s in net.items() if s))
                if not vector:
                    continue
                negated = tuple(sorted((word, -s) for word, s in vector))
                key = min(vector, negated)
                if key in seen:
                    continue
                seen.add(key)
                relations.append(FourTermRelation(terms))
    logger.debug("%d four-term relations in degree %d", len(relations), n)
    return relations


# weight systems


@dataclass
class WeightSystem:
    name: str
    structure: np.ndarray
    insertions: List[np.ndarray]
    metric: np.ndarray

    @property
    def dim(self) -> int:
        return len(self.insertions)

    @property
    def rep_dim(self) -> int:
        return self.insertions[0].shape[0]


def levi_civita():
    eps = np.zeros((3, 3, 3), dtype=object)
    for a, b, c in ((0, 1, 2), (1, 2, 0), (2, 0, 1)):
        eps[a, b, c] = 1
        eps[a, c, b] = -1
    return eps


def so3_weight_system() -> WeightSystem:
    """so(3), f_abc = eps_abc, adjoint insertions (T_a)_bc = -eps_abc, metric delta."""
    eps = levi_civita()
    insertions = [np.array(-eps[a], dtype=object) for a in range(3)]
    return WeightSystem("so3", eps, insertions, np.eye(3, dtype=int).astype(object))


def check_jacobi(ws: WeightSystem) -> List[Tuple[str, bool]]:
    f = ws.structure
    D = ws.dim
    antisym = all(f[a, b, c] == -f[b, a, c] for a, b, c in product(range(D), repeat=3))
    jacobi = True
    for a, b, c, e in product(range(D), repeat=4):
        total = sum(
            f[a, b, k] * f[k, c, e] + f[b, c, k] * f[k, a, e] + f[c, a, k] * f[k, b, e] for k in range(D)
        )
        if total:
            jacobi = False
            break
    closure = True
    T = ws.insertions
    for a, b in product(range(D), repeat=2):
        lhs = T[a].dot(T[b]) - T[b].dot(T[a])
        rhs = sum((f[a, b, k] * T[k] for k in range(D)), np.zeros_like(T[0]))
        if not np.array_equal(lhs, rhs):
            closure = False
            break
    return [("antisymmetry", antisym), ("jacobi", jacobi), ("commutator closure", closure)]


def lie_weight(cd: ChordDiagram, ws: WeightSystem) -> int:
    """Sum over index pairs per chord of metric factors times the trace of the insertion product."""
    identity = np.eye(ws.rep_dim, dtype=int).astype(object)
    if not cd.word:
        return int(np.trace(identity))
    pairs = [(a, b) for a in range(ws.dim) for b in range(ws.dim) if ws.metric[a, b]]
    n = cd.degree
    total = 0
    for choice in product(pairs, repeat=n):
        factor = 1
        for a, b in choice:
            factor *= ws.metric[a, b]
        met = set()
        m = identity
        for x in cd.word:
            a, b = choice[x - 1]
            m = m.dot(ws.insertions[b if x in met else a])
            met.add(x)
        total += factor * np.trace(m)
    return int(total)


def relation_value(rel, ws):
    return sum(s * lie_weight(cd, ws) for s, cd in rel.terms)


# finite type


def jones_vassiliev_coeffs(d: Diagram, n_max: int, max_crossings: Optional[int] = None) -> List[Fraction]:
    """Taylor coefficients of the Jones polynomial at t = e^x."""
    if d.virtual:
        raise NonPlanar("finite-type coefficients are taken on classical diagrams only")
    return normalized_jones(d, max_crossings).jones.series_coeffs("t", n_max)


def finite_type_defect(nd: NodalDiagram, n: int, max_nodes: Optional[int] = None) -> Fraction:
    """Alternating sum over all +/- resolutions of the nodes of the n-th Jones coefficient."""
    d = nd.diagram
    d.require_oriented()
    nodes = sorted(nd.nodes)
    enforce_cap("nodes", len(nodes), max_nodes)
    total = Fraction(0)
    for signs in product((1, -1), repeat=len(nodes)):
        resolved = d
        for c, s in zip(nodes, signs):
            if resolved.sign(c) != s:
                resolved = switch_crossing(resolved, c)
        coeff = jones_vassiliev_coeffs(resolved, n)[n]
        total += coeff if signs.count(-1) % 2 == 0 else -coeff
    return total

"""
Combinatorial 4-valent diagrams.

A crossing lists the labels of its four edge-ends in counterclockwise order.
Strands continue through opposite slots (s, s+2). For a classical crossing the
under strand always sits on slots 0 and 2 and the over strand on slots 1 and 3;
a virtual crossing is a flat pass-through. Orientation, when present, is the set
of ends at which an edge arrives (``heads``).

Smoothings: the A-smoothing joins slots (0,1) and (2,3), the B-smoothing joins
(0,3) and (1,2). With this choice a positive curl contributes -A^3 to the bracket.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from functools import cached_property
from typing import Callable, Dict, FrozenSet, Iterable, List, Mapping, Optional, Sequence, Set, Tuple

from networkx.utils import UnionFind

from services.errors import (
    DisconnectedDiagram,
    IncompleteChoice,
    InconsistentCode,
    Unoriented,
)

logger = logging.getLogger(__name__)

CLASSICAL = "classical"
VIRTUAL = "virtual"

End = Tuple[int, int]

A_PAIRS = ((0, 1), (2, 3))
B_PAIRS = ((0, 3), (1, 2))
V_PAIRS = ((0, 2), (1, 3))


def opposite(end: End) -> End:
    return end[0], (end[1] + 2) % 4


def smoothing_partner(slot: int, choice: str) -> int:
    if choice == "A":
        return slot ^ 1
    if choice == "B":
        return 3 - slot
    return (slot + 2) % 4


@dataclass(frozen=True)
class Crossing:
    kind: str
    ends: Tuple[int, int, int, int]

    def __post_init__(self):
        if self.kind not in (CLASSICAL, VIRTUAL):
            raise InconsistentCode(f"unknown crossing kind {self.kind!r}")
        if len(self.ends) != 4:
            raise InconsistentCode(f"crossing needs 4 ends, got {self.ends}")
        object.__setattr__(self, "ends", tuple(int(e) for e in self.ends))

    @property
    def is_classical(self) -> bool:
        return self.kind == CLASSICAL

    @property
    def over_pair(self) -> Optional[Tuple[int, int]]:
        return (1, 3) if self.kind == CLASSICAL else None


@dataclass(frozen=True)
class Diagram:
    crossings: Tuple[Crossing, ...] = ()
    free_loops: int = 0
    heads: Optional[FrozenSet[End]] = None

    def __post_init__(self):
        object.__setattr__(self, "crossings", tuple(self.crossings))
        if self.heads is not None:
            object.__setattr__(self, "heads", frozenset(self.heads))
        uses: Dict[int, List[End]] = {}
        for i, x in enumerate(self.crossings):
            for s, label in enumerate(x.ends):
                uses.setdefault(label, []).append((i, s))
        bad = sorted(label for label, ends in uses.items() if len(ends) != 2)
        if bad:
            raise InconsistentCode(f"edge labels used a number of times other than 2: {bad}")
        if self.free_loops < 0:
            raise InconsistentCode("negative free loop count")
        if self.heads is not None:
            for label, (a, b) in uses.items():
                if (a in self.heads) == (b in self.heads):
                    raise InconsistentCode(f"edge {label} is not oriented consistently")
            for i in range(len(self.crossings)):
                for s in (0, 1):
                    if ((i, s) in self.heads) == ((i, s + 2) in self.heads):
                        raise InconsistentCode(f"strand through crossing {i} is not oriented consistently")

    # structure

    @cached_property
    def edge_ends(self) -> Dict[int, Tuple[End, End]]:
        uses: Dict[int, List[End]] = {}
        for i, x in enumerate(self.crossings):
            for s, label in enumerate(x.ends):
                uses.setdefault(label, []).append((i, s))
        return {label: (ends[0], ends[1]) for label, ends in uses.items()}

    @cached_property
    def partner_map(self) -> Dict[End, End]:
        out = {}
        for a, b in self.edge_ends.values():
            out[a] = b
            out[b] = a
        return out

    def partner(self, end: End) -> End:
        return self.partner_map[end]

    def label(self, end: End) -> int:
        return self.crossings[end[0]].ends[end[1]]

    @property
    def edges(self) -> List[int]:
        return sorted(self.edge_ends)

    @property
    def num_crossings(self) -> int:
        return len(self.crossings)

    @cached_property
    def classical(self) -> Tuple[int, ...]:
        return tuple(i for i, x in enumerate(self.crossings) if x.kind == CLASSICAL)

    @cached_property
    def virtual(self) -> Tuple[int, ...]:
        return tuple(i for i, x in enumerate(self.crossings) if x.kind == VIRTUAL)

    @property
    def is_oriented(self) -> bool:
        return self.heads is not None

    @property
    def is_classical(self) -> bool:
        return not self.virtual

    def ends(self) -> Iterable[End]:
        for i in range(len(self.crossings)):
            for s in range(4):
                yield i, s

    # orientation

    def require_oriented(self) -> FrozenSet[End]:
        if self.heads is None:
            raise Unoriented("operation needs an oriented diagram")
        return self.heads

    def is_head(self, end: End) -> bool:
        return end in self.require_oriented()

    def sign(self, c: int) -> int:
        """+1 / -1 for a classical crossing, 0 for a virtual one."""
        heads = self.require_oriented()
        if self.crossings[c].kind == VIRTUAL:
            return 0
        i = 0 if (c, 0) in heads else 2
        j = 1 if (c, 1) in heads else 3
        return 1 if j == (i + 3) % 4 else -1

    def incoming_under_slot(self, c: int) -> int:
        return 0 if (c, 0) in self.require_oriented() else 2

    @cached_property
    def signs(self) -> Tuple[int, ...]:
        return tuple(self.sign(c) for c in range(len(self.crossings)))

    # components

    @cached_property
    def strands(self) -> List[List[End]]:
        """Each closed strand as its list of departing ends, in orientation order when oriented."""
        seen: Set[End] = set()
        out = []
        for start in sorted(self.partner_map):
            if start in seen:
                continue
            if self.heads is not None and start in self.heads:
                start = opposite(start)
                if start in seen:
                    continue
            walk = []
            u = start
            while True:
                walk.append(u)
                seen.add(u)
                v = self.partner_map[u]
                seen.add(v)
                u = opposite(v)
                if u == start:
                    break
            out.append(walk)
        return out

    @property
    def num_components(self) -> int:
        return len(self.strands) + self.free_loops

    def component_of_edge(self) -> Dict[int, int]:
        out = {}
        for k, walk in enumerate(self.strands):
            for u in walk:
                out[self.label(u)] = k
        return out

    def is_connected(self) -> bool:
        if not self.crossings:
            return self.free_loops <= 1
        if self.free_loops:
            return False
        uf = UnionFind(range(len(self.crossings)))
        for a, b in self.edge_ends.values():
            uf.union(a[0], b[0])
        return len(list(uf.to_sets())) == 1

    def require_connected(self) -> None:
        if not self.is_connected():
            raise DisconnectedDiagram("diagram is not connected")

    def key(self) -> str:
        """Deterministic text key used for memoization and caching."""
        parts = [("X" if x.kind == CLASSICAL else "V") + "(" + ",".join(map(str, x.ends)) + ")" for x in self.crossings]
        heads = "" if self.heads is None else ",".join(f"{c}.{s}" for c, s in sorted(self.heads))
        return " ".join(parts) + f" |{self.free_loops}|{heads}"

    def __repr__(self) -> str:
        return f"Diagram({self.key()!r})"


def writhe(d: Diagram) -> int:
    d.require_oriented()
    return sum(d.signs)


def components(d: Diagram) -> List[List[int]]:
    """Edge labels of each component in walk order; free loops are empty lists."""
    out = [[d.label(u) for u in walk] for walk in d.strands]
    out.extend([] for _ in range(d.free_loops))
    return out


def linking_number(d: Diagram) -> int:
    """Half the signed count of crossings between the two components of a 2-component link."""
    d.require_oriented()
    if d.num_components != 2:
        raise InconsistentCode(f"linking number needs 2 components, got {d.num_components}")
    comp = d.component_of_edge()
    total = 0
    for c in d.classical:
        under, over = d.crossings[c].ends[0], d.crossings[c].ends[1]
        if comp.get(under) != comp.get(over):
            total += d.signs[c]
    return total // 2


@dataclass(frozen=True)
class State:
    choice: Mapping[int, str]
    loops: Tuple[Tuple[int, ...], ...]
    loop_count: int

    @property
    def b_count(self) -> int:
        return sum(1 for v in self.choice.values() if v == "B")

    @property
    def a_count(self) -> int:
        return sum(1 for v in self.choice.values() if v == "A")


def _check_choice(d: Diagram, choice: Mapping[int, str]) -> None:
    if set(choice) != set(d.classical):
        raise IncompleteChoice(f"choice covers {sorted(choice)}, classical crossings are {list(d.classical)}")
    bad = {k: v for k, v in choice.items() if v not in ("A", "B")}
    if bad:
        raise IncompleteChoice(f"smoothing labels must be A or B: {bad}")


def state_unions(d: Diagram, choice: Mapping[int, str]) -> List[Tuple[End, End]]:
    pairs: List[Tuple[End, End]] = list(d.edge_ends.values())
    for c, x in enumerate(d.crossings):
        table = V_PAIRS if x.kind == VIRTUAL else (A_PAIRS if choice[c] == "A" else B_PAIRS)
        pairs.extend(((c, s), (c, t)) for s, t in table)
    return pairs


def resolve_state(d: Diagram, choice: Mapping[int, str], order: Optional[Sequence[int]] = None) -> State:
    """Smooth every classical crossing per `choice`; virtual crossings pass through.

    `order` permutes the union operations; the loops found do not depend on it.
    """
    _check_choice(d, choice)
    pairs = state_unions(d, choice)
    if order is not None:
        pairs = [pairs[i] for i in order]
    uf = UnionFind(list(d.ends()))
    for a, b in pairs:
        uf.union(a, b)
    loops = sorted(tuple(sorted({d.label(e) for e in group})) for group in uf.to_sets())
    loops.extend(() for _ in range(d.free_loops))
    return State(choice=dict(choice), loops=tuple(loops), loop_count=len(loops))


class LoopCounter:
    """Array-backed loop counting for the state-sum hot loop.

    Ends are numbered 4*c + s. `count(bits)` takes a B-choice bit per classical
    crossing (in `d.classical` order) and returns the number of loops.
    """

    def __init__(self, d: Diagram):
        self.d = d
        n = 4 * len(d.crossings)
        self.size = n
        self.edge = [0] * n
        for (c1, s1), (c2, s2) in d.edge_ends.values():
            self.edge[4 * c1 + s1] = 4 * c2 + s2
            self.edge[4 * c2 + s2] = 4 * c1 + s1
        self.position = {c: k for k, c in enumerate(d.classical)}
        self.kinds = [x.kind for x in d.crossings]

    def through(self, bits: Sequence[int]) -> List[int]:
        out = [0] * self.size
        for c, kind in enumerate(self.kinds):
            if kind == VIRTUAL:
                choice = "V"
            else:
                choice = "B" if bits[self.position[c]] else "A"
            for s in range(4):
                out[4 * c + s] = 4 * c + smoothing_partner(s, choice)
        return out

    def count(self, bits: Sequence[int]) -> int:
        through = self.through(bits)
        seen = bytearray(self.size)
        loops = 0
        edge = self.edge
        for start in range(self.size):
            if seen[start]:
                continue
            loops += 1
            u = start
            while not seen[u]:
                seen[u] = 1
                v = edge[u]
                seen[v] = 1
                u = through[v]
        return loops + self.d.free_loops


def trace_loops(d: Diagram, choice: Mapping[int, str]) -> List[List[Tuple[int, int, int]]]:
    """Walk every state loop; each step is (crossing, arrival slot, departure slot)."""
    _check_choice(d, choice)
    seen: Set[End] = set()
    loops = []
    for start in sorted(d.partner_map):
        if start in seen:
            continue
        steps = []
        u = start
        while u not in seen:
            seen.add(u)
            v = d.partner_map[u]
            seen.add(v)
            c, s = v
            kind = d.crossings[c].kind
            t = smoothing_partner(s, "V" if kind == VIRTUAL else choice[c])
            steps.append((c, s, t))
            u = (c, t)
        loops.append(steps)
    return loops


# surgery


class Surgery:
    """Mutable working copy used by codecs, moves and smoothings.

    Crossing ids are stable integers; `freeze` renumbers them in id order,
    relabels edges along strands and re-propagates orientation from the ends
    whose direction is known.
    """

    def __init__(self, d: Optional[Diagram] = None):
        self.kinds: Dict[int, str] = {}
        self.partner: Dict[End, End] = {}
        self.free_loops = 0
        self.oriented = False
        self.status: Dict[End, bool] = {}
        self._next = 0
        if d is not None:
            for i, x in enumerate(d.crossings):
                self.kinds[i] = x.kind
            self.partner = dict(d.partner_map)
            self.free_loops = d.free_loops
            self.oriented = d.heads is not None
            if d.heads is not None:
                self.status = {e: e in d.heads for e in d.partner_map}
            self._next = len(d.crossings)

    def new_crossing(self, kind: str) -> int:
        c = self._next
        self._next += 1
        self.kinds[c] = kind
        return c

    def connect(self, a: End, b: End) -> None:
        self.partner[a] = b
        self.partner[b] = a

    def remove(self, crossings: Iterable[int]) -> None:
        """Drop crossings; their outside neighbours are left dangling for the caller to reconnect."""
        removed = set(crossings)
        for e in [e for e in self.partner if e[0] in removed]:
            other = self.partner.pop(e)
            if other[0] not in removed:
                self.partner.pop(other, None)
            self.status.pop(e, None)
        for c in removed:
            self.kinds.pop(c, None)

    def dissolve(self, crossings: Iterable[int], pairing: Mapping[int, Mapping[int, int]]) -> None:
        """Remove `crossings`, joining each slot to `pairing[c][slot]` inside the removed set."""
        removed = set(crossings)
        inside = {e for e in self.partner if e[0] in removed}
        old = {e: self.partner[e] for e in inside}
        visited: Set[End] = set()
        joins = []
        for x, y in list(self.partner.items()):
            if x[0] in removed or y[0] not in removed:
                continue
            cur = y
            while True:
                visited.add(cur)
                nxt = (cur[0], pairing[cur[0]][cur[1]])
                visited.add(nxt)
                w = old[nxt]
                if w[0] not in removed:
                    break
                cur = w
            joins.append((x, w))
        for e in inside:
            self.partner.pop(e, None)
            self.status.pop(e, None)
        for c in removed:
            self.kinds.pop(c, None)
        for x, w in joins:
            # both directions were recorded; connect once
            if self.partner.get(x) != w:
                self.connect(x, w)
        # closed loops lying entirely inside the removed crossings
        rest = inside - visited
        while rest:
            start = min(rest)
            cur = start
            while True:
                rest.discard(cur)
                nxt = (cur[0], pairing[cur[0]][cur[1]])
                rest.discard(nxt)
                cur = old[nxt]
                if cur == start:
                    break
            self.free_loops += 1

    def freeze(self) -> Diagram:
        ids = sorted(self.kinds)
        index = {c: i for i, c in enumerate(ids)}
        partner = {(index[a[0]], a[1]): (index[b[0]], b[1]) for a, b in self.partner.items()}
        status = {(index[e[0]], e[1]): v for e, v in self.status.items() if e[0] in index}
        missing = [(c, s) for c in range(len(ids)) for s in range(4) if (c, s) not in partner]
        if missing:
            raise InconsistentCode(f"dangling crossing ends {missing}")

        labels: Dict[End, int] = {}
        heads: Set[End] = set()
        next_label = 1
        for start in sorted(partner):
            if start in labels:
                continue
            walk_depart, walk_arrive = [], []
            u = start
            while True:
                walk_depart.append(u)
                v = partner[u]
                walk_arrive.append(v)
                u = opposite(v)
                if u == start:
                    break
            forward = True
            for e in walk_depart + walk_arrive:
                if e in status:
                    forward = status[e] == (e in set(walk_arrive))
                    break
            if not forward:
                walk_depart, walk_arrive = list(reversed(walk_arrive)), list(reversed(walk_depart))
            for u, v in zip(walk_depart, walk_arrive):
                labels[u] = labels[v] = next_label
                next_label += 1
                heads.add(v)
        crossings = tuple(
            Crossing(self.kinds[c], tuple(labels[(index[c], s)] for s in range(4))) for c in ids
        )
        return Diagram(crossings, self.free_loops, frozenset(heads) if self.oriented else None)


def distant_union(d1: Diagram, d2: Diagram) -> Diagram:
    """Disjoint union; the only constructor that yields a disconnected diagram on purpose."""
    offset = max(d1.edges, default=0)
    shift = len(d1.crossings)
    crossings = d1.crossings + tuple(Crossing(x.kind, tuple(e + offset for e in x.ends)) for x in d2.crossings)
    heads = None
    if d1.heads is not None and d2.heads is not None:
        heads = set(d1.heads) | {(c + shift, s) for c, s in d2.heads}
    elif d1.crossings and d2.crossings and (d1.heads is None) != (d2.heads is None):
        heads = None
    elif d1.heads is not None and not d2.crossings:
        heads = set(d1.heads)
    elif d2.heads is not None and not d1.crossings:
        heads = {(c + shift, s) for c, s in d2.heads}
    return Diagram(crossings, d1.free_loops + d2.free_loops, heads)


def unknot(loops: int = 1) -> Diagram:
    return Diagram((), loops, frozenset())


def switch_crossing(d: Diagram, c: int) -> Diagram:
    """Exchange over and under at a classical crossing."""
    x = d.crossings[c]
    if x.kind != CLASSICAL:
        raise InconsistentCode(f"crossing {c} is virtual")
    crossings = list(d.crossings)
    crossings[c] = Crossing(CLASSICAL, x.ends[1:] + x.ends[:1])
    heads = None
    if d.heads is not None:
        heads = {(k, (s - 1) % 4) if k == c else (k, s) for k, s in d.heads}
    return Diagram(tuple(crossings), d.free_loops, heads)


def mirror(d: Diagram) -> Diagram:
    out = d
    for c in d.classical:
        out = switch_crossing(out, c)
    return out


def smooth_crossing(d: Diagram, c: int, how: str) -> Diagram:
    """Remove crossing `c` by the A, B or orientation-respecting smoothing."""
    x = d.crossings[c]
    if x.kind != CLASSICAL:
        raise InconsistentCode(f"crossing {c} is virtual")
    if how in ("A", "B"):
        pairing = {s: smoothing_partner(s, how) for s in range(4)}
    elif how == "oriented":
        heads = d.require_oriented()
        i = 0 if (c, 0) in heads else 2
        j = 1 if (c, 1) in heads else 3
        pairing = {i: (j + 2) % 4, (j + 2) % 4: i, j: (i + 2) % 4, (i + 2) % 4: j}
    else:
        raise ValueError(f"unknown smoothing {how!r}")
    work = Surgery(d)
    if how != "oriented":
        work.oriented = False
        work.status = {}
    work.dissolve([c], {c: pairing})
    return work.freeze()


def orient_strands(
    d: Diagram,
    known: Mapping[End, bool],
    fallback: Optional[Callable[[List[End], Set[End]], Optional[bool]]] = None,
) -> Diagram:
    """Orient every strand of `d` from the ends whose direction is known (True = head).

    `fallback(walk, arrivals)` decides strands with no known end; it returns True to
    keep the walk direction. Contradictory data raises InconsistentCode.
    """
    heads: Set[End] = set()
    for walk in d.strands:
        arrivals = {d.partner(u) for u in walk}
        forward = None
        for e in list(walk) + sorted(arrivals):
            if e in known:
                forward = known[e] == (e in arrivals)
                break
        if forward is None and fallback is not None:
            forward = fallback(walk, arrivals)
        heads |= arrivals if forward in (None, True) else set(walk)
    return Diagram(d.crossings, d.free_loops, frozenset(heads))


def _allowed_rotations(kind: str) -> Tuple[int, ...]:
    return (0, 2) if kind == CLASSICAL else (0, 1, 2, 3)


def _component_code(d: Diagram, start: int, rot0: int) -> Tuple:
    order = [start]
    index = {start: 0}
    rot = {start: rot0}
    code = []
    k = 0
    while k < len(order):
        c = order[k]
        row = []
        for pos in range(4):
            s = (rot[c] + pos) % 4
            c2, s2 = d.partner((c, s))
            if c2 not in index:
                options = _allowed_rotations(d.crossings[c2].kind)
                rot[c2] = min(options, key=lambda r: (s2 - r) % 4)
                index[c2] = len(order)
                order.append(c2)
            head = None if d.heads is None else (c, s) in d.heads
            row.append((index[c2], (s2 - rot[c2]) % 4, head))
        code.append((d.crossings[c].kind, tuple(row)))
        k += 1
    return tuple(code)


def canonical_key(d: Diagram) -> Tuple:
    """Isomorphism invariant of the rotation system (relabeling and reordering)."""
    uf = UnionFind(range(len(d.crossings)))
    for a, b in d.edge_ends.values():
        uf.union(a[0], b[0])
    parts = []
    for group in uf.to_sets():
        best = None
        for c in group:
            for r in _allowed_rotations(d.crossings[c].kind):
                code = _component_code(d, c, r)
                if best is None or code < best:
                    best = code
        parts.append(best)
    return tuple(sorted(parts)), d.free_loops, d.heads is not None


def is_isomorphic(d1: Diagram, d2: Diagram) -> bool:
    return canonical_key(d1) == canonical_key(d2)


def sub_diagram(d: Diagram, crossings: Iterable[int]) -> Diagram:
    """The crossings in `crossings` (a union of connected pieces), relabeled."""
    keep = sorted(set(crossings))
    index = {c: i for i, c in enumerate(keep)}
    labels = sorted({label for c in keep for label in d.crossings[c].ends})
    relabel = {label: i + 1 for i, label in enumerate(labels)}
    xs = tuple(Crossing(d.crossings[c].kind, tuple(relabel[e] for e in d.crossings[c].ends)) for c in keep)
    heads = None if d.heads is None else frozenset((index[c], s) for c, s in d.heads if c in index)
    return Diagram(xs, 0, heads)


def split_pieces(d: Diagram) -> List[Diagram]:
    """Connected pieces of `d`; free loops become separate 0-crossing pieces."""
    uf = UnionFind(range(len(d.crossings)))
    for a, b in d.edge_ends.values():
        uf.union(a[0], b[0])
    groups = sorted((sorted(g) for g in uf.to_sets()), key=lambda g: g[0])
    pieces = [sub_diagram(d, g) for g in groups]
    pieces.extend(unknot() if d.heads is not None else Diagram((), 1, None) for _ in range(d.free_loops))
    return pieces

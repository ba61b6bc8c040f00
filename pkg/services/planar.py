"""
Faces of the rotation system and planarization by virtual crossings.

Faces are traced by the rule "arrive at slot a, leave by slot a+1"; the face
then lies to the right of every dart on it. The corner (c, a) is the sector
between slots a and a+1 of crossing c.
"""

from __future__ import annotations

import logging
from collections import deque
from dataclasses import dataclass
from typing import Dict, List, Mapping, Optional, Tuple

from services.diagram import VIRTUAL, Diagram, End, Surgery, distant_union, split_pieces
from services.errors import DisconnectedDiagram, NonPlanar

logger = logging.getLogger(__name__)


def trace_faces(crossings: List[int], partner: Mapping[End, End]) -> Dict[End, int]:
    """Face id of every departing end; unpaired ends are stubs poking into one face."""
    face_of: Dict[End, int] = {}
    fid = 0
    for c in crossings:
        for s in range(4):
            u = (c, s)
            if u in face_of:
                continue
            while u not in face_of:
                face_of[u] = fid
                v = partner.get(u, u)
                u = (v[0], (v[1] + 1) % 4)
            fid += 1
    return face_of


@dataclass(frozen=True)
class RegionComplex:
    """Faces as lists of corners; `corner_region[(c, a)]` is the face in the sector a..a+1."""

    regions: Tuple[Tuple[End, ...], ...]
    corner_region: Mapping[End, int]

    @property
    def count(self) -> int:
        return len(self.regions)


def genus(d: Diagram) -> int:
    """Genus of the surface carrying the rotation system of a connected diagram."""
    if not d.crossings:
        return 0
    faces = len(set(trace_faces(list(range(len(d.crossings))), d.partner_map).values()))
    v = len(d.crossings)
    e = 2 * v
    return (2 - v + e - faces) // 2


def regions(d: Diagram) -> RegionComplex:
    if d.virtual:
        raise NonPlanar("regions need a classical planar diagram")
    if not d.is_connected():
        raise DisconnectedDiagram("regions need a connected diagram")
    if not d.crossings:
        return RegionComplex(regions=((), ()), corner_region={})
    face_of = trace_faces(list(range(len(d.crossings))), d.partner_map)
    count = max(face_of.values()) + 1
    if count != len(d.crossings) + 2:
        raise NonPlanar(f"diagram has {count} faces, a planar one would have {len(d.crossings) + 2}")
    corners: Dict[int, List[End]] = {f: [] for f in range(count)}
    corner_region: Dict[End, int] = {}
    for u, f in face_of.items():
        v = d.partner(u)
        corners[f].append(v)
        corner_region[v] = f
    logger.debug("%d crossings, %d regions", len(d.crossings), count)
    return RegionComplex(regions=tuple(tuple(sorted(corners[f])) for f in range(count)), corner_region=corner_region)


def is_planar(d: Diagram) -> bool:
    return all(genus(piece) == 0 for piece in split_pieces(d) if piece.crossings)


class _Embedder:
    """Grows a planar map edge by edge, adding virtual crossings where an edge must cross."""

    def __init__(self, d: Diagram):
        self.d = d
        self.work = Surgery()
        self.work.oriented = d.heads is not None
        if d.heads is not None:
            self.work.status = {e: e in d.heads for e in d.partner_map}
        for c, x in enumerate(d.crossings):
            self.work.kinds[c] = x.kind
        self.work._next = len(d.crossings)
        self.placed = set()
        self.added = 0

    def _route(self, u: End, v: End) -> List[End]:
        ids = sorted(self.placed) + [c for c in sorted(self.work.kinds) if c >= len(self.d.crossings)]
        face_of = trace_faces(ids, self.work.partner)
        src, dst = face_of[u], face_of[v]
        if src == dst:
            return []
        by_face: Dict[int, List[End]] = {}
        for e, f in face_of.items():
            if e in self.work.partner:
                by_face.setdefault(f, []).append(e)
        prev: Dict[int, Optional[Tuple[int, End]]] = {src: None}
        queue = deque([src])
        while queue:
            f = queue.popleft()
            if f == dst:
                break
            for e in sorted(by_face.get(f, [])):
                g = face_of[self.work.partner[e]]
                if g not in prev:
                    prev[g] = (f, e)
                    queue.append(g)
        if dst not in prev:
            raise NonPlanar("no route between faces")
        darts = []
        f = dst
        while prev[f] is not None:
            f, e = prev[f]
            darts.append(e)
        return list(reversed(darts))

    def insert(self, u: End, v: End) -> None:
        if v[0] not in self.placed:
            self.placed.add(v[0])
            self.work.connect(u, v)
            return
        darts = self._route(u, v)
        last = u
        for p in darts:
            q = self.work.partner[p]
            w = self.work.new_crossing(VIRTUAL)
            self.work.connect(p, (w, 0))
            self.work.connect((w, 2), q)
            self.work.connect(last, (w, 1))
            last = (w, 3)
            self.added += 1
        self.work.connect(last, v)

    def run(self) -> Diagram:
        walks = [list(w) for w in self.d.strands]
        first = walks[0][0][0]
        self.placed.add(first)
        pending = walks
        while pending:
            for k, walk in enumerate(pending):
                starts = [i for i, u in enumerate(walk) if u[0] in self.placed]
                if starts:
                    break
            else:
                raise DisconnectedDiagram("strands do not meet")
            walk = pending.pop(k)
            i = starts[0]
            for u in walk[i:] + walk[:i]:
                self.insert(u, self.d.partner(u))
        logger.debug("planarized %d crossings with %d virtual crossings", len(self.d.crossings), self.added)
        return self.work.freeze()


def planarize(d: Diagram) -> Diagram:
    """Embed an abstract rotation system in the plane, adding virtual crossings as needed."""
    if not d.crossings:
        return d
    pieces = split_pieces(d)
    out = None
    for piece in pieces:
        flat = _Embedder(piece).run() if piece.crossings else piece
        out = flat if out is None else distant_union(out, flat)
    return out

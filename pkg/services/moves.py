"""
Reidemeister and virtual moves on rotation-system diagrams.

Every move is local to a face: R1 adds a curl on one edge, R2 pushes two darts
of a face across each other, R3 flips a triangular face. Sites are plain tuples
so they can be logged, stored and replayed.
"""

from __future__ import annotations

import logging
import random
from dataclasses import dataclass
from itertools import combinations
from typing import Dict, List, Optional, Sequence, Tuple

from services.diagram import CLASSICAL, VIRTUAL, Diagram, End, Surgery
from services.errors import PatternNotFound
from services.planar import trace_faces

logger = logging.getLogger(__name__)

CLASSICAL_MOVES = ("R1+", "R1-", "R2", "R2inv", "R3")
VIRTUAL_MOVES = ("V1", "V1inv", "V2", "V2inv", "V3", "Vmixed")
ALL_MOVES = CLASSICAL_MOVES + VIRTUAL_MOVES
GROWING = {"R1+": 1, "R2": 2, "V1": 1, "V2": 2}

# (first pass in, out), (second pass in, out)
_CURLS = {
    "+u": ((0, 2), (3, 1)),
    "+o": ((3, 1), (0, 2)),
    "-u": ((0, 2), (1, 3)),
    "-o": ((1, 3), (0, 2)),
}
_VCURLS = {"a": ((0, 2), (3, 1)), "b": ((0, 2), (1, 3))}


@dataclass(frozen=True)
class MoveSpec:
    move: str
    site: Optional[Tuple] = None
    rng_seed: Optional[int] = None

    def __post_init__(self):
        if self.move not in ALL_MOVES:
            raise PatternNotFound(f"unknown move {self.move!r}")


def _faces(d: Diagram) -> Dict[int, List[End]]:
    face_of = trace_faces(list(range(len(d.crossings))), d.partner_map)
    out: Dict[int, List[End]] = {}
    for u, f in sorted(face_of.items()):
        out.setdefault(f, []).append(u)
    return out


def _face_walk(d: Diagram, u: End) -> List[End]:
    walk = [u]
    while True:
        v = d.partner(walk[-1])
        nxt = (v[0], (v[1] + 1) % 4)
        if nxt == u:
            return walk
        walk.append(nxt)


def _tail(d: Diagram, label: int) -> End:
    a, b = d.edge_ends[label]
    if d.heads is not None and a in d.heads:
        return b
    return a


# site discovery


def _curl_sites(d: Diagram, variants) -> List[Tuple]:
    sites = [("edge", label, v) for label in d.edges for v in variants]
    if d.free_loops:
        sites.extend(("loop", 0, v) for v in variants)
    return sites


def _kink_sites(d: Diagram, kind: str) -> List[Tuple]:
    out = []
    for c, x in enumerate(d.crossings):
        if x.kind != kind:
            continue
        if any(d.partner((c, s)) == (c, (s + 1) % 4) for s in range(4)):
            out.append(("crossing", c))
    return out


def _push_sites(d: Diagram, tops: Sequence[int]) -> List[Tuple]:
    out = []
    for darts in _faces(d).values():
        for u1, u2 in combinations(darts, 2):
            if d.label(u1) == d.label(u2):
                continue
            out.extend((u1[0], u1[1], u2[0], u2[1], top) for top in tops)
    return out


def _bigon(d: Diagram, u: End) -> Optional[Tuple[int, int, str]]:
    walk = _face_walk(d, u)
    if len(walk) != 2:
        return None
    p, q = walk[0][0], walk[1][0]
    if p == q:
        return None
    kp, kq = d.crossings[p].kind, d.crossings[q].kind
    if kp != kq:
        return None
    if kp == CLASSICAL:
        over_at_p = walk[0][1] % 2 == 1
        over_at_q = d.partner(walk[0])[1] % 2 == 1
        if over_at_p != over_at_q:
            return None
    return p, q, kp


def _bigon_sites(d: Diagram, kind: str) -> List[Tuple]:
    out = []
    for darts in _faces(d).values():
        u = darts[0]
        info = _bigon(d, u)
        if info and info[2] == kind:
            out.append(("bigon", u[0], u[1]))
    return out


def _triangle(d: Diagram, u: End) -> Optional[Dict]:
    walk = _face_walk(d, u)
    if len(walk) != 3:
        return None
    (p, k), (q, m1), (r, r1) = walk
    if len({p, q, r}) != 3:
        return None
    m = (m1 - 1) % 4
    rr = (r1 - 1) % 4
    ext = {
        "aL": d.partner((p, (k + 2) % 4)),
        "cP": d.partner((p, (k + 1) % 4)),
        "aR": d.partner((q, (m + 2) % 4)),
        "bQ": d.partner((q, (m + 3) % 4)),
        "bR": d.partner((r, (rr + 2) % 4)),
        "cR": d.partner((r, (rr + 3) % 4)),
    }
    if any(e[0] in (p, q, r) for e in ext.values()):
        return None
    kinds = [d.crossings[c].kind for c in (p, q, r)]
    # a strand is over at a crossing when it sits on the odd slots there
    over = {
        ("a", "P"): k % 2 == 1,
        ("a", "Q"): m % 2 == 1,
        ("b", "Q"): (m + 1) % 2 == 1,
        ("b", "R"): rr % 2 == 1,
        ("c", "R"): (rr + 1) % 2 == 1,
        ("c", "P"): (k + 1) % 2 == 1,
    }
    classical = kinds.count(CLASSICAL)
    if classical == 3:
        flavour = "R3"
        on_top = [
            s for s, (x, y) in {"a": ("P", "Q"), "b": ("Q", "R"), "c": ("R", "P")}.items()
            if over[(s, x)] and over[(s, y)]
        ]
        if not on_top:
            return None
    elif classical == 0:
        flavour = "V3"
    elif classical == 1:
        flavour = "Vmixed"
    else:
        return None
    return {"P": p, "Q": q, "R": r, "ext": ext, "over": over, "flavour": flavour}


def _triangle_sites(d: Diagram, flavour: str) -> List[Tuple]:
    out = []
    for darts in _faces(d).values():
        info = _triangle(d, darts[0])
        if info and info["flavour"] == flavour:
            out.append(("triangle", darts[0][0], darts[0][1]))
    return out


def find_sites(d: Diagram, move: str) -> List[Tuple]:
    """All sites at which `move` applies, in a deterministic order."""
    if move == "R1+":
        return _curl_sites(d, sorted(_CURLS))
    if move == "V1":
        return _curl_sites(d, sorted(_VCURLS))
    if move == "R1-":
        return _kink_sites(d, CLASSICAL)
    if move == "V1inv":
        return _kink_sites(d, VIRTUAL)
    if move == "R2":
        return _push_sites(d, (1, 2))
    if move == "V2":
        return _push_sites(d, (0,))
    if move == "R2inv":
        return _bigon_sites(d, CLASSICAL)
    if move == "V2inv":
        return _bigon_sites(d, VIRTUAL)
    if move in ("R3", "V3", "Vmixed"):
        return _triangle_sites(d, move)
    raise PatternNotFound(f"unknown move {move!r}")


# application


def _apply_curl(d: Diagram, site: Tuple, kind: str) -> Diagram:
    where, label, variant = site
    table = _CURLS if kind == CLASSICAL else _VCURLS
    if variant not in table:
        raise PatternNotFound(f"unknown curl variant {variant!r}")
    (in1, out1), (in2, out2) = table[variant]
    work = Surgery(d)
    k = work.new_crossing(kind)
    if where == "loop":
        if not d.free_loops:
            raise PatternNotFound("no free loop to curl")
        work.free_loops -= 1
        work.connect((k, out2), (k, in1))
        if work.oriented:
            work.status[(k, in1)] = True
    else:
        if label not in d.edge_ends:
            raise PatternNotFound(f"no edge {label}")
        p = _tail(d, label)
        q = d.partner(p)
        work.connect(p, (k, in1))
        work.connect((k, out2), q)
    work.connect((k, out1), (k, in2))
    return work.freeze()


def _apply_kink_removal(d: Diagram, site: Tuple, kind: str) -> Diagram:
    _, c = site
    if not (0 <= c < len(d.crossings)) or (("crossing", c) not in _kink_sites(d, kind)):
        raise PatternNotFound(f"crossing {c} is not a removable curl")
    work = Surgery(d)
    work.dissolve([c], {c: {s: (s + 2) % 4 for s in range(4)}})
    return work.freeze()


def _apply_push(d: Diagram, site: Tuple, kind: str) -> Diagram:
    c1, s1, c2, s2, top = site
    u1, u2 = (c1, s1), (c2, s2)
    if site not in _push_sites(d, (1, 2) if kind == CLASSICAL else (0,)):
        raise PatternNotFound(f"darts {u1}, {u2} do not share a face")
    y1, y2 = d.partner(u1), d.partner(u2)
    work = Surgery(d)
    p = work.new_crossing(kind)
    q = work.new_crossing(kind)
    # strand 1 sits on positions 0 and 2 of both crossings
    rot = 1 if (kind == CLASSICAL and top == 1) else 0

    def at(c: int, pos: int) -> End:
        return c, (pos - rot) % 4

    work.connect(u1, at(p, 0))
    work.connect(at(p, 2), at(q, 2))
    work.connect(at(q, 0), y1)
    work.connect(u2, at(q, 3))
    work.connect(at(q, 1), at(p, 3))
    work.connect(at(p, 1), y2)
    return work.freeze()


def _apply_bigon_removal(d: Diagram, site: Tuple, kind: str) -> Diagram:
    _, c, s = site
    if site not in _bigon_sites(d, kind):
        raise PatternNotFound(f"no removable bigon at {(c, s)}")
    p, q, _ = _bigon(d, (c, s))
    work = Surgery(d)
    straight = {t: (t + 2) % 4 for t in range(4)}
    work.dissolve([p, q], {p: straight, q: straight})
    return work.freeze()


def _apply_triangle(d: Diagram, site: Tuple, flavour: str) -> Diagram:
    _, c, s = site
    info = _triangle(d, (c, s)) if 0 <= c < len(d.crossings) else None
    if info is None or info["flavour"] != flavour:
        raise PatternNotFound(f"no {flavour} triangle at {(c, s)}")
    ext, over = info["ext"], info["over"]
    old = {"P": info["P"], "Q": info["Q"], "R": info["R"]}
    work = Surgery(d)
    work.remove(old.values())
    new = {name: work.new_crossing(d.crossings[old[name]].kind) for name in ("R", "Q", "P")}
    # the strand listed first sits on positions 0 and 2
    first = {"R": ("b", "R"), "Q": ("a", "Q"), "P": ("a", "P")}

    def at(name: str, pos: int) -> End:
        c_new = new[name]
        if d.crossings[old[name]].kind == VIRTUAL:
            return c_new, pos
        rot = 1 if over[first[name]] else 0
        return c_new, (pos - rot) % 4

    work.connect(at("R", 0), ext["bQ"])
    work.connect(at("R", 1), ext["cP"])
    work.connect(at("R", 2), at("Q", 1))
    work.connect(at("R", 3), at("P", 1))
    work.connect(at("Q", 0), at("P", 2))
    work.connect(at("Q", 2), ext["aL"])
    work.connect(at("Q", 3), ext["bR"])
    work.connect(at("P", 0), ext["aR"])
    work.connect(at("P", 3), ext["cR"])
    return work.freeze()


def apply_move(d: Diagram, m: MoveSpec) -> Diagram:
    site = m.site
    if site is None:
        sites = find_sites(d, m.move)
        if not sites:
            raise PatternNotFound(f"no site for {m.move}")
        site = random.Random(m.rng_seed).choice(sites)
    site = tuple(site)
    if m.move in ("R1+", "V1"):
        out = _apply_curl(d, site, CLASSICAL if m.move == "R1+" else VIRTUAL)
    elif m.move in ("R1-", "V1inv"):
        out = _apply_kink_removal(d, site, CLASSICAL if m.move == "R1-" else VIRTUAL)
    elif m.move in ("R2", "V2"):
        out = _apply_push(d, site, CLASSICAL if m.move == "R2" else VIRTUAL)
    elif m.move in ("R2inv", "V2inv"):
        out = _apply_bigon_removal(d, site, CLASSICAL if m.move == "R2inv" else VIRTUAL)
    else:
        out = _apply_triangle(d, site, m.move)
    logger.debug("%s at %s: %d -> %d crossings", m.move, site, len(d.crossings), len(out.crossings))
    return out


def random_move_sequence(
    d: Diagram,
    rng: random.Random,
    length: int,
    moves: Sequence[str] = CLASSICAL_MOVES,
    max_growth: int = 3,
) -> Tuple[Diagram, List[MoveSpec]]:
    """Apply `length` random moves; the crossing count never exceeds the start by more than `max_growth`."""
    ceiling = len(d.crossings) + max_growth
    applied: List[MoveSpec] = []
    for _ in range(length):
        options = []
        for move in moves:
            if len(d.crossings) + GROWING.get(move, 0) > ceiling:
                continue
            sites = find_sites(d, move)
            if sites:
                options.append((move, sites))
        if not options:
            break
        move, sites = options[rng.randrange(len(options))]
        spec = MoveSpec(move, sites[rng.randrange(len(sites))])
        d = apply_move(d, spec)
        applied.append(spec)
    return d, applied

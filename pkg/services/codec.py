"""
Text and JSON codecs for diagrams.

PD:     ``X(a,b,c,d)`` classical crossings, ends counterclockwise, ``a`` the incoming
        under-edge; ``V(a,b,c,d)`` virtual crossings; ``O`` a crossingless loop.
Gauss:  ``O<k><s>`` / ``U<k><s>`` passes with s in {+,-}, ``V<k>`` explicit virtual
        passes, components separated by ``/``.
Braid:  signed generator indices, e.g. ``1 -2 1 -2``.
"""

from __future__ import annotations

import json
import logging
import re
from typing import Dict, List, Optional, Sequence, Set, Tuple, Union

from services.diagram import CLASSICAL, VIRTUAL, Crossing, Diagram, End, Surgery, orient_strands
from services.errors import BadIndex, InconsistentCode, ParseError
from services.planar import planarize

logger = logging.getLogger(__name__)

_PD_TOKEN = re.compile(r"\s*(?:([XV])\(\s*(-?\d+)\s*,\s*(-?\d+)\s*,\s*(-?\d+)\s*,\s*(-?\d+)\s*\)|(O))\s*")
_GAUSS_TOKEN = re.compile(r"([OU])(\d+)([+-])|V(\d+)")


def _normalize(text: str) -> str:
    return text.replace("−", "-").strip()


# PD


def _pd_fallback(d: Diagram):
    def decide(walk: List[End], arrivals: Set[End]) -> Optional[bool]:
        c, s = walk[0]
        a, b, cc, dd = d.crossings[c].ends
        if s in (1, 3):
            head3 = b - dd == 1 or dd - b > 1
            return ((c, 3) if head3 else (c, 1)) in arrivals
        head0 = cc - a == 1 or a - cc > 1
        return ((c, 0) if head0 else (c, 2)) in arrivals

    return decide


def decode_pd(text: str) -> Diagram:
    src = _normalize(text)
    pos = 0
    crossings: List[Crossing] = []
    loops = 0
    while pos < len(src):
        m = _PD_TOKEN.match(src, pos)
        if not m or m.end() == pos:
            raise ParseError(f"bad PD text at offset {pos}: {src[pos:pos + 20]!r}")
        pos = m.end()
        if m.group(6):
            loops += 1
            continue
        kind = CLASSICAL if m.group(1) == "X" else VIRTUAL
        crossings.append(Crossing(kind, tuple(int(m.group(k)) for k in range(2, 6))))
    if not crossings and not loops:
        loops = 1
    flat = Diagram(tuple(crossings), loops, None)
    flat.require_connected()
    known = {(c, 0): True for c, x in enumerate(crossings) if x.kind == CLASSICAL}
    return orient_strands(flat, known, _pd_fallback(flat))


def encode_pd(d: Diagram) -> str:
    tokens = []
    for c, x in enumerate(d.crossings):
        ends = x.ends
        if d.heads is not None and (c, 0) not in d.heads:
            ends = ends[2:] + ends[:2]
        tag = "X" if x.kind == CLASSICAL else "V"
        tokens.append(f"{tag}({','.join(map(str, ends))})")
    tokens.extend("O" for _ in range(d.free_loops))
    return " ".join(tokens)


# Gauss

Pass = Tuple[str, int, str]


def parse_gauss(text: str) -> List[List[Pass]]:
    src = re.sub(r"\s+", "", _normalize(text))
    components = []
    for chunk in src.split("/"):
        passes: List[Pass] = []
        pos = 0
        while pos < len(chunk):
            m = _GAUSS_TOKEN.match(chunk, pos)
            if not m:
                raise ParseError(f"bad Gauss token at {chunk[pos:pos + 8]!r}")
            if m.group(4) is not None:
                passes.append(("V", int(m.group(4)), ""))
            else:
                passes.append((m.group(1), int(m.group(2)), m.group(3)))
            pos = m.end()
        components.append(passes)
    return components


def _check_gauss(components: List[List[Pass]]) -> Dict[int, str]:
    seen: Dict[int, List[Pass]] = {}
    for passes in components:
        for p in passes:
            seen.setdefault(p[1], []).append(p)
    kinds = {}
    for k, ps in seen.items():
        letters = sorted(p[0] for p in ps)
        if letters == ["V", "V"]:
            kinds[k] = VIRTUAL
        elif letters == ["O", "U"]:
            if ps[0][2] != ps[1][2]:
                raise InconsistentCode(f"crossing {k} has mismatched signs")
            kinds[k] = CLASSICAL
        else:
            raise InconsistentCode(f"crossing {k} appears as {''.join(p[0] for p in ps)}")
    return kinds


def decode_gauss(text: str, planarize_code: bool = True) -> Diagram:
    """Build the diagram of a Gauss code.

    With ``planarize_code=False`` the result is the abstract rotation system (no
    virtual crossings added); otherwise crossings required by the embedding are
    inserted as virtual crossings.
    """
    components = parse_gauss(text)
    kinds = _check_gauss(components)
    labels = sorted(kinds)
    index = {k: i for i, k in enumerate(labels)}
    work = Surgery()
    work.oriented = True
    for k in labels:
        work.new_crossing(kinds[k])
    first_virtual: Set[int] = set()
    for passes in components:
        if not passes:
            work.free_loops += 1
            continue
        slots = []
        for letter, k, sign in passes:
            c = index[k]
            if letter == "U":
                slots.append((c, 0, 2))
            elif letter == "O":
                slots.append((c, 3, 1) if sign == "+" else (c, 1, 3))
            elif c in first_virtual:
                slots.append((c, 1, 3))
            else:
                first_virtual.add(c)
                slots.append((c, 0, 2))
        for i, (c, _, out) in enumerate(slots):
            nc, inn, _ = slots[(i + 1) % len(slots)]
            work.connect((c, out), (nc, inn))
            work.status[(c, out)] = False
            work.status[(nc, inn)] = True
    flat = work.freeze()
    flat.require_connected()
    if not planarize_code:
        return flat
    out = planarize(flat)
    logger.debug("gauss %r: %d classical, %d virtual", text, len(out.classical), len(out.virtual))
    return out


def encode_gauss(d: Diagram) -> str:
    d.require_oriented()
    chunks = []
    for walk in d.strands:
        tokens = []
        for u in walk:
            c, s = d.partner(u)
            x = d.crossings[c]
            if x.kind == VIRTUAL:
                tokens.append(f"V{c + 1}")
            else:
                letter = "U" if s in (0, 2) else "O"
                tokens.append(f"{letter}{c + 1}{'+' if d.sign(c) > 0 else '-'}")
        chunks.append("".join(tokens))
    chunks.extend("" for _ in range(d.free_loops))
    return "/".join(chunks)


# braids


def parse_braid(text: str) -> List[int]:
    src = _normalize(text).replace(",", " ")
    try:
        return [int(tok) for tok in src.split()]
    except ValueError:
        raise ParseError(f"bad braid word {text!r}")


def from_braid_word(n_strands: int, word: Sequence[int]) -> Diagram:
    """Trace closure of a braid, strands oriented downward.

    Generator i acts on positions i-1 and i; each crossing is laid out as
    [TL, BL, BR, TR] for a positive letter and [TR, TL, BL, BR] for a negative one.
    A closure that falls apart into pieces raises DisconnectedDiagram.
    """
    if n_strands < 1:
        raise BadIndex(f"braid needs at least one strand, got {n_strands}")
    for g in word:
        if g == 0 or abs(g) >= n_strands:
            raise BadIndex(f"generator {g} out of range for {n_strands} strands")
    work = Surgery()
    work.oriented = True
    first: Dict[int, End] = {}
    current: Dict[int, End] = {}

    def attach(p: int, incoming: End, outgoing: End) -> None:
        if p in current:
            work.connect(current[p], incoming)
        else:
            first[p] = incoming
        work.status[incoming] = True
        work.status[outgoing] = False
        current[p] = outgoing

    for g in word:
        c = work.new_crossing(CLASSICAL)
        left, right = abs(g) - 1, abs(g)
        if g > 0:
            tl, bl, br, tr = (c, 0), (c, 1), (c, 2), (c, 3)
        else:
            tr, tl, bl, br = (c, 0), (c, 1), (c, 2), (c, 3)
        # strands cross: top-left leaves bottom-right, top-right leaves bottom-left
        attach(left, tl, br)
        attach(right, tr, bl)
        current[left], current[right] = current[right], current[left]
    for p in range(n_strands):
        if p in first:
            work.connect(current[p], first[p])
        else:
            work.free_loops += 1
    out = work.freeze()
    out.require_connected()
    return out


def decode_braid(text: str, n_strands: Optional[int] = None) -> Diagram:
    word = parse_braid(text)
    n = n_strands if n_strands is not None else max([abs(g) for g in word], default=0) + 1
    return from_braid_word(n, word)


# JSON


def to_json(d: Diagram) -> dict:
    return {
        "crossings": [{"kind": x.kind, "ends": list(x.ends)} for x in d.crossings],
        "free_loops": d.free_loops,
        "heads": None if d.heads is None else [list(e) for e in sorted(d.heads)],
    }


def from_json(data: Union[str, dict]) -> Diagram:
    if isinstance(data, str):
        try:
            data = json.loads(data)
        except json.JSONDecodeError as e:
            raise ParseError(f"bad diagram JSON: {e}")
    try:
        crossings = tuple(Crossing(x["kind"], tuple(x["ends"])) for x in data["crossings"])
        heads = data.get("heads")
        return Diagram(
            crossings,
            int(data.get("free_loops", 0)),
            None if heads is None else frozenset((int(c), int(s)) for c, s in heads),
        )
    except (KeyError, TypeError, ValueError) as e:
        raise ParseError(f"bad diagram JSON: {e}")


FORMATS = ("pd", "gauss", "braid", "json")


def codec(action: str, fmt: str, value):
    """decode: text -> Diagram; encode: Diagram -> text."""
    if fmt not in FORMATS:
        raise ParseError(f"unknown format {fmt!r}")
    if action == "decode":
        if fmt == "pd":
            return decode_pd(value)
        if fmt == "gauss":
            return decode_gauss(value)
        if fmt == "braid":
            return decode_braid(value)
        return from_json(value)
    if action == "encode":
        if fmt == "pd":
            return encode_pd(value)
        if fmt == "gauss":
            return encode_gauss(value)
        if fmt == "braid":
            raise InconsistentCode("braid words are an input format only")
        return json.dumps(to_json(value), sort_keys=True)
    raise ValueError(f"unknown action {action!r}")

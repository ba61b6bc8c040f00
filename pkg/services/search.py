"""
Search for virtual knots whose normalized bracket is 1 but whose Arrow polynomial is not.

Candidates are one-component signed Gauss codes with up to `max_classical`
classical crossings, decoded as abstract rotation systems (virtual crossings
only pass strands through, so states and cusps do not depend on them) and
deduplicated up to diagram isomorphism.
"""

from __future__ import annotations

import logging
import random
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from itertools import product
from typing import Iterator, List, Optional, Tuple

from services.arrow import arrow_polynomial
from services.bracket import bracket_poly, normalize_bracket
from services.codec import decode_gauss
from services.diagram import canonical_key, writhe
from services.laurent import LaurentPoly

logger = logging.getLogger(__name__)

ONE = LaurentPoly.constant(1)


@dataclass
class SearchHit:
    code: str
    crossings: int
    arrow: str

    def to_json(self) -> dict:
        return {"gauss": self.code, "classical": self.crossings, "arrow": self.arrow}


@dataclass
class SearchResult:
    max_classical: int
    searched: int = 0
    distinct: int = 0
    unit_bracket: int = 0
    hits: List[SearchHit] = field(default_factory=list)
    complete: bool = True


def _matchings(n: int) -> Iterator[List[int]]:
    """Words of length 2n where chords are labelled 1..n by first appearance."""
    word = [0] * (2 * n)

    def place(label: int) -> Iterator[List[int]]:
        if label > n:
            yield list(word)
            return
        first = word.index(0)
        for second in range(first + 1, 2 * n):
            if word[second] == 0:
                word[first] = word[second] = label
                yield from place(label + 1)
                word[first] = word[second] = 0

    yield from place(1)


def _render(word: List[int], over_first: Tuple[bool, ...], signs: Tuple[str, ...]) -> str:
    met = set()
    tokens = []
    for k in word:
        first = k not in met
        met.add(k)
        letter = "O" if over_first[k - 1] == first else "U"
        tokens.append(f"{letter}{k}{signs[k - 1]}")
    return "".join(tokens)


def gauss_codes(n: int) -> Iterator[str]:
    """Every signed one-component Gauss code with n classical crossings."""
    for word in _matchings(n):
        for over_first in product((True, False), repeat=n):
            for signs in product("+-", repeat=n):
                yield _render(word, over_first, signs)


def random_gauss_code(rng: random.Random, n: int) -> str:
    slots = list(range(1, n + 1)) * 2
    rng.shuffle(slots)
    names = {}
    word = []
    for k in slots:
        names.setdefault(k, len(names) + 1)
        word.append(names[k])
    over_first = tuple(rng.random() < 0.5 for _ in range(n))
    signs = tuple(rng.choice("+-") for _ in range(n))
    return _render(word, over_first, signs)


def _examine(code: str) -> Tuple[Optional[Tuple], bool, Optional[SearchHit]]:
    d = decode_gauss(code, planarize_code=False)
    key = canonical_key(d)
    f = normalize_bracket(bracket_poly(d), writhe(d))
    if f != ONE:
        return key, False, None
    arrow = arrow_polynomial(d).normalized
    hit = None if arrow == ONE else SearchHit(code, len(d.classical), arrow.to_text())
    return key, True, hit


def search_unit_jones(
    max_classical: int,
    sample: Optional[int] = None,
    seed: int = 0,
    threads: int = 1,
) -> SearchResult:
    """Exhaustive up to `max_classical` crossings, or `sample` random codes per crossing number."""
    codes: List[str] = []
    for n in range(1, max_classical + 1):
        if sample is None:
            codes.extend(gauss_codes(n))
        else:
            rng = random.Random(f"{seed}:{n}")
            codes.extend(random_gauss_code(rng, n) for _ in range(sample))
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(_examine, codes))
    else:
        results = [_examine(c) for c in codes]

    out = SearchResult(max_classical=max_classical, complete=sample is None)
    seen = set()
    for key, unit, hit in results:
        out.searched += 1
        if key in seen:
            continue
        seen.add(key)
        out.distinct += 1
        if unit:
            out.unit_bracket += 1
        if hit is not None:
            out.hits.append(hit)
    logger.info(
        "searched %d codes, %d distinct, %d with unit bracket, %d hits",
        out.searched, out.distinct, out.unit_bracket, len(out.hits),
    )
    return out

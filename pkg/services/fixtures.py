"""Named diagrams used by the CLI, the fuzzer and the tests."""

from __future__ import annotations

import logging
import random
from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple

from services.codec import decode_gauss, decode_pd, from_braid_word
from services.diagram import Diagram, unknot

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Fixture:
    name: str
    fmt: str
    code: str
    n_strands: Optional[int] = None

    @property
    def word(self) -> List[int]:
        return [int(tok) for tok in self.code.split()]

    @property
    def is_virtual(self) -> bool:
        return self.fmt == "gauss"

    def load(self) -> Diagram:
        if self.fmt == "braid":
            return from_braid_word(self.n_strands, self.word)
        if self.fmt == "gauss":
            return decode_gauss(self.code)
        if self.fmt == "pd":
            return decode_pd(self.code) if self.code else unknot()
        raise ValueError(f"unknown fixture format {self.fmt!r}")


CLASSICAL_FIXTURES: Tuple[Fixture, ...] = (
    Fixture("unknot", "pd", ""),
    Fixture("3_1", "braid", "1 1 1", 2),
    Fixture("3_1_pd", "pd", "X(1,5,2,4) X(3,1,4,6) X(5,3,6,2)"),
    Fixture("4_1", "braid", "1 -2 1 -2", 3),
    Fixture("5_1", "braid", "1 1 1 1 1", 2),
    Fixture("5_2", "braid", "1 1 1 2 -1 2", 3),
    Fixture("6_1", "braid", "1 1 2 -1 -3 2 -3", 4),
    Fixture("6_2", "braid", "1 1 1 -2 1 -2", 3),
    Fixture("6_3", "braid", "1 1 -2 1 -2 -2", 3),
    Fixture("7_1", "braid", "1 1 1 1 1 1 1", 2),
    Fixture("hopf", "braid", "1 1", 2),
    Fixture("T3_4", "braid", "1 1 1 2 1 1 1 2", 3),
)

VIRTUAL_FIXTURES: Tuple[Fixture, ...] = (
    Fixture("virtual_trefoil", "gauss", "O1+O2+U1+U2+"),
    Fixture("virtual_trefoil_mirror", "gauss", "O1-O2-U1-U2-"),
    Fixture("virtual_mixed", "gauss", "O1+O2-U1+U2-"),
    Fixture("virtual_3a", "gauss", "O1+O2+U1+O3+U2+U3+"),
    Fixture("virtual_3b", "gauss", "O1-U2-O3+U1-O2-U3+"),
)

FIXTURES: Dict[str, Fixture] = {f.name: f for f in CLASSICAL_FIXTURES + VIRTUAL_FIXTURES}


def load(name: str) -> Diagram:
    try:
        return FIXTURES[name].load()
    except KeyError:
        raise KeyError(f"unknown fixture {name!r}; known: {sorted(FIXTURES)}")


def fixtures_by_name(names):
    return [FIXTURES[n] for n in names]


def random_braid(rng: random.Random, n_strands: int, length: int) -> List[int]:
    return [rng.choice((1, -1)) * rng.randint(1, n_strands - 1) for _ in range(length)]


def braid_corpus(size: int = 25, max_crossings: int = 12, seed: int = 7) -> List[Fixture]:
    """Braid fixtures topped up with seeded random braid words whose closures are connected."""
    out = [f for f in CLASSICAL_FIXTURES if f.fmt == "braid" and len(f.code.split()) <= max_crossings]
    rng = random.Random(seed)
    k = 0
    while len(out) < size:
        n = rng.randint(2, 4)
        word = random_braid(rng, n, rng.randint(1, max_crossings))
        if {abs(g) for g in word} != set(range(1, n)):
            # closure would split off a strand
            continue
        out.append(Fixture(f"braid_{k}", "braid", " ".join(map(str, word)), n))
        k += 1
    logger.debug("braid corpus of %d words", len(out))
    return out[:size]

"""
Seeded Reidemeister fuzzing: random move sequences must leave invariants unchanged.

Each (fixture, sequence) pair draws from its own `random.Random`, seeded from the
run seed, the fixture name and the sequence number, so results do not depend on
how the work is split across threads.
"""

from __future__ import annotations

import logging
import random
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import List, Optional, Sequence, Tuple

from services.diagram import Diagram
from services.errors import SkeinError
from services.fixtures import CLASSICAL_FIXTURES, VIRTUAL_FIXTURES, Fixture
from services.moves import ALL_MOVES, CLASSICAL_MOVES, MoveSpec, random_move_sequence
from services.reporting import Caps, compute_invariant

logger = logging.getLogger(__name__)

CLASSICAL_INVARIANTS = ("f", "jones", "conway", "alexander", "khovanov")
VIRTUAL_INVARIANTS = ("arrow",)
KHOVANOV_FUZZ_MAX = 7


@dataclass
class FuzzFailure:
    fixture: str
    sequence: int
    invariant: str
    before: str
    after: str
    moves: List[MoveSpec] = field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "fixture": self.fixture,
            "sequence": self.sequence,
            "invariant": self.invariant,
            "before": self.before,
            "after": self.after,
            "moves": [{"move": m.move, "site": list(m.site or ())} for m in self.moves],
        }


@dataclass
class FuzzSummary:
    sequences: int = 0
    moves: int = 0
    checks: int = 0
    failures: List[FuzzFailure] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures


def invariants_for(fixture: Fixture, d: Diagram) -> Tuple[str, ...]:
    if fixture.is_virtual:
        return VIRTUAL_INVARIANTS
    names = [n for n in CLASSICAL_INVARIANTS if n != "khovanov" or len(d.crossings) <= KHOVANOV_FUZZ_MAX]
    return tuple(names)


def _sequence_rng(seed: int, name: str, k: int) -> random.Random:
    return random.Random(f"{seed}:{name}:{k}")


def fuzz_sequence(
    fixture: Fixture, k: int, seed: int, length: int, caps: Optional[Caps] = None
) -> Tuple[int, int, List[FuzzFailure]]:
    """Run one sequence; returns (moves applied, checks made, failures)."""
    caps = caps or Caps()
    start = fixture.load()
    names = invariants_for(fixture, start)
    baseline = {n: compute_invariant(start, n, caps) for n in names}
    moves = ALL_MOVES if fixture.is_virtual else CLASSICAL_MOVES
    end, applied = random_move_sequence(start, _sequence_rng(seed, fixture.name, k), length, moves)
    failures = []
    checks = 0
    for n in names:
        try:
            after = compute_invariant(end, n, caps)
        except SkeinError as e:
            failures.append(FuzzFailure(fixture.name, k, n, baseline[n].text, f"error: {e.code}: {e.message}", applied))
            continue
        checks += 1
        if after.key != baseline[n].key:
            failures.append(FuzzFailure(fixture.name, k, n, baseline[n].text, after.text, applied))
    return len(applied), checks, failures


def run_fuzz(
    fixtures: Optional[Sequence[Fixture]] = None,
    sequences: int = 20,
    length: int = 50,
    seed: int = 0,
    threads: int = 1,
    caps: Optional[Caps] = None,
) -> FuzzSummary:
    fixtures = list(fixtures) if fixtures is not None else list(CLASSICAL_FIXTURES + VIRTUAL_FIXTURES)
    jobs = [(f, k) for f in fixtures for k in range(sequences)]

    def run(job):
        f, k = job
        return fuzz_sequence(f, k, seed, length, caps)

    summary = FuzzSummary()
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(run, jobs))
    else:
        results = [run(job) for job in jobs]
    for n_moves, n_checks, failures in results:
        summary.sequences += 1
        summary.moves += n_moves
        summary.checks += n_checks
        summary.failures.extend(failures)
    logger.info(
        "fuzz: %d sequences, %d moves, %d checks, %d failures",
        summary.sequences, summary.moves, summary.checks, len(summary.failures),
    )
    return summary


"""
Back ends of `verify axioms`, `verify fuzz` and `verify fourterm`.

Every suite returns a flat list of `CheckOutcome`; the CLI exits 1 if any
outcome failed.
"""

from __future__ import annotations

import logging
from typing import Iterable, List, Optional, Sequence

from services.errors import ComplexError
from services.fixtures import CLASSICAL_FIXTURES, Fixture
from services.fuzz import run_fuzz
from services.khovanov import build_complex, check_d_squared, check_frobenius
from services.laurent import LOOP_VALUE
from services.reporting import Caps, CheckOutcome
from services.temperley_lieb import Matching, catalan_basis, check_relations, meander_projector, tl_multiply
from services.tensor_net import RMatrixSet, default_rmatrix, verify_tensor_axioms
from services.vassiliev import check_jacobi, four_term_relations, relation_value, so3_weight_system

logger = logging.getLogger(__name__)

TL_MAX_STRANDS = 5
CATALAN = {2: 2, 3: 5, 4: 14}
D_SQUARED_MAX = 7
SUITES = ("tl", "tensor", "frobenius", "complex", "lie")


def _outcomes(suite: str, pairs: Iterable) -> List[CheckOutcome]:
    return [CheckOutcome(suite=suite, name=name, passed=bool(ok)) for name, ok in pairs]


def nested_caps(k: int) -> Matching:
    """k nested caps closing 2k top points."""
    return Matching.from_pairs(2 * k, 0, [(j, 2 * k - 1 - j) for j in range(k)])


def tl_checks(max_strands: int = TL_MAX_STRANDS) -> List[CheckOutcome]:
    out = []
    for n in range(2, max_strands + 1):
        out.extend(CheckOutcome(suite="tl", name=f"TL_{n}: {name}", passed=ok) for name, ok in check_relations(n))
    for n, expected in CATALAN.items():
        got = len(catalan_basis(n))
        out.append(CheckOutcome(
            suite="tl", name=f"catalan basis n={n}", passed=got == expected, detail=None if got == expected else str(got),
        ))
    for k in (1, 2):
        a = nested_caps(k)
        q, loops = meander_projector(a, a.rotated())
        ok = loops == k and tl_multiply(q, q) == q.scale(LOOP_VALUE ** loops)
        out.append(CheckOutcome(suite="tl", name=f"meander q^2 = d^{k} q", passed=ok))
    return out


def tensor_checks(rm: Optional[RMatrixSet] = None) -> List[CheckOutcome]:
    out = []
    for c in verify_tensor_axioms(rm or default_rmatrix()):
        detail = None if c.passed or not c.residual else f"residual {c.residual}"
        out.append(CheckOutcome(suite="tensor", name=f"{c.group}: {c.name}", passed=c.passed, detail=detail))
    return out


def complex_checks(fixtures: Sequence[Fixture] = CLASSICAL_FIXTURES, max_crossings: int = D_SQUARED_MAX) -> List[CheckOutcome]:
    out = []
    for f in fixtures:
        d = f.load()
        if len(d.classical) > max_crossings:
            continue
        try:
            check_d_squared(build_complex(d, check=False))
            ok, detail = True, None
        except ComplexError as e:
            ok, detail = False, e.message
        out.append(CheckOutcome(suite="complex", name=f"d^2 = 0 on {f.name}", passed=ok, detail=detail))
    return out


def axiom_checks(suites: Optional[Sequence[str]] = None) -> List[CheckOutcome]:
    suites = list(suites or SUITES)
    out: List[CheckOutcome] = []
    if "tl" in suites:
        out.extend(tl_checks())
    if "tensor" in suites:
        out.extend(tensor_checks())
    if "frobenius" in suites:
        out.extend(_outcomes("frobenius", check_frobenius()))
    if "complex" in suites:
        out.extend(complex_checks())
    if "lie" in suites:
        out.extend(_outcomes("lie", check_jacobi(so3_weight_system())))
    failed = sum(not c.passed for c in out)
    logger.info("axioms: %d checks, %d failed", len(out), failed)
    return out


def fourterm_checks(degree: int, max_degree: Optional[int] = None) -> List[CheckOutcome]:
    """Every four-term relation up to `degree` must vanish under so(3)."""
    ws = so3_weight_system()
    out = _outcomes("lie", check_jacobi(ws))
    for n in range(1, degree + 1):
        relations = four_term_relations(n, max_degree)
        bad = []
        for rel in relations:
            value = relation_value(rel, ws)
            if value:
                bad.append(" ".join(f"{s:+d}*{cd}" for s, cd in rel.terms) + f" = {value}")
        out.append(CheckOutcome(
            suite="fourterm",
            name=f"degree {n}: {len(relations)} relations vanish under so3",
            passed=not bad,
            detail="; ".join(bad[:3]) or None,
        ))
    return out


def fuzz_checks(
    fixtures: Optional[Sequence[Fixture]] = None,
    sequences: int = 20,
    length: int = 50,
    seed: int = 0,
    threads: int = 1,
    caps: Optional[Caps] = None,
) -> List[CheckOutcome]:
    summary = run_fuzz(fixtures, sequences, length, seed, threads, caps)
    out = [CheckOutcome(
        suite="fuzz",
        name=f"{summary.sequences} sequences, {summary.moves} moves, {summary.checks} comparisons",
        passed=summary.passed,
    )]
    for fail in summary.failures:
        moves = " ".join(m.move for m in fail.moves)
        out.append(CheckOutcome(
            suite="fuzz",
            name=f"{fail.fixture} #{fail.sequence} {fail.invariant}",
            passed=False,
            detail=f"{fail.before} -> {fail.after} after [{moves}]",
        ))
    return out


def all_passed(checks: Sequence[CheckOutcome]) -> bool:
    return all(c.passed for c in checks)

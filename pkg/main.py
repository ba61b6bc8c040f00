"""
skeinlab command line.

    python main.py compute --braid "1 1 1" --invariant jones
    python main.py states cube --pd "X(1,5,2,4) X(3,1,4,6) X(5,3,6,2)"
    python main.py verify axioms
    python main.py verify fuzz --sequences 5 --seed 1
    python main.py verify fourterm --degree 3
    python main.py search unit-jones --max-classical 4

Exit status: 0 success, 1 verification failure, 2 input or usage error.
"""

import argparse
import logging
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path
from typing import List, Optional, Tuple

from pydantic import BaseModel, Field, ValidationError, model_validator

import db
from services.alexander import trail_state_sum
from services.bracket import enumerate_states, state_histogram
from services.codec import decode_braid, decode_gauss, decode_pd, from_json, parse_braid
from services.diagram import Diagram, canonical_key
from services.errors import SkeinError
from services.fixtures import FIXTURES, fixtures_by_name
from services.reporting import (
    INVARIANTS,
    BraidInput,
    Caps,
    ComputeOutput,
    InvariantResult,
    SearchOutput,
    StatesOutput,
    VerifyOutput,
    compute_invariant,
    dump,
    render_checks,
)
from services.search import search_unit_jones
from services.verify import SUITES, all_passed, axiom_checks, fourterm_checks, fuzz_checks

logger = logging.getLogger("skeinlab")

THREADS = int(os.getenv("SKEINLAB_THREADS", "1"))

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2

SOURCES = ("pd", "gauss", "braid", "file")


class UsageError(Exception):
    code = "USAGE"


class RunConfig(BaseModel):
    command: str
    action: Optional[str] = None
    pd: Optional[str] = None
    gauss: Optional[str] = None
    braid: Optional[str] = None
    file: Optional[str] = None
    fmt: str = "pd"
    strands: Optional[int] = Field(default=None, gt=0)
    invariant: str = "jones"
    output: str = "text"
    nmax: int = Field(default=3, ge=0)
    max_crossings: Optional[int] = Field(default=None, gt=0)
    khovanov_max: Optional[int] = Field(default=None, gt=0)
    seed: int = 0
    sequences: int = Field(default=20, gt=0)
    length: int = Field(default=50, ge=0)
    fixtures: List[str] = Field(default_factory=list)
    suites: List[str] = Field(default_factory=list)
    degree: int = Field(default=3, gt=0)
    max_classical: int = Field(default=4, gt=0)
    sample: Optional[int] = Field(default=None, gt=0)
    threads: int = Field(default=THREADS, gt=0)
    cache: Optional[str] = None

    @model_validator(mode="after")
    def one_input_source(self):
        if self.command in ("compute", "states"):
            given = [s for s in SOURCES if getattr(self, s) is not None]
            if len(given) != 1:
                raise ValueError(f"exactly one input source required (--{' / --'.join(SOURCES)}), got {len(given)}")
        if self.invariant not in INVARIANTS:
            raise ValueError(f"unknown invariant {self.invariant!r}; known: {', '.join(INVARIANTS)}")
        unknown = [f for f in self.fixtures if f not in FIXTURES]
        if unknown:
            raise ValueError(f"unknown fixtures {unknown}; known: {sorted(FIXTURES)}")
        return self

    @property
    def caps(self) -> Caps:
        return Caps(crossings=self.max_crossings, khovanov=self.khovanov_max, nmax=self.nmax)


# input


Item = Tuple[str, Diagram, Optional[BraidInput]]


def _decode(fmt: str, text: str, strands: Optional[int]) -> Tuple[Diagram, Optional[BraidInput]]:
    if fmt == "pd":
        return decode_pd(text), None
    if fmt == "gauss":
        return decode_gauss(text), None
    if fmt == "braid":
        d = decode_braid(text, strands)
        word = parse_braid(text)
        n = strands if strands is not None else max([abs(g) for g in word], default=0) + 1
        return d, BraidInput(n, word)
    if fmt == "json":
        return from_json(text), None
    raise UsageError(f"unknown format {fmt!r}")


def load_items(cfg: RunConfig) -> List[Item]:
    for fmt in ("pd", "gauss", "braid"):
        text = getattr(cfg, fmt)
        if text is not None:
            d, braid = _decode(fmt, text, cfg.strands)
            return [(f"{fmt}:{text}", d, braid)]
    path = Path(cfg.file)
    try:
        lines = path.read_text(encoding="utf-8").splitlines()
    except OSError as e:
        raise UsageError(f"cannot read {path}: {e.strerror}")
    items = []
    for line in lines:
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        d, braid = _decode(cfg.fmt, line, cfg.strands)
        items.append((f"{cfg.fmt}:{line}", d, braid))
    if not items:
        raise UsageError(f"{path} holds no diagrams")
    return items


# commands


def _cache_name(cfg: RunConfig) -> str:
    return f"{cfg.invariant}:{cfg.nmax}" if cfg.invariant == "vcoeffs" else cfg.invariant


def _compute_one(cfg: RunConfig, item: Item) -> ComputeOutput:
    label, d, braid = item
    key = repr(canonical_key(d)) if cfg.cache else None
    if key is not None:
        hit = db.get_cached(key, _cache_name(cfg), cfg.cache)
        if hit is not None:
            logger.info("cache hit for %s", label)
            value, text = hit
            return ComputeOutput(input=label, invariant=cfg.invariant, value=value, text=text)
    result: InvariantResult = compute_invariant(d, cfg.invariant, cfg.caps, braid)
    if key is not None:
        db.put_cached(key, _cache_name(cfg), result.value, result.text, cfg.cache)
    return ComputeOutput(input=label, invariant=cfg.invariant, value=result.value, text=result.text)


def run_compute(cfg: RunConfig) -> int:
    items = load_items(cfg)
    if cfg.cache:
        db.init_db(cfg.cache)
    if cfg.threads > 1 and len(items) > 1:
        with ThreadPoolExecutor(max_workers=cfg.threads) as pool:
            outputs = list(pool.map(lambda it: _compute_one(cfg, it), items))
    else:
        outputs = [_compute_one(cfg, it) for it in items]

    if cfg.output == "json":
        if len(outputs) == 1:
            print(dump(outputs[0]))
        else:
            print("[\n" + ",\n".join(dump(o) for o in outputs) + "\n]")
    elif len(outputs) == 1:
        print(outputs[0].text)
    else:
        for o in outputs:
            print(f"{o.input}\t{o.text}")
    return EXIT_OK


def run_states(cfg: RunConfig) -> int:
    label, d, _ = load_items(cfg)[0]
    if cfg.action == "cube":
        states = [
            {"tier": sum(v == "B" for v in choice.values()),
             "choice": "".join(choice[c] for c in sorted(choice)),
             "loops": loops}
            for choice, loops in enumerate_states(d, cfg.max_crossings)
        ]
        hist = state_histogram(d, cfg.max_crossings)
        summary = {"states": len(states), "histogram": [
            {"tier": b, "loops": k, "count": n} for (b, k), n in sorted(hist.items())
        ]}
    else:
        poly, markers = trail_state_sum(d, cfg.max_crossings)
        states = [m.to_json() for m in markers]
        summary = {"states": len(states), "sum": poly.to_text()}
    out = StatesOutput(mode=cfg.action, input=label, states=states, summary=summary)
    if cfg.output == "json":
        print(dump(out))
    else:
        for s in states:
            print("  ".join(f"{k}={v}" for k, v in s.items()))
        print("  ".join(f"{k}={v}" for k, v in summary.items() if k != "histogram"))
    return EXIT_OK


def run_verify(cfg: RunConfig) -> int:
    if cfg.action == "axioms":
        checks = axiom_checks(cfg.suites or None)
    elif cfg.action == "fuzz":
        fixtures = fixtures_by_name(cfg.fixtures) if cfg.fixtures else None
        checks = fuzz_checks(fixtures, cfg.sequences, cfg.length, cfg.seed, cfg.threads, cfg.caps)
    else:
        checks = fourterm_checks(cfg.degree)
    passed = all_passed(checks)
    if cfg.output == "json":
        print(dump(VerifyOutput(command=f"verify {cfg.action}", passed=passed, checks=checks)))
    else:
        print(render_checks(checks))
        print("PASSED" if passed else "FAILED")
    return EXIT_OK if passed else EXIT_FAILED


def run_search(cfg: RunConfig) -> int:
    result = search_unit_jones(cfg.max_classical, cfg.sample, cfg.seed, cfg.threads)
    out = SearchOutput(
        max_classical=result.max_classical,
        searched=result.searched,
        distinct=result.distinct,
        unit_bracket=result.unit_bracket,
        hits=[h.to_json() for h in result.hits],
        complete=result.complete,
    )
    if cfg.output == "json":
        print(dump(out))
        return EXIT_OK
    scope = "exhaustive" if result.complete else "sampled"
    print(f"{scope} search up to {result.max_classical} classical crossings: "
          f"{result.searched} codes, {result.distinct} distinct diagrams, "
          f"{result.unit_bracket} with unit bracket, {len(result.hits)} with nontrivial arrow")
    for h in result.hits:
        print(f"{h.code}\t{h.arrow}")
    return EXIT_OK


COMMANDS = {
    "compute": run_compute,
    "states": run_states,
    "verify": run_verify,
    "search": run_search,
}


def dispatch(cfg: RunConfig) -> int:
    return COMMANDS[cfg.command](cfg)


# argument parsing


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _add_input(p: argparse.ArgumentParser) -> None:
    src = p.add_argument_group("input (exactly one)")
    src.add_argument("--pd", help='planar diagram code, e.g. "X(1,5,2,4) X(3,1,4,6) X(5,3,6,2)"')
    src.add_argument("--gauss", help='signed Gauss code, e.g. "O1+O2+U1+U2+"')
    src.add_argument("--braid", help='braid word, e.g. "1 1 1"')
    src.add_argument("--file", help="file with one diagram per line")
    p.add_argument("--format", dest="fmt", default="pd", choices=("pd", "gauss", "braid", "json"),
                   help="format of --file lines")
    p.add_argument("--strands", type=int, help="strand count of a braid word")


def _add_common(p: argparse.ArgumentParser) -> None:
    out = p.add_mutually_exclusive_group()
    out.add_argument("--json", dest="output", action="store_const", const="json")
    out.add_argument("--text", dest="output", action="store_const", const="text")
    p.add_argument("--max-crossings", type=int)
    p.add_argument("--khovanov-max", type=int)
    p.add_argument("--threads", type=int, default=THREADS)
    p.add_argument("--verbose", "-v", action="store_true")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="skeinlab", description="Exact knot and link invariants.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("compute", help="compute one invariant")
    _add_input(p)
    _add_common(p)
    p.add_argument("--invariant", default="jones", choices=list(INVARIANTS))
    p.add_argument("--nmax", type=int, default=3)
    p.add_argument("--cache", nargs="?", const=db.DB_PATH, help="sqlite invariant cache (default $SKEINLAB_DB)")

    p = sub.add_parser("states", help="dump bracket states or Alexander marker states")
    p.add_argument("action", choices=("cube", "trails"))
    _add_input(p)
    _add_common(p)

    p = sub.add_parser("verify", help="run verification suites")
    p.add_argument("action", choices=("axioms", "fuzz", "fourterm"))
    _add_common(p)
    for suite in SUITES:
        p.add_argument(f"--{suite}", dest="suites", action="append_const", const=suite,
                       help=f"axioms: run the {suite} suite")
    p.add_argument("--sequences", type=int, default=20)
    p.add_argument("--length", type=int, default=50)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--fixture", dest="fixtures", action="append", default=[])
    p.add_argument("--degree", type=int, default=3)

    p = sub.add_parser("search", help="search for virtual knots with unit Jones polynomial")
    p.add_argument("action", choices=("unit-jones",))
    _add_common(p)
    p.add_argument("--max-classical", type=int, default=4)
    p.add_argument("--sample", type=int)
    p.add_argument("--seed", type=int, default=0)
    return parser


def _fail(code: str, message: str) -> int:
    print(f"error: {code}: {' '.join(str(message).split())}", file=sys.stderr)
    return EXIT_USAGE


def main(argv: Optional[List[str]] = None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except UsageError as e:
        return _fail(e.code, str(e))
    verbose = vars(args).pop("verbose", False)
    if verbose:
        logging.basicConfig(level=logging.DEBUG, format="%(levelname)s %(name)s: %(message)s", stream=sys.stderr)
    options = {k: v for k, v in vars(args).items() if v is not None}
    try:
        cfg = RunConfig(**options)
    except ValidationError as e:
        first = e.errors()[0]
        return _fail("USAGE", first["msg"])
    try:
        return dispatch(cfg)
    except SkeinError as e:
        return _fail(e.code, e.message)
    except UsageError as e:
        return _fail(e.code, str(e))


if __name__ == "__main__":
    sys.exit(main())

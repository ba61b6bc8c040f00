"""
Bracket as a partition function of a Morse diagram.

Cups and caps carry the matrix M = [[0, iA], [-iA^-1, 0]]; a crossing is
R+ = A I + A^-1 U with U[(c,d),(a,b)] = M_cd M_ab (cap then cup), and
R- = A^-1 I + A U. Scalars live in Z[A, A^-1][i]; closed contractions are i-free.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from itertools import product
from typing import Dict, List, Sequence, Tuple

import numpy as np

from services.errors import BadIndex, NonIntegralComposition
from services.laurent import A, LOOP_VALUE, LaurentPoly

logger = logging.getLogger(__name__)


class GaussianLaurent:
    """re + i*im with Laurent-polynomial parts."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        self.re = LaurentPoly.coerce(re)
        self.im = LaurentPoly.coerce(im)

    @classmethod
    def lift(cls, value) -> "GaussianLaurent":
        return value if isinstance(value, GaussianLaurent) else cls(value, 0)

    def __add__(self, other):
        other = GaussianLaurent.lift(other)
        return GaussianLaurent(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __neg__(self):
        return GaussianLaurent(-self.re, -self.im)

    def __sub__(self, other):
        return self + (-GaussianLaurent.lift(other))

    def __mul__(self, other):
        other = GaussianLaurent.lift(other)
        return GaussianLaurent(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    __rmul__ = __mul__

    def is_zero(self) -> bool:
        return not self.re and not self.im

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, LaurentPoly)):
            other = GaussianLaurent.lift(other)
        if not isinstance(other, GaussianLaurent):
            return NotImplemented
        return self.re == other.re and self.im == other.im

    def __hash__(self):
        return hash((self.re, self.im))

    def __repr__(self) -> str:
        if not self.im:
            return f"({self.re})"
        return f"({self.re}) + i*({self.im})"


I_UNIT = GaussianLaurent(0, 1)
ZERO = GaussianLaurent()
ONE = GaussianLaurent(1)


def zeros(rows: int, cols: int) -> np.ndarray:
    out = np.empty((rows, cols), dtype=object)
    for r in range(rows):
        for c in range(cols):
            out[r, c] = ZERO
    return out


def eye(n: int) -> np.ndarray:
    out = zeros(n, n)
    for k in range(n):
        out[k, k] = ONE
    return out


def matmul(x: np.ndarray, y: np.ndarray) -> np.ndarray:
    out = zeros(x.shape[0], y.shape[1])
    for r in range(x.shape[0]):
        for c in range(y.shape[1]):
            acc = ZERO
            for k in range(x.shape[1]):
                if not x[r, k].is_zero() and not y[k, c].is_zero():
                    acc = acc + x[r, k] * y[k, c]
            out[r, c] = acc
    return out


def scaled(x: np.ndarray, s) -> np.ndarray:
    out = zeros(*x.shape)
    for idx in np.ndindex(*x.shape):
        out[idx] = x[idx] * s
    return out


def added(x: np.ndarray, y: np.ndarray) -> np.ndarray:
    out = zeros(*x.shape)
    for idx in np.ndindex(*x.shape):
        out[idx] = x[idx] + y[idx]
    return out


def matrices_equal(x: np.ndarray, y: np.ndarray) -> bool:
    return x.shape == y.shape and all(x[idx] == y[idx] for idx in np.ndindex(*x.shape))


@dataclass
class RMatrixSet:
    M: np.ndarray
    R_plus: np.ndarray
    R_minus: np.ndarray


def cup_cap_tensor(M: np.ndarray) -> np.ndarray:
    """U[(c,d),(a,b)] = M_cd M_ab, flattened with index 2*first + second."""
    out = zeros(4, 4)
    for c, d, a, b in product(range(2), repeat=4):
        out[2 * c + d, 2 * a + b] = M[c, d] * M[a, b]
    return out


def default_rmatrix() -> RMatrixSet:
    M = zeros(2, 2)
    M[0, 1] = GaussianLaurent(0, A)
    M[1, 0] = GaussianLaurent(0, -(A ** -1))
    U = cup_cap_tensor(M)
    one = eye(4)
    r_plus = added(scaled(one, A), scaled(U, A ** -1))
    r_minus = added(scaled(one, A ** -1), scaled(U, A))
    return RMatrixSet(M=M, R_plus=r_plus, R_minus=r_minus)


EVENTS = ("cup", "cap", "cross+", "cross-")

Event = Tuple[str, int]


@dataclass(frozen=True)
class MorseWord:
    events: Tuple[Event, ...]
    width_in: int = 0
    profile: Tuple[int, ...] = field(init=False)

    def __post_init__(self):
        widths = [self.width_in]
        w = self.width_in
        for kind, i in self.events:
            if kind not in EVENTS:
                raise BadIndex(f"unknown Morse event {kind!r}")
            if kind == "cup":
                if not 0 <= i <= w:
                    raise BadIndex(f"cup({i}) on {w} strands")
                w += 2
            elif not 0 <= i < w - 1:
                raise BadIndex(f"{kind}({i}) needs strands {i} and {i + 1} of {w}")
            elif kind == "cap":
                w -= 2
            widths.append(w)
        object.__setattr__(self, "profile", tuple(widths))

    @property
    def width_out(self) -> int:
        return self.profile[-1]

    def to_json(self) -> list:
        return [[kind, i] for kind, i in self.events]


def compile_morse(n: int, word: Sequence[int], closure: str = "trace") -> MorseWord:
    """Trace closure of a braid: n nested cups, the letters, n nested caps."""
    if closure != "trace":
        raise BadIndex(f"unsupported closure {closure!r}")
    if n < 1:
        raise BadIndex(f"braid needs at least one strand, got {n}")
    events: List[Event] = [("cup", k) for k in range(n)]
    for g in word:
        if g == 0 or abs(g) >= n:
            raise BadIndex(f"generator {g} out of range for {n} strands")
        events.append(("cross+" if g > 0 else "cross-", abs(g) - 1))
    events.extend(("cap", k) for k in reversed(range(n)))
    return MorseWord(tuple(events))


Vector = Dict[Tuple[int, ...], GaussianLaurent]


def _step(vec: Vector, event: Event, rm: RMatrixSet) -> Vector:
    kind, i = event
    out: Vector = {}

    def put(key, value):
        if value.is_zero():
            return
        prev = out.get(key)
        out[key] = value if prev is None else prev + value

    for key, v in vec.items():
        if kind == "cup":
            for a, b in product(range(2), repeat=2):
                if not rm.M[a, b].is_zero():
                    put(key[:i] + (a, b) + key[i:], v * rm.M[a, b])
        elif kind == "cap":
            m = rm.M[key[i], key[i + 1]]
            if not m.is_zero():
                put(key[:i] + key[i + 2:], v * m)
        else:
            R = rm.R_plus if kind == "cross+" else rm.R_minus
            col = 2 * key[i] + key[i + 1]
            for row in range(4):
                r = R[row, col]
                if not r.is_zero():
                    put(key[:i] + (row >> 1, row & 1) + key[i + 2:], v * r)
    return {k: v for k, v in out.items() if not v.is_zero()}


def sweep(mw: MorseWord, rm: RMatrixSet, start: Vector) -> Vector:
    vec = start
    for event in mw.events:
        vec = _step(vec, event, rm)
    return vec


def operator(mw: MorseWord, rm: RMatrixSet) -> np.ndarray:
    """Matrix of an open Morse word, rows indexed by output bits, columns by input bits."""
    w_in, w_out = mw.width_in, mw.width_out
    out = zeros(2 ** w_out, 2 ** w_in)
    for col, bits in enumerate(product(range(2), repeat=w_in)):
        for key, v in sweep(mw, rm, {tuple(bits): ONE}).items():
            row = int("".join(map(str, key)), 2) if key else 0
            out[row, col] = out[row, col] + v
    return out


def contract(mw: MorseWord, rm: RMatrixSet) -> LaurentPoly:
    """Closed contraction; equals d times the bracket of the diagram."""
    if mw.width_in or mw.width_out:
        raise BadIndex("contract needs a closed Morse word")
    value = sweep(mw, rm, {(): ONE}).get((), ZERO)
    if value.im:
        raise NonIntegralComposition(f"closed contraction left an imaginary part {value.im}")
    logger.debug("contracted %d events, max width %d", len(mw.events), max(mw.profile))
    return value.re


@dataclass
class AxiomCheck:
    group: str
    name: str
    passed: bool
    residual: List[List[str]] = field(default_factory=list)


def _check(group: str, name: str, lhs: np.ndarray, rhs: np.ndarray) -> AxiomCheck:
    ok = matrices_equal(lhs, rhs)
    residual = []
    if not ok and lhs.shape == rhs.shape:
        diff = added(lhs, scaled(rhs, -1))
        residual = [[repr(diff[r, c]) for c in range(diff.shape[1])] for r in range(diff.shape[0])]
    return AxiomCheck(group, name, ok, residual)


def _word(events: Sequence[Event], width_in: int) -> MorseWord:
    return MorseWord(tuple(events), width_in)


def verify_tensor_axioms(rm: RMatrixSet) -> List[AxiomCheck]:
    checks = []
    one2, one4 = eye(2), eye(4)

    def op(events: Sequence[Event], width_in: int) -> np.ndarray:
        return operator(_word(events, width_in), rm)

    checks.append(_check("min_max", "cup(1) cap(0)", op([("cup", 1), ("cap", 0)], 1), one2))
    checks.append(_check("min_max", "cup(0) cap(1)", op([("cup", 0), ("cap", 1)], 1), one2))

    loop = op([("cup", 0), ("cap", 0)], 0)
    checks.append(_check("loop", "tr(M M^T) = d", loop, scaled(eye(1), LOOP_VALUE)))

    checks.append(_check("vertical_r2", "R+ R-", matmul(rm.R_plus, rm.R_minus), one4))
    checks.append(_check("vertical_r2", "R- R+", matmul(rm.R_minus, rm.R_plus), one4))

    for sign in ("+", "-"):
        cross = "cross" + sign
        checks.append(_check(
            "slide", f"{cross} over a maximum",
            op([(cross, 0), (cross, 1), ("cap", 0)], 3), op([("cap", 1)], 3),
        ))
        checks.append(_check(
            "slide", f"{cross} under a minimum",
            op([("cup", 0), (cross, 1), (cross, 0)], 1), op([("cup", 1)], 1),
        ))

    twist = op([("cup", 1), ("cross+", 0), ("cap", 1)], 1)
    checks.append(_check("twist", "positive curl = -A^3", twist, scaled(one2, -(A ** 3))))

    for cross in ("cross+", "cross-"):
        lhs = op([(cross, 0), (cross, 1), (cross, 0)], 3)
        rhs = op([(cross, 1), (cross, 0), (cross, 1)], 3)
        checks.append(_check("ybe", f"{cross} braid relation", lhs, rhs))
    return checks

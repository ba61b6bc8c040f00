"""
Sparse integer matrices and Smith normal form.

Elimination picks the pivot of minimal absolute value (units first, then the
sparsest row/column) and reduces both its row and column completely; any
remainders make a smaller pivot available, so the loop terminates. The
resulting diagonal is brought into divisibility order with gcd/lcm swaps.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Mapping, Sequence, Tuple

import numpy as np

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class IntMatrix:
    rows: int
    cols: int
    entries: Mapping[Tuple[int, int], int] = field(default_factory=dict)

    def __post_init__(self):
        clean = {}
        for (r, c), v in dict(self.entries).items():
            if not (0 <= r < self.rows and 0 <= c < self.cols):
                raise IndexError(f"entry ({r},{c}) outside {self.rows}x{self.cols}")
            if v:
                clean[(r, c)] = int(v)
        object.__setattr__(self, "entries", clean)

    @classmethod
    def from_dense(cls, data: Sequence[Sequence[int]]) -> "IntMatrix":
        rows = len(data)
        cols = len(data[0]) if rows else 0
        return cls(rows, cols, {(r, c): v for r, row in enumerate(data) for c, v in enumerate(row) if v})

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "IntMatrix":
        return cls(rows, cols, {})

    def to_dense(self) -> List[List[int]]:
        out = [[0] * self.cols for _ in range(self.rows)]
        for (r, c), v in self.entries.items():
            out[r][c] = v
        return out

    def to_numpy(self) -> np.ndarray:
        arr = np.zeros((self.rows, self.cols), dtype=object)
        for (r, c), v in self.entries.items():
            arr[r, c] = v
        return arr

    def is_zero(self) -> bool:
        return not self.entries

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.rows}x{self.cols} @ {other.rows}x{other.cols}")
        by_row: Dict[int, Dict[int, int]] = {}
        for (r, c), v in other.entries.items():
            by_row.setdefault(r, {})[c] = v
        out: Dict[Tuple[int, int], int] = {}
        for (r, k), v in self.entries.items():
            for c, w in by_row.get(k, {}).items():
                out[(r, c)] = out.get((r, c), 0) + v * w
        return IntMatrix(self.rows, other.cols, out)

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> "IntMatrix":
        rmap = {r: i for i, r in enumerate(rows)}
        cmap = {c: j for j, c in enumerate(cols)}
        return IntMatrix(
            len(rows),
            len(cols),
            {(rmap[r], cmap[c]): v for (r, c), v in self.entries.items() if r in rmap and c in cmap},
        )


@dataclass(frozen=True)
class SmithForm:
    diagonal: Tuple[int, ...]
    rank: int

    @property
    def torsion(self) -> List[int]:
        return [d for d in self.diagonal if d > 1]


def _fix_divisibility(values: List[int]) -> List[int]:
    vals = sorted(values)
    changed = True
    while changed:
        changed = False
        for i in range(len(vals)):
            for j in range(i + 1, len(vals)):
                a, b = vals[i], vals[j]
                if b % a:
                    g = math.gcd(a, b)
                    vals[i], vals[j] = g, a // g * b
                    changed = True
        vals.sort()
    return vals


def _pick_pivot(rows: Dict[int, Dict[int, int]], cols: Dict[int, set]) -> Tuple[int, int]:
    best = None
    best_key = None
    for r, row in rows.items():
        for c, v in row.items():
            key = (abs(v), (len(row) - 1) * (len(cols[c]) - 1))
            if best_key is None or key < best_key:
                best, best_key = (r, c), key
                if key == (1, 0):
                    return best
    return best


def smith_normal_form(m: IntMatrix) -> SmithForm:
    rows: Dict[int, Dict[int, int]] = {}
    cols: Dict[int, set] = {}
    for (r, c), v in m.entries.items():
        rows.setdefault(r, {})[c] = v
        cols.setdefault(c, set()).add(r)

    def set_entry(r: int, c: int, v: int) -> None:
        row = rows.setdefault(r, {})
        if v:
            row[c] = v
            cols.setdefault(c, set()).add(r)
        else:
            row.pop(c, None)
            cols.get(c, set()).discard(r)
            if not row:
                rows.pop(r, None)

    diag: List[int] = []
    while rows:
        pr, pc = _pick_pivot(rows, cols)
        p = rows[pr][pc]
        clean = True
        # clear the pivot column with row operations
        for r in list(cols[pc]):
            if r == pr:
                continue
            q = rows[r][pc] // p
            if q:
                for c, v in list(rows[pr].items()):
                    set_entry(r, c, rows.get(r, {}).get(c, 0) - q * v)
            if r in rows and pc in rows[r]:
                clean = False
        # clear the pivot row with column operations; only the pivot row holds column pc now
        if clean:
            for c in list(rows[pr]):
                if c == pc:
                    continue
                q = rows[pr][c] // p
                if q:
                    set_entry(pr, c, rows[pr][c] - q * p)
                if pc != c and c in rows.get(pr, {}):
                    clean = False
        if not clean:
            continue
        diag.append(abs(p))
        set_entry(pr, pc, 0)
        cols.pop(pc, None)

    nonzero = _fix_divisibility(diag) if diag else []
    size = min(m.rows, m.cols)
    logger.debug("smith normal form of %dx%d: rank %d", m.rows, m.cols, len(nonzero))
    return SmithForm(diagonal=tuple(nonzero + [0] * (size - len(nonzero))), rank=len(nonzero))


def rank(m: IntMatrix) -> int:
    return smith_normal_form(m).rank

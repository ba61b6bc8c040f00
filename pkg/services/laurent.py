"""
Exact multivariate Laurent polynomials with integer coefficients.

Exponents live on a quarter-integer grid: every exponent is stored as an integer
count of quarter units, so ``A -> t^(-1/4)`` and ``z -> t^(1/2) - t^(-1/2)`` stay exact.
Values are immutable and canonical (alphabetical variables, no zero coefficients,
no variable whose exponent is zero in every term), so ``==`` and ``hash`` are structural.
"""

from __future__ import annotations

import math
import re
from fractions import Fraction
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple, Union

from services.errors import BadIndex, NonIntegralComposition, ParseError

QUARTER = 4

Exponents = Tuple[int, ...]
Number = Union[int, Fraction]


def _to_quarters(exponent: Number) -> int:
    q = Fraction(exponent) * QUARTER
    if q.denominator != 1:
        raise NonIntegralComposition(f"exponent {exponent} is not on the quarter grid")
    return int(q)


def _format_exponent(quarters: int) -> str:
    f = Fraction(quarters, QUARTER)
    if f.denominator == 1:
        return str(f.numerator)
    return f"({f.numerator}/{f.denominator})"


class LaurentPoly:
    __slots__ = ("variables", "terms", "_hash")

    def __init__(self, variables: Sequence[str] = (), terms: Optional[Mapping[Exponents, int]] = None):
        variables = tuple(variables)
        terms = dict(terms or {})
        for e in terms:
            if len(e) != len(variables):
                raise ValueError("exponent vector length does not match variable list")
        order = sorted(range(len(variables)), key=lambda i: variables[i])
        if len(set(variables)) != len(variables):
            raise ValueError(f"duplicate variables in {variables}")
        vs = tuple(variables[i] for i in order)
        ts = {tuple(e[i] for i in order): int(c) for e, c in terms.items() if c}
        self._set(vs, ts)

    def _set(self, variables: Tuple[str, ...], terms: Dict[Exponents, int]) -> None:
        # strip variables unused in every term
        used = [i for i in range(len(variables)) if any(e[i] for e in terms)]
        if len(used) != len(variables):
            variables = tuple(variables[i] for i in used)
            stripped: Dict[Exponents, int] = {}
            for e, c in terms.items():
                key = tuple(e[i] for i in used)
                stripped[key] = stripped.get(key, 0) + c
            terms = {e: c for e, c in stripped.items() if c}
        object.__setattr__(self, "variables", variables)
        object.__setattr__(self, "terms", terms)
        object.__setattr__(self, "_hash", None)

    @classmethod
    def _raw(cls, variables: Tuple[str, ...], terms: Dict[Exponents, int]) -> "LaurentPoly":
        p = cls.__new__(cls)
        p._set(variables, {e: c for e, c in terms.items() if c})
        return p

    def __setattr__(self, key, value):
        raise AttributeError("LaurentPoly is immutable")

    # constructors

    @classmethod
    def zero(cls) -> "LaurentPoly":
        return cls._raw((), {})

    @classmethod
    def constant(cls, c: int) -> "LaurentPoly":
        return cls._raw((), {(): int(c)})

    @classmethod
    def var(cls, name: str, exponent: Number = 1, coeff: int = 1) -> "LaurentPoly":
        return cls._raw((name,), {(_to_quarters(exponent),): coeff})

    @classmethod
    def monomial(cls, coeff: int = 1, **exponents: Number) -> "LaurentPoly":
        names = tuple(sorted(exponents))
        return cls._raw(names, {tuple(_to_quarters(exponents[n]) for n in names): coeff})

    @classmethod
    def coerce(cls, value: Union["LaurentPoly", int]) -> "LaurentPoly":
        if isinstance(value, LaurentPoly):
            return value
        if isinstance(value, int):
            return cls.constant(value)
        raise TypeError(f"cannot coerce {type(value).__name__} to LaurentPoly")

    # inspection

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def is_constant(self) -> bool:
        return not self.variables

    def num_terms(self) -> int:
        return len(self.terms)

    def constant_term(self) -> int:
        return self.terms.get(tuple(0 for _ in self.variables), 0)

    def coefficient(self, **exponents: Number) -> int:
        if any(n not in self.variables and e for n, e in exponents.items()):
            return 0
        key = tuple(_to_quarters(exponents.get(v, 0)) for v in self.variables)
        return self.terms.get(key, 0)

    def exponents_of(self, var: str) -> List[Fraction]:
        if var not in self.variables:
            return [Fraction(0)] if self.terms else []
        i = self.variables.index(var)
        return sorted({Fraction(e[i], QUARTER) for e in self.terms})

    def sorted_terms(self) -> List[Tuple[Exponents, int]]:
        return sorted(self.terms.items())

    # arithmetic

    @staticmethod
    def _align(p: "LaurentPoly", q: "LaurentPoly"):
        if p.variables == q.variables:
            return p.variables, p.terms, q.terms
        names = tuple(sorted(set(p.variables) | set(q.variables)))

        def lift(x: "LaurentPoly") -> Dict[Exponents, int]:
            pos = [x.variables.index(n) if n in x.variables else -1 for n in names]
            return {tuple(e[i] if i >= 0 else 0 for i in pos): c for e, c in x.terms.items()}

        return names, lift(p), lift(q)

    def __add__(self, other):
        if isinstance(other, int):
            other = LaurentPoly.constant(other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        names, a, b = self._align(self, other)
        out = dict(a)
        for e, c in b.items():
            out[e] = out.get(e, 0) + c
        return LaurentPoly._raw(names, out)

    __radd__ = __add__

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly._raw(self.variables, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        if isinstance(other, int):
            other = LaurentPoly.constant(other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            return self.scale(other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        names, a, b = self._align(self, other)
        out: Dict[Exponents, int] = {}
        for e1, c1 in a.items():
            for e2, c2 in b.items():
                e = tuple(x + y for x, y in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        return LaurentPoly._raw(names, out)

    __rmul__ = __mul__

    def scale(self, k: int) -> "LaurentPoly":
        return LaurentPoly._raw(self.variables, {e: c * k for e, c in self.terms.items()})

    def inverse(self) -> "LaurentPoly":
        """Inverse of a unit monomial (coefficient ±1)."""
        if not self.is_monomial():
            raise NonIntegralComposition(f"{self} is not invertible")
        (e, c), = self.terms.items()
        if c not in (1, -1):
            raise NonIntegralComposition(f"{self} is not invertible over the integers")
        return LaurentPoly._raw(self.variables, {tuple(-x for x in e): c})

    def __pow__(self, n: int) -> "LaurentPoly":
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inverse() ** (-n)
        if self.is_monomial():
            (e, c), = self.terms.items()
            return LaurentPoly._raw(self.variables, {tuple(x * n for x in e): c ** n})
        result = LaurentPoly.constant(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = LaurentPoly.constant(other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self.variables == other.variables and self.terms == other.terms

    def __hash__(self) -> int:
        h = object.__getattribute__(self, "_hash")
        if h is None:
            h = hash((self.variables, frozenset(self.terms.items())))
            object.__setattr__(self, "_hash", h)
        return h

    # composition

    def substitute(self, var: str, image: Union["LaurentPoly", int]) -> "LaurentPoly":
        """Replace `var` by `image`.

        A monomial image accepts any quarter-grid exponent as long as the composed
        exponents stay on the grid; a general polynomial image needs nonnegative
        integral exponents of `var`.
        """
        image = LaurentPoly.coerce(image)
        if var not in self.variables:
            return self
        i = self.variables.index(var)
        rest_names = self.variables[:i] + self.variables[i + 1:]
        groups: Dict[int, Dict[Exponents, int]] = {}
        for e, c in self.terms.items():
            groups.setdefault(e[i], {})[e[:i] + e[i + 1:]] = c
        powers = {q: _image_power(image, q) for q in groups}
        out = LaurentPoly.zero()
        for q, rest in groups.items():
            out = out + LaurentPoly._raw(rest_names, rest) * powers[q]
        return out

    def substitute_many(self, mapping: Mapping[str, Union["LaurentPoly", int]]) -> "LaurentPoly":
        out = self
        for var, image in mapping.items():
            out = out.substitute(var, image)
        return out

    def series_coeffs(self, var: str, n_max: int) -> List[Fraction]:
        """Taylor coefficients at var = e^x: c_k = sum coeff * exponent^k / k!."""
        others = [v for v in self.variables if v != var]
        if others:
            raise BadIndex(f"series_coeffs needs a polynomial in {var} only, got {self.variables}")
        if var in self.variables:
            i = self.variables.index(var)
            pairs = [(Fraction(e[i], QUARTER), c) for e, c in self.terms.items()]
        else:
            pairs = [(Fraction(0), c) for c in self.terms.values()]
        return [sum((c * ex ** k for ex, c in pairs), Fraction(0)) / math.factorial(k) for k in range(n_max + 1)]

    # serialization

    def to_json(self) -> dict:
        return {
            "vars": list(self.variables),
            "edenom": QUARTER,
            "terms": [{"e": list(e), "c": c} for e, c in self.sorted_terms()],
        }

    @classmethod
    def from_json(cls, data: Mapping) -> "LaurentPoly":
        denom = int(data.get("edenom", QUARTER))
        if QUARTER % denom:
            raise ParseError(f"exponent denominator {denom} does not divide {QUARTER}")
        scale = QUARTER // denom
        names = tuple(data.get("vars", []))
        terms = {tuple(int(x) * scale for x in t["e"]): int(t["c"]) for t in data.get("terms", [])}
        return cls(names, terms)

    def to_text(self) -> str:
        if not self.terms:
            return "0"
        pieces = []
        for e, c in sorted(self.terms.items(), reverse=True):
            factors = []
            for name, q in zip(self.variables, e):
                if q == 0:
                    continue
                factors.append(name if q == QUARTER else f"{name}^{_format_exponent(q)}")
            mono = "*".join(factors)
            mag = abs(c)
            if not mono:
                body = str(mag)
            elif mag == 1:
                body = mono
            else:
                body = f"{mag}*{mono}"
            pieces.append(("-" if c < 0 else "+", body))
        sign, body = pieces[0]
        text = ("-" if sign == "-" else "") + body
        for sign, body in pieces[1:]:
            text += f" {sign} {body}"
        return text

    def __str__(self) -> str:
        return self.to_text()

    def __repr__(self) -> str:
        return f"LaurentPoly({self.to_text()!r})"


def _image_power(image: LaurentPoly, quarters: int) -> LaurentPoly:
    """image ** (quarters / 4), exactly, or NonIntegralComposition."""
    if quarters == 0:
        return LaurentPoly.constant(1)
    if image.is_monomial():
        (e, c), = image.terms.items()
        new_e = []
        for x in e:
            if (x * quarters) % QUARTER:
                raise NonIntegralComposition(f"({image})^({Fraction(quarters, QUARTER)}) leaves the quarter grid")
            new_e.append(x * quarters // QUARTER)
        if c == 1:
            coeff = 1
        elif quarters % QUARTER:
            raise NonIntegralComposition(f"fractional power of coefficient {c}")
        elif c == -1:
            coeff = (-1) ** (quarters // QUARTER)
        elif quarters > 0:
            coeff = c ** (quarters // QUARTER)
        else:
            raise NonIntegralComposition(f"negative power of coefficient {c}")
        return LaurentPoly._raw(image.variables, {tuple(new_e): coeff})
    if quarters % QUARTER or quarters < 0:
        raise NonIntegralComposition(
            f"cannot raise the non-monomial {image} to the power {Fraction(quarters, QUARTER)}"
        )
    return image ** (quarters // QUARTER)


def substitute(p: LaurentPoly, var: str, image: Union[LaurentPoly, int]) -> LaurentPoly:
    return p.substitute(var, image)


def series_coeffs(p: LaurentPoly, var: str, n_max: int) -> List[Fraction]:
    return p.series_coeffs(var, n_max)


def laurent_arith(op: str, p: LaurentPoly, q: Union[LaurentPoly, int, None] = None) -> LaurentPoly:
    if op == "add":
        return p + q
    if op == "mul":
        return p * q
    if op == "neg":
        return -p
    if op == "scale":
        if not isinstance(q, int):
            raise TypeError("scale needs an integer factor")
        return p.scale(q)
    raise ValueError(f"unknown operation {op!r}")


def poly_sum(items: Iterable[LaurentPoly]) -> LaurentPoly:
    out = LaurentPoly.zero()
    for p in items:
        out = out + p
    return out


_FACTOR_RE = re.compile(r"^([A-Za-z][A-Za-z0-9_]*)(?:\^(-?\d+|\((-?\d+)/(\d+)\)))?$")


def parse_poly(text: str) -> LaurentPoly:
    """Parse the text form produced by `LaurentPoly.to_text`, e.g. ``-t^4 + t^3 + t``."""
    src = text.replace(" ", "")
    if not src:
        raise ParseError("empty polynomial text")
    if src == "0":
        return LaurentPoly.zero()
    chunks, start = [], 0
    for i, ch in enumerate(src):
        if ch in "+-" and i > 0 and src[i - 1] not in "^(":
            chunks.append(src[start:i])
            start = i
    chunks.append(src[start:])
    out = LaurentPoly.zero()
    for chunk in chunks:
        coeff = -1 if chunk.startswith("-") else 1
        body = chunk[1:] if chunk[:1] in "+-" else chunk
        exps: Dict[str, Fraction] = {}
        for factor in body.split("*"):
            if factor.isdigit():
                coeff *= int(factor)
                continue
            m = _FACTOR_RE.match(factor)
            if not m:
                raise ParseError(f"bad factor {factor!r} in {text!r}")
            name, plain, num, den = m.groups()
            if num is not None:
                e = Fraction(int(num), int(den))
            elif plain is not None:
                e = Fraction(int(plain))
            else:
                e = Fraction(1)
            exps[name] = exps.get(name, Fraction(0)) + e
        out = out + LaurentPoly.monomial(coeff, **exps)
    return out


A = LaurentPoly.var("A")
LOOP_VALUE = -(A ** 2) - A ** -2

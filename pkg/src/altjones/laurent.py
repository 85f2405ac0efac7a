"""Exact Laurent polynomials in one variable ``q`` over the integers.

A polynomial is stored as a sorted tuple of ``(exponent, coefficient)`` pairs
with no zero coefficients, so equal polynomials compare and hash equal.

Alternation and parity classes
------------------------------
A nonzero polynomial is *alternating* when all exponents share one parity and
the sign of the coefficient at ``e`` is ``s * (-1) ** ((e - e0) / 2)`` for a
fixed reference exponent ``e0``.  Interior zero coefficients are allowed.

The *parity class* of an alternating polynomial is the residue mod 4 of the
exponents that carry a positive coefficient.  Two alternating polynomials have
the same parity exactly when their classes agree.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Mapping

__all__ = [
    "LaurentPoly",
    "NotDivisibleError",
    "ZERO",
    "ONE",
    "Q",
    "LOOP",
    "add",
    "mul",
    "is_alternating_poly",
    "parity_class",
    "leading_terms",
    "div_exact",
    "monomial",
]

_EXP_LIMIT = 1 << 40


class NotDivisibleError(ArithmeticError):
    """Raised when an exact quotient does not exist."""


@dataclass(frozen=True)
class LaurentPoly:
    terms: tuple[tuple[int, int], ...] = ()

    def __post_init__(self):
        for i, (e, c) in enumerate(self.terms):
            if c == 0:
                raise ValueError("zero coefficient stored")
            if i and self.terms[i - 1][0] >= e:
                raise ValueError("terms must be sorted by strictly increasing exponent")
            assert -_EXP_LIMIT < e < _EXP_LIMIT, "exponent out of range"

    @classmethod
    def from_dict(cls, coeffs: Mapping[int, int]) -> LaurentPoly:
        return cls(tuple(sorted((int(e), int(c)) for e, c in coeffs.items() if c != 0)))

    @classmethod
    def from_terms(cls, pairs: Iterable[tuple[int, int]]) -> LaurentPoly:
        acc: dict[int, int] = {}
        for e, c in pairs:
            acc[e] = acc.get(e, 0) + c
        return cls.from_dict(acc)

    # -- container-ish helpers -------------------------------------------------
    def as_dict(self) -> dict[int, int]:
        return dict(self.terms)

    def coeff(self, e: int) -> int:
        for ee, c in self.terms:
            if ee == e:
                return c
        return 0

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    @property
    def min_exp(self) -> int:
        if not self.terms:
            raise ValueError("zero polynomial has no exponents")
        return self.terms[0][0]

    @property
    def max_exp(self) -> int:
        if not self.terms:
            raise ValueError("zero polynomial has no exponents")
        return self.terms[-1][0]

    # -- arithmetic ------------------------------------------------------------
    def __add__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return add(self, other)

    __radd__ = __add__

    def __neg__(self) -> LaurentPoly:
        return LaurentPoly(tuple((e, -c) for e, c in self.terms))

    def __sub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return add(self, -other)

    def __rsub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return add(other, -self)

    def __mul__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return mul(self, other)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> LaurentPoly:
        if n < 0:
            if len(self.terms) != 1 or abs(self.terms[0][1]) != 1:
                raise NotDivisibleError("only unit monomials have negative powers")
            e, c = self.terms[0]
            return LaurentPoly((((e * n), c ** (-n)),))
        result = ONE
        base = self
        while n:
            if n & 1:
                result = mul(result, base)
            base = mul(base, base)
            n >>= 1
        return result

    def shift(self, k: int) -> LaurentPoly:
        """Multiply by ``q**k``."""
        return LaurentPoly(tuple((e + k, c) for e, c in self.terms))

    def evaluate(self, x):
        return sum(c * x**e for e, c in self.terms)

    # -- rendering -------------------------------------------------------------
    def __str__(self) -> str:
        return to_text(self)

    def __repr__(self) -> str:
        return f"LaurentPoly({to_text(self)!r})"

    def to_json(self) -> dict[str, int]:
        return {str(e): c for e, c in self.terms}

    @classmethod
    def from_json(cls, obj: Mapping[str, int]) -> LaurentPoly:
        return cls.from_dict({int(e): int(c) for e, c in obj.items()})

    @classmethod
    def parse(cls, text: str) -> LaurentPoly:
        return from_text(text)


def _coerce(x):
    if isinstance(x, LaurentPoly):
        return x
    if isinstance(x, int):
        return LaurentPoly(((0, x),)) if x else LaurentPoly()
    return NotImplemented


def monomial(c: int, e: int) -> LaurentPoly:
    return LaurentPoly(((e, c),)) if c else LaurentPoly()


ZERO = LaurentPoly()
ONE = monomial(1, 0)
Q = monomial(1, 1)
LOOP = LaurentPoly(((-1, 1), (1, 1)))  # value of a free loop, q + q^-1


def add(p: LaurentPoly, q: LaurentPoly) -> LaurentPoly:
    acc = dict(p.terms)
    for e, c in q.terms:
        acc[e] = acc.get(e, 0) + c
    return LaurentPoly.from_dict(acc)


def mul(p: LaurentPoly, q: LaurentPoly) -> LaurentPoly:
    acc: dict[int, int] = {}
    for e1, c1 in p.terms:
        for e2, c2 in q.terms:
            acc[e1 + e2] = acc.get(e1 + e2, 0) + c1 * c2
    return LaurentPoly.from_dict(acc)


def _sign(c: int) -> int:
    return 1 if c > 0 else -1


def is_alternating_poly(p: LaurentPoly) -> bool:
    """True for zero, or when signs flip at every step of 2 in the exponent."""
    if not p.terms:
        return True
    e0, c0 = p.terms[0]
    s0 = _sign(c0)
    for e, c in p.terms[1:]:
        d = e - e0
        if d % 2:
            return False
        expected = s0 if (d // 2) % 2 == 0 else -s0
        if _sign(c) != expected:
            return False
    return True


def parity_class(p: LaurentPoly) -> int:
    """Residue mod 4 of the exponents carrying positive coefficients."""
    if not p.terms:
        raise ValueError("parity class of the zero polynomial is undefined")
    if not is_alternating_poly(p):
        raise ValueError(f"not an alternating polynomial: {p}")
    e, c = p.terms[0]
    return e % 4 if c > 0 else (e + 2) % 4


def leading_terms(p: LaurentPoly) -> tuple[tuple[int, int, int], tuple[int, int, int]]:
    """Return ``((sign, magnitude, exponent), ...)`` at the min and max exponent."""
    if not p.terms:
        raise ValueError("zero polynomial has no leading terms")
    (e0, c0), (e1, c1) = p.terms[0], p.terms[-1]
    return (_sign(c0), abs(c0), e0), (_sign(c1), abs(c1), e1)


def div_exact(p: LaurentPoly, d: LaurentPoly) -> LaurentPoly:
    """Exact quotient ``p / d``; raises :class:`NotDivisibleError` otherwise."""
    if not d.terms:
        raise ZeroDivisionError("division by the zero polynomial")
    if not p.terms:
        return ZERO
    dlo, dlc = d.terms[0]
    top = p.max_exp - d.max_exp  # largest admissible quotient exponent
    rem = dict(p.terms)
    quot: dict[int, int] = {}
    # long division from the lowest exponent upward
    while rem:
        lo = min(rem)
        qe = lo - dlo
        if qe > top or rem[lo] % dlc:
            raise NotDivisibleError(f"{p} is not divisible by {d}")
        qc = rem[lo] // dlc
        quot[qe] = qc
        for e, dc in d.terms:
            v = rem.get(qe + e, 0) - qc * dc
            if v:
                rem[qe + e] = v
            else:
                rem.pop(qe + e, None)
    return LaurentPoly.from_dict(quot)


# -- text format ---------------------------------------------------------------

def to_text(p: LaurentPoly) -> str:
    """Ascending-exponent rendering, e.g. ``-q^-2 + q^-1``."""
    if not p.terms:
        return "0"
    parts = []
    for i, (e, c) in enumerate(p.terms):
        mag = abs(c)
        if e == 0:
            body = str(mag)
        else:
            var = "q" if e == 1 else f"q^{e}"
            body = var if mag == 1 else f"{mag}{var}"
        if i == 0:
            parts.append(("-" if c < 0 else "") + body)
        else:
            parts.append(("- " if c < 0 else "+ ") + body)
    return " ".join(parts)


_TERM = re.compile(r"([+-]?)\s*(\d*)\s*(q(?:\^(-?\d+))?)?")


def from_text(text: str) -> LaurentPoly:
    s = text.replace("−", "-").replace(" ", "")
    if s in ("", "0"):
        return ZERO
    pos = 0
    acc: dict[int, int] = {}
    while pos < len(s):
        m = _TERM.match(s, pos)
        if not m or m.end() == pos or (not m.group(2) and not m.group(3)):
            raise ValueError(f"cannot parse Laurent polynomial at column {pos + 1}: {text!r}")
        sign = -1 if m.group(1) == "-" else 1
        if pos > 0 and not m.group(1):
            raise ValueError(f"missing operator at column {pos + 1}: {text!r}")
        mag = int(m.group(2)) if m.group(2) else 1
        if m.group(3):
            e = int(m.group(4)) if m.group(4) is not None else 1
        else:
            e = 0
        acc[e] = acc.get(e, 0) + sign * mag
        pos = m.end()
    return LaurentPoly.from_dict(acc)

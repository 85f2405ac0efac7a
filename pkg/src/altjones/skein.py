"""Elements of the oriented skein module: finite sums of loop-free smoothings.

Coefficients are :class:`LaurentPoly`; a free loop is worth ``q + q^-1``
whatever its orientation.  Operators act multilinearly through
:func:`apply_operator`.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .laurent import LOOP, ONE, LaurentPoly, is_alternating_poly, parity_class, mul
from .planar import PlanarArcDiagram, apply, make_basic_unary
from .smoothing import (
    OrientedSmoothing,
    is_maximal,
    is_minimal,
    rotation_number,
    validate as validate_smoothing,
)

__all__ = [
    "SkeinElement",
    "SkeinError",
    "normalize",
    "apply_operator",
    "is_alternating_element",
    "alternation_witness",
    "unary_closures",
    "partial_closures",
    "is_coherently_alternating",
    "coherence_witness",
]


class SkeinError(ValueError):
    pass


@dataclass(frozen=True)
class SkeinElement:
    k: int
    in_parity: int
    terms: tuple[tuple[OrientedSmoothing, LaurentPoly], ...]

    def __post_init__(self):
        for s, c in self.terms:
            if s.k != self.k or s.in_parity != self.in_parity:
                raise SkeinError("all smoothings must share k and parity")
            if s.loops:
                raise SkeinError("basis smoothings carry no loops")
            if c.is_zero():
                raise SkeinError("zero coefficient stored")

    @classmethod
    def single(cls, s: OrientedSmoothing, coeff: LaurentPoly = ONE) -> SkeinElement:
        return normalize([(s, coeff)], s.k, s.in_parity)

    @classmethod
    def zero(cls, k: int, in_parity: int = 0) -> SkeinElement:
        return cls(k, in_parity, ())

    def is_zero(self) -> bool:
        return not self.terms

    def coeff(self, s: OrientedSmoothing) -> LaurentPoly:
        for t, c in self.terms:
            if t == s:
                return c
        return LaurentPoly()

    def __add__(self, other: SkeinElement) -> SkeinElement:
        if (self.k, self.in_parity) != (other.k, other.in_parity):
            raise SkeinError("cannot add elements of different modules")
        return normalize(list(self.terms) + list(other.terms), self.k, self.in_parity)

    def scale(self, c: LaurentPoly) -> SkeinElement:
        return normalize([(s, mul(a, c)) for s, a in self.terms], self.k, self.in_parity)

    def to_json(self) -> dict:
        return {
            "k": self.k,
            "parity": self.in_parity,
            "terms": [{"smoothing": s.to_json(), "coeff": c.to_json()} for s, c in self.terms],
        }

    @classmethod
    def from_json(cls, obj: dict) -> SkeinElement:
        raw = []
        for t in obj["terms"]:
            s = OrientedSmoothing.from_json(t["smoothing"])
            raw.append((s, LaurentPoly.from_json(t["coeff"])))
        return normalize(raw, obj["k"], obj.get("parity", obj.get("in_parity", 0)))

    def pretty(self) -> str:
        if not self.terms:
            return "0"
        return "\n+ ".join(f"({c}) {s}" for s, c in self.terms)

    def __str__(self) -> str:
        return " + ".join(f"({c}){s}" for s, c in self.terms) or "0"


def normalize(raw: Iterable[tuple[OrientedSmoothing, LaurentPoly]], k: int | None = None,
              in_parity: int | None = None) -> SkeinElement:
    """Remove loops (each a factor ``q + q^-1``), combine like terms, drop zeros."""
    acc: dict[OrientedSmoothing, LaurentPoly] = {}
    for s, c in raw:
        if k is None:
            k, in_parity = s.k, s.in_parity
        if s.k != k or s.in_parity != in_parity:
            raise SkeinError(f"term {s} does not live in the module (k={k}, parity={in_parity})")
        if not validate_smoothing(s):
            raise SkeinError(f"invalid smoothing {s}")
        if s.loops:
            c = mul(c, LOOP ** s.loops)
            s = s.without_loops()
        acc[s] = acc[s] + c if s in acc else c
    if k is None:
        raise SkeinError("cannot infer the module of an empty sum")
    terms = tuple(sorted(((s, c) for s, c in acc.items() if not c.is_zero()), key=lambda t: t[0].pairs))
    return SkeinElement(k, in_parity, terms)


def apply_operator(D: PlanarArcDiagram, elements: Sequence[SkeinElement]) -> SkeinElement:
    if len(elements) != D.d:
        raise SkeinError(f"diagram has {D.d} inputs, got {len(elements)} elements")
    for i, P in enumerate(elements, 1):
        n, p = D.inputs[i - 1]
        if 2 * P.k != n or P.in_parity != p:
            raise SkeinError(f"element {i} (k={P.k}, parity={P.in_parity}) does not fit disc {i}")
    raw = []
    for combo in itertools.product(*(P.terms for P in elements)):
        coeff = ONE
        for _, c in combo:
            coeff = mul(coeff, c)
        raw.append((apply(D, [s for s, _ in combo]), coeff))
    return normalize(raw, D.k, D.out_parity)


# -- alternation ----------------------------------------------------------------

def alternation_witness(P: SkeinElement, strict: bool = False) -> str | None:
    """Why ``P`` is not alternating, or ``None`` if it is."""
    for s, c in P.terms:
        if not is_alternating_poly(c):
            return f"coefficient {c} of {s} is not an alternating polynomial"
    data = [(s, parity_class(c), rotation_number(s)) for s, c in P.terms]
    if data:
        s0, pc0, r0 = data[0]
        for s, pc, r in data[1:]:
            dr = r - r0
            if dr.denominator != 1:
                return f"rotation numbers of {s0} and {s} differ by a non-integer"
            if (pc - pc0) % 4 != (-int(dr)) % 4:
                return (f"parity mismatch between {s0} (class {pc0}, R={r0}) "
                        f"and {s} (class {pc}, R={r})")
    if strict:
        if not any(is_minimal(s) for s, _ in P.terms):
            return "no term on the minimal smoothing"
        if not any(is_maximal(s) for s, _ in P.terms):
            return "no term on the maximal smoothing"
    return None


def is_alternating_element(P: SkeinElement, strict: bool = False) -> bool:
    """Alternating coefficients whose parity classes track rotation numbers.

    Two terms ``A_i s_i`` and ``A_j s_j`` are compatible when
    ``class(A_i) - class(A_j) == -(R(s_i) - R(s_j))  (mod 4)``.
    """
    return alternation_witness(P, strict) is None


def unary_closures(k: int, in_parity: int) -> list[PlanarArcDiagram]:
    """Every unary basic diagram that accepts an element of ``M_k`` with this parity."""
    if k < 2:
        return []
    return [make_basic_unary(k, j, in_parity) for j in range(2 * k)]


def _close_once(P: SkeinElement) -> list[SkeinElement]:
    return [apply_operator(U, [P]) for U in unary_closures(P.k, P.in_parity)]


def partial_closures(P: SkeinElement, depth: int) -> list[SkeinElement]:
    """Distinct elements obtained from ``P`` by exactly ``depth`` unary closures."""
    if not 0 <= depth < max(P.k, 1):
        raise SkeinError(f"depth must satisfy 0 <= l < k = {P.k}")
    level = [P]
    for _ in range(depth):
        seen = {}
        for Q in level:
            for R in _close_once(Q):
                seen.setdefault(R, None)
        level = list(seen)
    return level


def coherence_witness(P: SkeinElement) -> tuple[int, SkeinElement, str] | None:
    """First partial closure that is not alternating, as ``(depth, element, reason)``."""
    level = [P]
    for depth in range(max(P.k, 1)):
        for Q in level:
            why = alternation_witness(Q)
            if why is not None:
                return depth, Q, why
        if depth + 1 < P.k:
            nxt = {}
            for Q in level:
                for R in _close_once(Q):
                    nxt.setdefault(R, None)
            level = list(nxt)
    return None


def is_coherently_alternating(P: SkeinElement) -> bool:
    return coherence_witness(P) is None


def closure_census(P: SkeinElement) -> list[int]:
    """Number of distinct partial closures at each depth ``0 .. k-1``."""
    return [len(partial_closures(P, l)) for l in range(max(P.k, 1))]


def rotation_profile(P: SkeinElement) -> list[Fraction]:
    return [rotation_number(s) for s, _ in P.terms]

"""Oriented crossingless smoothings and their rotation numbers.

Boundary points of a ``k``-strand smoothing are numbered ``0 .. 2k-1``
counterclockwise.  Orientation alternates around the boundary, so it is fixed
by a single bit: with ``in_parity == 0`` the even points are where strands
start, with ``in_parity == 1`` the odd points are.  Each strand is stored as
``(a, b)`` with ``a`` its in-point and ``b`` its out-point.

A strand ``(a, b)`` has rotation number ``((b - a) mod 2k - k) / 2k``; free
loops count ``+1`` when counterclockwise and ``-1`` when clockwise.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from fractions import Fraction
from typing import Iterator

from .planemap import PlaneMap

__all__ = [
    "OrientedSmoothing",
    "SmoothingError",
    "validate",
    "diagnose",
    "strand_rotation",
    "rotation_number",
    "is_minimal",
    "is_maximal",
    "exchange_ends",
    "shared_region_sign",
    "enumerate_smoothings",
    "noncrossing_matchings",
    "minimal_smoothing",
    "maximal_smoothing",
]


class SmoothingError(ValueError):
    pass


@dataclass(frozen=True, order=True)
class OrientedSmoothing:
    k: int
    pairs: tuple[tuple[int, int], ...]
    in_parity: int = 0
    pos_loops: int = 0
    neg_loops: int = 0

    @classmethod
    def make(cls, k, pairs, in_parity=0, pos_loops=0, neg_loops=0) -> OrientedSmoothing:
        """Build from any iterable of ``(in, out)`` pairs, sorting them by in-point."""
        ps = tuple(sorted((int(a), int(b)) for a, b in pairs))
        return cls(int(k), ps, int(in_parity), int(pos_loops), int(neg_loops))

    @property
    def n_points(self) -> int:
        return 2 * self.k

    @property
    def loops(self) -> int:
        return self.pos_loops + self.neg_loops

    def without_loops(self) -> OrientedSmoothing:
        return replace(self, pos_loops=0, neg_loops=0)

    def partner(self) -> dict[int, int]:
        m = {}
        for a, b in self.pairs:
            m[a] = b
            m[b] = a
        return m

    def is_in_point(self, p: int) -> bool:
        return p % 2 == self.in_parity

    def to_json(self) -> dict:
        out = {"k": self.k, "in_parity": self.in_parity, "pairs": [list(p) for p in self.pairs]}
        if self.pos_loops or self.neg_loops:
            out["pos_loops"] = self.pos_loops
            out["neg_loops"] = self.neg_loops
        return out

    @classmethod
    def from_json(cls, obj: dict) -> OrientedSmoothing:
        s = cls.make(
            obj["k"],
            obj["pairs"],
            obj.get("in_parity", obj.get("parity", 0)),
            obj.get("pos_loops", 0),
            obj.get("neg_loops", 0),
        )
        problems = diagnose(s)
        if problems:
            raise SmoothingError("; ".join(problems))
        return s

    def __str__(self) -> str:
        body = " ".join(f"({a},{b})" for a, b in self.pairs)
        loops = ""
        if self.pos_loops or self.neg_loops:
            loops = f" +{self.pos_loops}o -{self.neg_loops}o"
        return f"[{body}]{loops}"


def _crosses(p: tuple[int, int], r: tuple[int, int]) -> bool:
    a, b = sorted(p)
    c, d = sorted(r)
    return (a < c < b) != (a < d < b)


def diagnose(s: OrientedSmoothing) -> list[str]:
    """List every violated invariant; empty when ``s`` is valid."""
    problems = []
    n = 2 * s.k
    if s.k < 0:
        return ["k must be non-negative"]
    if s.in_parity not in (0, 1):
        problems.append("in_parity must be 0 or 1")
    if s.pos_loops < 0 or s.neg_loops < 0:
        problems.append("loop counts must be non-negative")
    if len(s.pairs) != s.k:
        problems.append(f"expected {s.k} strands, got {len(s.pairs)}")
    used = [p for pair in s.pairs for p in pair]
    if sorted(used) != list(range(n)):
        problems.append("pairs are not a perfect matching of 0..2k-1")
    for a, b in s.pairs:
        if a % 2 != s.in_parity:
            problems.append(f"{a} is not an in-point")
        if b % 2 == s.in_parity:
            problems.append(f"{b} is not an out-point")
    for i, p in enumerate(s.pairs):
        for r in s.pairs[i + 1:]:
            if _crosses(p, r):
                problems.append(f"strands {p} and {r} cross")
    return problems


def validate(s: OrientedSmoothing) -> bool:
    return not diagnose(s)


def _require_valid(s: OrientedSmoothing) -> None:
    problems = diagnose(s)
    if problems:
        raise SmoothingError("invalid smoothing: " + "; ".join(problems))


def strand_rotation(s: OrientedSmoothing, strand: tuple[int, int]) -> Fraction:
    strand = tuple(strand)
    if strand not in s.pairs:
        raise SmoothingError(f"unknown strand {strand}")
    a, b = strand
    n = 2 * s.k
    return Fraction((b - a) % n - s.k, n)


def rotation_number(s: OrientedSmoothing) -> Fraction:
    _require_valid(s)
    total = sum((strand_rotation(s, p) for p in s.pairs), Fraction(0))
    return total + s.pos_loops - s.neg_loops


def is_minimal(s: OrientedSmoothing) -> bool:
    _require_valid(s)
    if s.k == 0 or s.pos_loops:
        return False
    low = Fraction(1 - s.k, 2 * s.k)
    return all(strand_rotation(s, p) == low for p in s.pairs)


def is_maximal(s: OrientedSmoothing) -> bool:
    _require_valid(s)
    if s.k == 0 or s.neg_loops:
        return False
    high = Fraction(s.k - 1, 2 * s.k)
    return all(strand_rotation(s, p) == high for p in s.pairs)


def minimal_smoothing(k: int, in_parity: int = 0) -> OrientedSmoothing:
    n = 2 * k
    return OrientedSmoothing.make(k, [(a, (a + 1) % n) for a in range(in_parity, n, 2)], in_parity)


def maximal_smoothing(k: int, in_parity: int = 0) -> OrientedSmoothing:
    n = 2 * k
    return OrientedSmoothing.make(k, [(a, (a - 1) % n) for a in range(in_parity, n, 2)], in_parity)


# -- regions -------------------------------------------------------------------

def smoothing_map(s: OrientedSmoothing) -> tuple[PlaneMap, dict[tuple[int, int], int]]:
    """Plane map of the disc boundary plus the strands; returns strand -> edge id."""
    m = PlaneMap()
    n = 2 * s.k
    seg = [m.add_edge(("o", p), ("o", (p + 1) % n), "seg") for p in range(n)]
    arc_of_point = {}
    strand_edge = {}
    for a, b in s.pairs:
        e = m.add_edge(("o", a), ("o", b), "arc")
        strand_edge[(a, b)] = e
        arc_of_point[a] = 2 * e
        arc_of_point[b] = 2 * e + 1
    for p in range(n):
        # counterclockwise at a boundary point: along the circle, inward, back
        m.set_rotation(("o", p), [2 * seg[p], arc_of_point[p], 2 * seg[(p - 1) % n] + 1])
    return m, strand_edge


def shared_region_sign(s: OrientedSmoothing, strand1, strand2) -> int | None:
    """Sign (+1/-1) of the region bounded by both strands, or ``None`` if there is none.

    A region is positive when the strand arrows run counterclockwise around it,
    i.e. the region lies to the left of each strand.
    """
    m, edge = smoothing_map(s)
    e1, e2 = edge[tuple(strand1)], edge[tuple(strand2)]
    for f in {m.face_of(2 * e1), m.face_of(2 * e1 + 1)}:
        if f in (m.face_of(2 * e2), m.face_of(2 * e2 + 1)):
            return 1 if f == m.face_of(2 * e1) else -1
    return None


def exchange_ends(s: OrientedSmoothing, strand1, strand2) -> OrientedSmoothing:
    """Replace strands ``(i1, j1), (i2, j2)`` by ``(i1, j2), (i2, j1)``."""
    _require_valid(s)
    strand1, strand2 = tuple(strand1), tuple(strand2)
    for st in (strand1, strand2):
        if st not in s.pairs:
            raise SmoothingError(f"unknown strand {st}")
    if strand1 == strand2:
        raise SmoothingError("need two distinct strands")
    (i1, j1), (i2, j2) = strand1, strand2
    rest = [p for p in s.pairs if p not in (strand1, strand2)]
    t = OrientedSmoothing.make(s.k, rest + [(i1, j2), (i2, j1)], s.in_parity, s.pos_loops, s.neg_loops)
    if not validate(t):
        raise SmoothingError(f"exchanging {strand1} and {strand2} produces crossing strands")
    return t


# -- enumeration ---------------------------------------------------------------

def noncrossing_matchings(points: tuple[int, ...]) -> Iterator[list[tuple[int, int]]]:
    """All non-crossing perfect matchings of points placed in this cyclic order."""
    if not points:
        yield []
        return
    first = points[0]
    for j in range(1, len(points), 2):
        inner, outer = points[1:j], points[j + 1:]
        for m_in in noncrossing_matchings(inner):
            for m_out in noncrossing_matchings(outer):
                yield [(first, points[j])] + m_in + m_out


def enumerate_smoothings(k: int, in_parity: int = 0) -> list[OrientedSmoothing]:
    if k < 1:
        raise SmoothingError("k must be at least 1")
    out = []
    for matching in noncrossing_matchings(tuple(range(2 * k))):
        pairs = [(a, b) if a % 2 == in_parity else (b, a) for a, b in matching]
        out.append(OrientedSmoothing.make(k, pairs, in_parity))
    out.sort(key=lambda s: s.pairs)
    return out

"""Tangle diagrams in PD-style notation, gravity orientation and the Jones state sum.

Text format::

    tangle k=2
    X 0 1 2 3 -
    B 0 1 2 3

Each ``X`` line lists the four edge labels met by a crossing, counterclockwise,
starting from the edge on which the under-strand arrives; the under-strand
therefore runs from the first to the third label.  A trailing ``+`` or ``-``
fixes the crossing sign; without it the sign is derived from the strand
orientation of neighbouring crossings (a strand that only ever passes over
defaults to the second label running into the fourth, i.e. a negative
crossing).  The ``B`` line lists the edges at the ``2k`` boundary slots,
counterclockwise.
"""

from __future__ import annotations

import json
import os
import random
import re
from collections import defaultdict
from dataclasses import dataclass
from typing import Sequence

from .laurent import LOOP, LaurentPoly, div_exact
from .planar import PlanarArcDiagram, validate as validate_diagram
from .planemap import PlaneMap, PlanarityError
from .skein import SkeinElement, normalize
from .smoothing import OrientedSmoothing

__all__ = [
    "TangleDiagram",
    "GravityOrientation",
    "TangleError",
    "TangleParseError",
    "CrossingCapError",
    "parse_tangle",
    "format_tangle",
    "diagnose",
    "validate",
    "is_alternating_diagram",
    "is_non_split",
    "gravity_orient",
    "jones",
    "compose_tangles",
    "close",
    "evaluate_link",
    "one_crossing",
    "crossingless_arc",
    "reorient_randomly",
    "max_crossings",
]

DEFAULT_MAX_CROSSINGS = 16


class TangleError(ValueError):
    pass


class CrossingCapError(TangleError):
    pass


class TangleParseError(TangleError):
    def __init__(self, msg: str, line: int, col: int):
        super().__init__(f"line {line}, column {col}: {msg}")
        self.line = line
        self.col = col


# an edge end is ("X", crossing, position) or ("B", slot)
End = tuple


@dataclass(frozen=True)
class TangleDiagram:
    k: int
    crossings: tuple[tuple[int, int, int, int], ...]
    boundary: tuple[int, ...]
    signs: tuple[int, ...]

    @classmethod
    def make(cls, k, crossings, boundary, signs=None, rng: random.Random | None = None) -> TangleDiagram:
        """Build a diagram, deriving any sign given as ``None``."""
        xs = tuple(tuple(int(e) for e in x) for x in crossings)
        bd = tuple(int(e) for e in boundary)
        raw = tuple(signs) if signs is not None else (None,) * len(xs)
        if len(raw) != len(xs):
            raise TangleError("one sign per crossing expected")
        T = cls(int(k), xs, bd, raw)
        problems = diagnose(T, check_signs=False)
        if problems:
            raise TangleError("; ".join(problems))
        resolved, _ = _orient_strands(T, rng)
        return cls(T.k, xs, bd, resolved)

    @property
    def n_crossings(self) -> int:
        return len(self.crossings)

    def labels(self) -> list[int]:
        return sorted({e for x in self.crossings for e in x} | set(self.boundary))

    def ends(self) -> dict[int, list[End]]:
        out: dict[int, list[End]] = defaultdict(list)
        for i, x in enumerate(self.crossings):
            for p, e in enumerate(x):
                out[e].append(("X", i, p))
        for s, e in enumerate(self.boundary):
            out[e].append(("B", s))
        return dict(out)

    def to_json(self) -> dict:
        return {
            "k": self.k,
            "crossings": [list(x) for x in self.crossings],
            "signs": list(self.signs),
            "boundary": list(self.boundary),
        }

    @classmethod
    def from_json(cls, obj: dict) -> TangleDiagram:
        return cls.make(obj["k"], obj["crossings"], obj["boundary"], obj.get("signs"))

    def __str__(self) -> str:
        return format_tangle(self)


@dataclass(frozen=True)
class GravityOrientation:
    """Edge arrows pointing into under-crossings and out of over-crossings."""

    tails: dict        # label -> End at which the arrow starts (None for a free loop)
    boundary: tuple[str, ...]   # "in" / "out" per slot
    in_parity: int

    def is_in(self, slot: int) -> bool:
        return self.boundary[slot] == "in"


# -- text format -----------------------------------------------------------------

_HEADER = re.compile(r"tangle\s+k\s*=\s*(\S+)\s*$")


def _int_token(tok: str, line: int, col: int) -> int:
    try:
        return int(tok)
    except ValueError:
        raise TangleParseError(f"expected an integer edge label, got {tok!r}", line, col) from None


def _tokens(text: str):
    for m in re.finditer(r"\S+", text):
        yield m.group(), m.start() + 1


def parse_tangle(text: str) -> TangleDiagram:
    k = None
    crossings, signs, boundary = [], [], None
    for ln, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].rstrip()
        if not line.strip():
            continue
        toks = list(_tokens(line))
        head, col = toks[0]
        if k is None:
            m = _HEADER.match(line.strip())
            if not m:
                raise TangleParseError("expected header 'tangle k=<k>'", ln, col)
            k = _int_token(m.group(1), ln, line.index(m.group(1)) + 1)
            if k < 0:
                raise TangleParseError("k must be non-negative", ln, col)
            continue
        if head == "X":
            body = toks[1:]
            sign = None
            if body and body[-1][0] in "+-":
                sign = 1 if body[-1][0] == "+" else -1
                body = body[:-1]
            if len(body) != 4:
                raise TangleParseError(f"crossing needs 4 edge labels, got {len(body)}", ln, col)
            crossings.append(tuple(_int_token(t, ln, c) for t, c in body))
            signs.append(sign)
        elif head == "B":
            if boundary is not None:
                raise TangleParseError("duplicate boundary line", ln, col)
            boundary = tuple(_int_token(t, ln, c) for t, c in toks[1:])
            if len(boundary) != 2 * k:
                raise TangleParseError(f"boundary needs {2 * k} labels, got {len(boundary)}", ln, col)
        else:
            raise TangleParseError(f"unknown line type {head!r}", ln, col)
    if k is None:
        raise TangleParseError("empty input", 1, 1)
    if boundary is None:
        if k:
            raise TangleParseError("missing boundary line", ln if text else 1, 1)
        boundary = ()
    return TangleDiagram.make(k, crossings, boundary, signs)


def format_tangle(T: TangleDiagram) -> str:
    explicit = _needed_sign_tokens(T)
    lines = [f"tangle k={T.k}"]
    for i, x in enumerate(T.crossings):
        tail = ""
        if i in explicit:
            tail = " +" if T.signs[i] > 0 else " -"
        lines.append("X " + " ".join(map(str, x)) + tail)
    lines.append("B" + "".join(f" {e}" for e in T.boundary))
    return "\n".join(lines) + "\n"


def load_tangle(text: str) -> TangleDiagram:
    """Parse either the text format or its JSON equivalent."""
    if text.lstrip().startswith("{"):
        return TangleDiagram.from_json(json.loads(text))
    return parse_tangle(text)


# -- validation ------------------------------------------------------------------

def tangle_map(T: TangleDiagram) -> PlaneMap:
    """Crossings and boundary slots as vertices, the disc boundary as a cycle."""
    m = PlaneMap()
    ends = T.ends()
    dart_at: dict[End, int] = {}
    for e in sorted(ends):
        lst = ends[e]
        if len(lst) != 2:
            continue
        u, v = lst
        idx = m.add_edge(_vertex(u), _vertex(v), e)
        dart_at[u] = 2 * idx
        dart_at[v] = 2 * idx + 1
    n = len(T.boundary)
    seg = [m.add_edge(("B", s), ("B", (s + 1) % n), "seg") for s in range(n)]
    for s in range(n):
        m.set_rotation(("B", s), [2 * seg[s], dart_at[("B", s)], 2 * seg[(s - 1) % n] + 1])
    for i in range(len(T.crossings)):
        m.set_rotation(("X", i), [dart_at[("X", i, p)] for p in range(4)])
    return m


def _vertex(end: End):
    return ("X", end[1]) if end[0] == "X" else ("B", end[1])


def diagnose(T: TangleDiagram, check_signs: bool = True) -> list[str]:
    problems = []
    if T.k < 0:
        return ["k must be non-negative"]
    if len(T.boundary) != 2 * T.k:
        problems.append(f"boundary has {len(T.boundary)} slots, expected {2 * T.k}")
    if len(T.signs) != len(T.crossings):
        problems.append("one sign per crossing expected")
    elif check_signs and any(s not in (1, -1) for s in T.signs):
        problems.append("signs must be +1 or -1")
    for i, x in enumerate(T.crossings):
        if len(x) != 4:
            problems.append(f"crossing {i} does not have 4 edge ends")
    if problems:
        return problems
    for e, lst in sorted(T.ends().items()):
        if len(lst) != 2:
            problems.append(f"edge {e} has {len(lst)} ends, expected 2")
    if problems:
        return problems
    try:
        tangle_map(T).require_planar()
    except PlanarityError as exc:
        problems.append(f"not planar: {exc}")
    return problems


def validate(T: TangleDiagram) -> None:
    problems = diagnose(T)
    if problems:
        raise TangleError("invalid tangle: " + "; ".join(problems))


def is_alternating_diagram(T: TangleDiagram) -> bool:
    """Every edge between two crossings has one over end and one under end."""
    validate(T)
    for lst in T.ends().values():
        if lst[0][0] == "X" and lst[1][0] == "X" and lst[0][2] % 2 == lst[1][2] % 2:
            return False
    return True


def is_non_split(T: TangleDiagram) -> bool:
    """The crossings and edges form a single connected piece."""
    validate(T)
    ends = T.ends()
    if not T.crossings:
        return len(ends) <= 1
    parent = list(range(len(T.crossings)))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for lst in ends.values():
        xs = [end[1] for end in lst if end[0] == "X"]
        if not xs:
            return False
        for c in xs[1:]:
            parent[find(c)] = find(xs[0])
    return len({find(i) for i in range(len(T.crossings))}) == 1


def _require_alternating_non_split(T: TangleDiagram) -> None:
    if not is_alternating_diagram(T):
        raise TangleError("diagram is not alternating")
    if not is_non_split(T):
        raise TangleError("diagram is split")


def gravity_orient(T: TangleDiagram, parity_hint: int = 0) -> GravityOrientation:
    """Gravity arrows; ``parity_hint`` is used only when no crossing fixes the classification."""
    _require_alternating_non_split(T)
    ends = T.ends()
    tails: dict = {}
    kind: list[str | None] = [None] * len(T.boundary)
    loose = []
    for e, (u, v) in ends.items():
        if u[0] == "X" and v[0] == "X":
            tails[e] = u if u[2] % 2 else v
        elif u[0] == "B" and v[0] == "B":
            loose.append((e, u, v))
        else:
            b, x = (u, v) if u[0] == "B" else (v, u)
            under = x[2] % 2 == 0
            kind[b[1]] = "in" if under else "out"
            tails[e] = b if under else x
    parities = {s % 2 if c == "in" else 1 - s % 2 for s, c in enumerate(kind) if c}
    if len(parities) > 1:
        raise TangleError("boundary classification does not alternate")
    p = parities.pop() if parities else parity_hint
    for e, u, v in loose:
        tails[e] = u if u[1] % 2 == p else v
    boundary = tuple("in" if s % 2 == p else "out" for s in range(len(T.boundary)))
    return GravityOrientation(tails, boundary, p)


# -- strand orientation and crossing signs ---------------------------------------

def _role(pos: int, sign: int | None) -> str | None:
    """Whether the edge at this crossing position arrives ("head") or leaves ("tail")."""
    if pos == 0:
        return "head"
    if pos == 2:
        return "tail"
    if sign is None:
        return None
    # sign -1: over-strand runs from position 1 to position 3
    arriving = 1 if sign < 0 else 3
    return "head" if pos == arriving else "tail"


def _sign_for(pos: int, role: str) -> int:
    arriving = pos if role == "head" else (pos + 2) % 4
    return -1 if arriving == 1 else 1


def _orient_strands(T: TangleDiagram, rng: random.Random | None = None,
                    ) -> tuple[tuple[int, ...], list[int]]:
    """Propagate strand directions through the diagram.

    Returns the completed signs and the indices whose sign had to be chosen
    (``-1``, or at random when ``rng`` is given).  Raises on contradictions.
    """
    signs = list(T.signs)
    chosen = []
    links = [lst for lst in T.ends().values() if lst[0][0] == "X" and lst[1][0] == "X"]
    flip = {"head": "tail", "tail": "head"}
    while True:
        changed = True
        while changed:
            changed = False
            for u, v in links:
                ru = _role(u[2], signs[u[1]])
                rv = _role(v[2], signs[v[1]])
                if ru and rv:
                    if ru == rv:
                        raise TangleError(
                            f"strand orientation conflict on the edge joining crossings {u[1]} and {v[1]}")
                elif ru or rv:
                    known, (other, want) = (ru, (v, flip[ru])) if ru else (rv, (u, flip[rv]))
                    signs[other[1]] = _sign_for(other[2], want)
                    changed = True
        todo = [i for i, s in enumerate(signs) if s is None]
        if not todo:
            return tuple(signs), chosen
        i = todo[0]
        signs[i] = rng.choice((1, -1)) if rng is not None else -1
        chosen.append(i)


def _needed_sign_tokens(T: TangleDiagram) -> set[int]:
    explicit: set[int] = set()
    while True:
        trial = TangleDiagram(T.k, T.crossings, T.boundary,
                              tuple(s if i in explicit else None for i, s in enumerate(T.signs)))
        derived, _ = _orient_strands(trial)
        wrong = [i for i, (a, b) in enumerate(zip(derived, T.signs)) if a != b]
        if not wrong:
            return explicit
        explicit.add(wrong[0])


def check_orientation(T: TangleDiagram) -> None:
    """Raise if the crossing signs do not come from one orientation of each strand."""
    _orient_strands(T)


# -- state sum -------------------------------------------------------------------

def max_crossings(override: int | None = None) -> int:
    if override is not None:
        return override
    env = os.environ.get("SKEIN_MAX_CROSSINGS")
    return int(env) if env else DEFAULT_MAX_CROSSINGS


def _state_sum(T: TangleDiagram, in_parity: int, cap: int | None) -> SkeinElement:
    n = len(T.crossings)
    limit = max_crossings(cap)
    if n > limit:
        raise CrossingCapError(f"{n} crossings exceed the state-sum cap of {limit}")
    labels = T.labels()
    index = {e: i for i, e in enumerate(labels)}
    xs = [tuple(index[e] for e in x) for x in T.crossings]
    slot_edge = [index[e] for e in T.boundary]
    acc: dict[tuple, dict[int, int]] = defaultdict(lambda: defaultdict(int))
    for state in range(1 << n):
        parent = list(range(len(labels)))

        def find(a):
            while parent[a] != a:
                parent[a] = parent[parent[a]]
                a = parent[a]
            return a

        sign, exp = 1, 0
        for i, (a, b, c, d) in enumerate(xs):
            one = state >> i & 1
            if one:
                pairs = ((a, d), (b, c))
            else:
                pairs = ((a, b), (c, d))
            for x, y in pairs:
                parent[find(x)] = find(y)
            # positive: q A - q^2 B; negative: -q^-2 A + q^-1 B
            if T.signs[i] > 0:
                exp += 2 if one else 1
                sign = -sign if one else sign
            else:
                exp += -1 if one else -2
                sign = sign if one else -sign
        at_root: dict[int, list[int]] = defaultdict(list)
        for s, e in enumerate(slot_edge):
            at_root[find(e)].append(s)
        roots = {find(e) for e in range(len(labels))}
        loops = sum(1 for r in roots if r not in at_root)
        strands = []
        for r, slots in at_root.items():
            x, y = slots
            if x % 2 == y % 2:
                raise TangleError("state pairs two boundary slots of the same kind")
            strands.append((x, y) if x % 2 == in_parity else (y, x))
        key = (tuple(sorted(strands)), loops)
        acc[key][exp] += sign
    raw = []
    for (pairs, loops), coeffs in acc.items():
        s = OrientedSmoothing.make(T.k, pairs, in_parity, neg_loops=loops)
        raw.append((s, LaurentPoly.from_dict(coeffs)))
    return normalize(raw, T.k, in_parity)


def jones(T: TangleDiagram, cap: int | None = None, parity_hint: int = 0) -> SkeinElement:
    """Skein-module value of an alternating, non-split tangle with ``k >= 1``.

    A crossingless arc carries no gravity information; ``parity_hint`` then
    chooses which of its ends is the in-point.
    """
    if T.k < 1:
        raise TangleError("jones() needs k >= 1; use evaluate_link for closed diagrams")
    g = gravity_orient(T, parity_hint)
    return _state_sum(T, g.in_parity, cap)


# -- composition and closure -----------------------------------------------------

def compose_tangles(D: PlanarArcDiagram, tangles: Sequence[TangleDiagram],
                    check: bool = True) -> TangleDiagram:
    validate_diagram(D)
    if len(tangles) != D.d:
        raise TangleError(f"diagram has {D.d} inputs, got {len(tangles)} tangles")
    if D.pos_loops or D.neg_loops:
        raise TangleError("free loops would make the tangle split")
    for i, T in enumerate(tangles, 1):
        n, p = D.inputs[i - 1]
        if 2 * T.k != n:
            raise TangleError(f"tangle {i} has {2 * T.k} boundary points, disc {i} has {n}")
        if check and T.crossings and gravity_orient(T).in_parity != p:
            raise TangleError(f"tangle {i}: in/out classification does not match disc {i}")
    parent: dict = {}

    def find(a):
        parent.setdefault(a, a)
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    def node(end):
        disc, slot = end
        return ("O", slot) if disc == 0 else ("T", disc - 1, tangles[disc - 1].boundary[slot])

    for i, T in enumerate(tangles):
        for e in T.labels():
            find(("T", i, e))
    for u, v in D.arcs:
        parent[find(node(u))] = find(node(v))
    new_label: dict = {}

    def label(x):
        r = find(x)
        if r not in new_label:
            new_label[r] = len(new_label)
        return new_label[r]

    boundary = [label(("O", s)) for s in range(D.out_slots)]
    for i, T in enumerate(tangles):
        for e in T.labels():
            label(("T", i, e))
    crossings, signs = [], []
    for i, T in enumerate(tangles):
        for x, s in zip(T.crossings, T.signs):
            crossings.append(tuple(label(("T", i, e)) for e in x))
            signs.append(s)
    ends = defaultdict(int)
    for i, T in enumerate(tangles):
        for e, lst in T.ends().items():
            ends[label(("T", i, e))] += sum(1 for end in lst if end[0] == "X")
    for s in range(D.out_slots):
        ends[boundary[s]] += 1
    if any(v == 0 for v in ends.values()):
        raise TangleError("composition creates a free loop")
    out = TangleDiagram(D.k, tuple(crossings), tuple(boundary), tuple(signs))
    validate(out)
    if not check:
        return out
    try:
        check_orientation(out)
    except TangleError as exc:
        raise TangleError(f"strand orientations do not match across the gluing: {exc}") from None
    return out


def close(T: TangleDiagram) -> TangleDiagram:
    """Join the two ends of a 1-tangle, giving a link diagram (``k = 0``)."""
    if T.k != 1:
        raise TangleError("only 1-tangles have a canonical closure")
    a, b = T.boundary
    xs = tuple(tuple(a if e == b else e for e in x) for x in T.crossings)
    return TangleDiagram(0, xs, (), T.signs)


def evaluate_link(T: TangleDiagram, cap: int | None = None) -> tuple[LaurentPoly, LaurentPoly]:
    """Unnormalized and normalized Jones polynomial of the closure of ``T``.

    Accepts a 1-tangle (closed by joining its ends) or a link diagram with
    ``k = 0``.  The division by ``q + q^-1`` must be exact.
    """
    if T.k == 1 and not T.crossings:
        hat = LOOP
    else:
        L = close(T) if T.k == 1 else T
        if L.k != 0:
            raise TangleError("need a 1-tangle or a closed diagram")
        _require_alternating_non_split(L)
        hat = _state_sum(L, 0, cap).coeff(OrientedSmoothing(0, ()))
    return hat, div_exact(hat, LOOP)


# -- constructors ----------------------------------------------------------------

def one_crossing(sign: int = -1, in_parity: int = 0) -> TangleDiagram:
    r = in_parity % 2
    x = tuple((r + j) % 4 for j in range(4))
    return TangleDiagram(2, (x,), (0, 1, 2, 3), (sign,))


def crossingless_arc() -> TangleDiagram:
    return TangleDiagram(1, (), (0, 0), ())


def reorient_randomly(T: TangleDiagram, rng: random.Random) -> tuple[TangleDiagram, list[bool]]:
    """Give every strand a random direction and rewrite the crossings to match.

    Returns the new diagram and, per crossing, whether its label list was
    rotated by two places (so the under-strand enters at the other end).
    """
    ends = T.ends()

    def other(end):
        u, v = ends[_label_at(T, end)]
        return v if u == end else u

    incoming: dict[tuple[int, int], bool] = {}
    seen_edges = set()

    def walk(edge, start_end):
        forward = rng.random() < 0.5
        path = []
        e, frm = edge, start_end
        while e not in seen_edges:
            seen_edges.add(e)
            to = other(frm)
            if to[0] != "X":
                break
            i, p = to[1], to[2]
            path.append(((i, p), True))
            nxt = (i, (p + 2) % 4)
            path.append((nxt, False))
            frm = ("X",) + nxt
            e = T.crossings[i][nxt[1]]
        for key, arriving in path:
            incoming[key] = arriving if forward else not arriving

    for e, lst in sorted(ends.items()):
        b = [end for end in lst if end[0] == "B"]
        if b and e not in seen_edges:
            walk(e, b[0])
    for e, lst in sorted(ends.items()):
        if e not in seen_edges:
            walk(e, lst[0])
    crossings, signs, rotated = [], [], []
    for i, x in enumerate(T.crossings):
        rot = not incoming[(i, 0)]
        if rot:
            x = x[2:] + x[:2]
        b_in = incoming[(i, 3 if rot else 1)]
        crossings.append(x)
        signs.append(-1 if b_in else 1)
        rotated.append(rot)
    return TangleDiagram(T.k, tuple(crossings), T.boundary, tuple(signs)), rotated


def _label_at(T: TangleDiagram, end: End) -> int:
    return T.crossings[end[1]][end[2]] if end[0] == "X" else T.boundary[end[1]]

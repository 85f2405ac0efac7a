"""Oriented planar arc diagrams stored as combinatorial maps.

Disc ``0`` is the output disc, discs ``1 .. d`` are the inputs.  Slots on every
disc are numbered counterclockwise (around that disc's own centre) starting at
its marked point, so a smoothing dropped into an input disc keeps its own
numbering.  An endpoint is a pair ``(disc, slot)``.

Arcs are oriented.  A slot on the output disc is an *in-point* when an arc
starts there (flowing inward); a slot on an input disc is an in-point when an
arc ends there (flowing into the disc, where the inserted strand begins).
With ``parity`` bit ``p`` a disc's in-points are the slots ``s`` with
``s % 2 == p``.  Arcs are stored as ``(start, end)``.

Regions are faces of the map built from the arcs and the disc boundaries.  A
region is positive when the arcs run counterclockwise around it (it lies to
their left) and negative otherwise.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Mapping, Sequence

from .planemap import PlaneMap, PlanarityError
from .smoothing import OrientedSmoothing

Endpoint = tuple[int, int]

__all__ = [
    "PlanarArcDiagram",
    "DiagramError",
    "Face",
    "FaceDecomposition",
    "Recipe",
    "diagnose",
    "validate",
    "is_type_A",
    "compose",
    "glue",
    "faces",
    "counts",
    "rotation_associated_number",
    "apply",
    "identity_diagram",
    "make_basic_unary",
    "make_basic_binary",
    "basic_kind",
    "rotate_output",
    "permute_inputs",
    "smoothing_as_diagram",
    "decompose_to_basic",
]


class DiagramError(ValueError):
    pass


@dataclass(frozen=True)
class PlanarArcDiagram:
    out_slots: int
    out_parity: int
    inputs: tuple[tuple[int, int], ...]
    arcs: tuple[tuple[Endpoint, Endpoint], ...]
    pos_loops: int = 0
    neg_loops: int = 0

    @classmethod
    def make(cls, out_slots, out_parity, inputs, arcs, pos_loops=0, neg_loops=0) -> PlanarArcDiagram:
        """Normalise arcs to ``(start, end)`` order where orientation allows, then sort."""
        inputs = tuple((int(n), int(p)) for n, p in inputs)
        probe = cls(int(out_slots), int(out_parity), inputs, (), pos_loops, neg_loops)
        norm = []
        for u, v in arcs:
            u, v = (int(u[0]), int(u[1])), (int(v[0]), int(v[1]))
            if probe._in_range(u) and probe._in_range(v) and probe.is_start(v) and not probe.is_start(u):
                u, v = v, u
            norm.append((u, v))
        return replace(probe, arcs=tuple(sorted(norm)))

    @property
    def d(self) -> int:
        return len(self.inputs)

    @property
    def k(self) -> int:
        return self.out_slots // 2

    def slots(self, disc: int) -> int:
        return self.out_slots if disc == 0 else self.inputs[disc - 1][0]

    def parity(self, disc: int) -> int:
        return self.out_parity if disc == 0 else self.inputs[disc - 1][1]

    def _in_range(self, ep: Endpoint) -> bool:
        disc, slot = ep
        return 0 <= disc <= self.d and 0 <= slot < self.slots(disc)

    def is_start(self, ep: Endpoint) -> bool:
        disc, slot = ep
        is_in = slot % 2 == self.parity(disc)
        return is_in if disc == 0 else not is_in

    def arc_at(self) -> dict[Endpoint, tuple[Endpoint, Endpoint]]:
        at = {}
        for arc in self.arcs:
            at[arc[0]] = arc
            at[arc[1]] = arc
        return at

    # -- JSON ------------------------------------------------------------------
    def to_json(self) -> dict:
        def name(ep):
            return ["out" if ep[0] == 0 else f"in{ep[0]}", ep[1]]

        out = {
            "d": self.d,
            "out": {"slots": self.out_slots, "parity": self.out_parity},
            "in": [{"slots": n, "parity": p} for n, p in self.inputs],
            "arcs": [[name(u), name(v)] for u, v in self.arcs],
            "loops": self.pos_loops + self.neg_loops,
        }
        if self.pos_loops or self.neg_loops:
            out["loop_signs"] = {"pos": self.pos_loops, "neg": self.neg_loops}
        return out

    @classmethod
    def from_json(cls, obj: Mapping) -> PlanarArcDiagram:
        def ep(x):
            tag, slot = x
            if tag == "out":
                return (0, int(slot))
            if isinstance(tag, str) and tag.startswith("in") and tag[2:].isdigit():
                return (int(tag[2:]), int(slot))
            raise DiagramError(f"bad endpoint {x!r}")

        inputs = [(e["slots"], e.get("parity", 0)) for e in obj.get("in", [])]
        if "d" in obj and obj["d"] != len(inputs):
            raise DiagramError(f"d={obj['d']} but {len(inputs)} input discs given")
        signs = obj.get("loop_signs")
        loops = int(obj.get("loops", 0))
        if signs is not None:
            pos, neg = int(signs.get("pos", 0)), int(signs.get("neg", 0))
            if pos + neg != loops:
                raise DiagramError("loop_signs do not add up to loops")
        else:
            pos, neg = 0, loops
        D = cls.make(obj["out"]["slots"], obj["out"].get("parity", 0), inputs,
                     [(ep(u), ep(v)) for u, v in obj["arcs"]], pos, neg)
        problems = diagnose(D)
        if problems:
            raise DiagramError("; ".join(problems))
        return D


# -- maps ----------------------------------------------------------------------

@dataclass
class _Picture:
    """A diagram, possibly with other diagrams inserted in some input discs, as one plane map."""

    map: PlaneMap
    arc_edges: list[int]  # edges that are arcs, oriented start -> end
    glued: set  # vertices where an outer arc meets an inserted arc
    exterior_face: int | None
    out_seg_edges: list[int] = field(default_factory=list)
    disc_seg_edges: dict = field(default_factory=dict)


def _build_picture(D: PlanarArcDiagram, fillers: Mapping[int, PlanarArcDiagram] | None = None) -> _Picture:
    fillers = fillers or {}
    m = PlaneMap()

    def vid(disc, slot):
        return ("D", disc, slot)

    arc_dart: dict = {}  # vertex -> dart of the outer arc leaving it
    inner_dart: dict = {}  # glued vertex -> dart of the inserted arc leaving it
    next_dart: dict = {}
    prev_dart: dict = {}
    arc_edges = []
    disc_seg_edges = {}

    def add_disc(prefix, n):
        segs = []
        for s in range(n):
            e = m.add_edge(prefix(s), prefix((s + 1) % n), "seg")
            segs.append(e)
            next_dart[prefix(s)] = 2 * e
            prev_dart[prefix((s + 1) % n)] = 2 * e + 1
        return segs

    for disc in range(D.d + 1):
        disc_seg_edges[("D", disc)] = add_disc(lambda s, disc=disc: vid(disc, s), D.slots(disc))
    for u, v in D.arcs:
        e = m.add_edge(vid(*u), vid(*v), ("arc", "D"))
        arc_edges.append(e)
        arc_dart[vid(*u)] = 2 * e
        arc_dart[vid(*v)] = 2 * e + 1

    filler_verts = []
    for i, E in fillers.items():
        def fvid(ep, i=i):
            disc, slot = ep
            return vid(i, slot) if disc == 0 else ("F", i, disc, slot)

        for disc in range(1, E.d + 1):
            disc_seg_edges[("F", i, disc)] = add_disc(lambda s, disc=disc, i=i: ("F", i, disc, s), E.slots(disc))
            filler_verts.extend(("F", i, disc, s) for s in range(E.slots(disc)))
        for u, v in E.arcs:
            e = m.add_edge(fvid(u), fvid(v), ("arc", i))
            arc_edges.append(e)
            for ep, dart in ((u, 2 * e), (v, 2 * e + 1)):
                if ep[0] == 0:
                    inner_dart[fvid(ep)] = dart
                else:
                    arc_dart[fvid(ep)] = dart

    for s in range(D.out_slots):
        v = vid(0, s)
        m.set_rotation(v, [next_dart[v], arc_dart[v], prev_dart[v]])
    for disc in range(1, D.d + 1):
        for s in range(D.slots(disc)):
            v = vid(disc, s)
            if disc in fillers:
                m.set_rotation(v, [arc_dart[v], next_dart[v], inner_dart[v], prev_dart[v]])
            else:
                m.set_rotation(v, [arc_dart[v], next_dart[v], prev_dart[v]])
    for v in filler_verts:
        m.set_rotation(v, [arc_dart[v], next_dart[v], prev_dart[v]])

    out_segs = disc_seg_edges[("D", 0)]
    ext = m.face_of(2 * out_segs[0] + 1) if out_segs else None
    glued = {vid(i, s) for i in fillers for s in range(D.slots(i))}
    return _Picture(m, arc_edges, glued, ext, out_segs, disc_seg_edges)


def diagnose(D: PlanarArcDiagram) -> list[str]:
    problems = []
    if D.out_slots < 0 or D.out_slots % 2:
        problems.append("output disc needs an even number of slots")
    for i, (n, p) in enumerate(D.inputs, 1):
        if n < 0 or n % 2:
            problems.append(f"input disc {i} needs an even number of slots")
        if p not in (0, 1):
            problems.append(f"input disc {i} parity must be 0 or 1")
    if D.out_parity not in (0, 1):
        problems.append("output parity must be 0 or 1")
    if D.pos_loops < 0 or D.neg_loops < 0:
        problems.append("loop counts must be non-negative")
    if problems:
        return problems
    used: dict[Endpoint, int] = defaultdict(int)
    for u, v in D.arcs:
        for ep in (u, v):
            if not D._in_range(ep):
                problems.append(f"endpoint {ep} out of range")
            used[ep] += 1
    for disc in range(D.d + 1):
        for s in range(D.slots(disc)):
            if used.get((disc, s), 0) != 1:
                problems.append(f"slot {s} of disc {disc} used {used.get((disc, s), 0)} times")
    if problems:
        return problems
    for u, v in D.arcs:
        if not (D.is_start(u) and not D.is_start(v)):
            problems.append(f"arc {u}-{v} does not join an in-end to an out-end")
    if problems:
        return problems
    try:
        _build_picture(D).map.require_planar()
    except PlanarityError as exc:
        problems.append(str(exc))
    return problems


def validate(D: PlanarArcDiagram) -> bool:
    return not diagnose(D)


def _require_valid(D: PlanarArcDiagram) -> None:
    problems = diagnose(D)
    if problems:
        raise DiagramError("invalid diagram: " + "; ".join(problems))


def _disc_graph_connected(D: PlanarArcDiagram) -> bool:
    parent = list(range(D.d + 1))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for (a, _), (b, _) in D.arcs:
        if a and b:
            parent[find(a)] = find(b)
    return len({find(i) for i in range(1, D.d + 1)}) == 1


def is_type_A(D: PlanarArcDiagram) -> bool:
    """Connected, alternatingly oriented, with at least one output strand."""
    if not validate(D):
        return False
    if D.out_slots == 0 or D.d == 0:
        return False
    if D.pos_loops or D.neg_loops:
        return False
    if any(u[0] == 0 and v[0] == 0 for u, v in D.arcs):
        return False
    if any(D.slots(i) == 0 for i in range(1, D.d + 1)):
        return False
    return _disc_graph_connected(D)


# -- gluing ----------------------------------------------------------------------

def glue(D: PlanarArcDiagram, fillers: Mapping[int, PlanarArcDiagram]) -> PlanarArcDiagram:
    """Insert ``fillers[i]`` into input disc ``i`` of ``D`` for every key ``i``.

    Input discs of the result are numbered by walking ``D``'s discs in order and
    replacing each filled disc by the filler's own input discs.
    """
    for i, E in fillers.items():
        if not 1 <= i <= D.d:
            raise DiagramError(f"no input disc {i}")
        n, p = D.inputs[i - 1]
        if E.out_slots != n or E.out_parity != p:
            raise DiagramError(
                f"boundary mismatch at disc {i}: disc has {n} slots parity {p}, "
                f"inserted diagram has {E.out_slots} slots parity {E.out_parity}"
            )
    pic = _build_picture(D, fillers)
    m = pic.map

    new_index: dict = {}
    new_inputs = []
    for disc in range(1, D.d + 1):
        if disc in fillers:
            E = fillers[disc]
            for j in range(1, E.d + 1):
                new_inputs.append(E.inputs[j - 1])
                new_index[("F", disc, j)] = len(new_inputs)
        else:
            new_inputs.append(D.inputs[disc - 1])
            new_index[("D", disc)] = len(new_inputs)

    def relabel(v):
        if v[0] == "D":
            return (0, v[2]) if v[1] == 0 else (new_index[("D", v[1])], v[2])
        return (new_index[("F", v[1], v[2])], v[3])

    out_of: dict = {}  # vertex -> arc edge leaving it (along orientation)
    for e in pic.arc_edges:
        out_of[m.edges[e][0]] = e
    seen: set[int] = set()
    new_arcs = []
    for e in pic.arc_edges:
        u = m.edges[e][0]
        if u in pic.glued or e in seen:
            continue
        cur = e
        while True:
            seen.add(cur)
            v = m.edges[cur][1]
            if v not in pic.glued:
                break
            cur = out_of[v]
        new_arcs.append((relabel(u), relabel(v)))

    pos = D.pos_loops + sum(E.pos_loops for E in fillers.values())
    neg = D.neg_loops + sum(E.neg_loops for E in fillers.values())
    cycles = []
    for e in pic.arc_edges:
        if e in seen:
            continue
        cyc = []
        cur = e
        while cur not in seen:
            seen.add(cur)
            cyc.append(cur)
            cur = out_of[m.edges[cur][1]]
        cycles.append(cyc)
    if cycles:
        if pic.exterior_face is None:
            raise DiagramError("closed loops formed but the output disc has no boundary to orient them against")
        if not m.is_connected():
            raise DiagramError("closed loops formed in a disconnected picture; orientation undefined")
        for cyc in cycles:
            outside = m.faces_reachable(pic.exterior_face, cyc)
            if m.face_of(2 * cyc[0]) in outside:
                neg += 1  # outside on the left: clockwise
            else:
                pos += 1

    return PlanarArcDiagram.make(D.out_slots, D.out_parity, new_inputs, new_arcs, pos, neg)


def compose(D: PlanarArcDiagram, i: int, E: PlanarArcDiagram) -> PlanarArcDiagram:
    """``D o_i E``: insert ``E`` into input disc ``i`` of ``D``."""
    return glue(D, {i: E})


def smoothing_as_diagram(s: OrientedSmoothing) -> PlanarArcDiagram:
    return PlanarArcDiagram.make(
        2 * s.k, s.in_parity, (), [((0, a), (0, b)) for a, b in s.pairs], s.pos_loops, s.neg_loops
    )


def diagram_as_smoothing(D: PlanarArcDiagram) -> OrientedSmoothing:
    if D.d:
        raise DiagramError("only 0-input diagrams are smoothings")
    return OrientedSmoothing.make(D.k, [(u[1], v[1]) for u, v in D.arcs], D.out_parity, D.pos_loops, D.neg_loops)


def apply(D: PlanarArcDiagram, smoothings: Sequence[OrientedSmoothing]) -> OrientedSmoothing:
    """Insert one smoothing per input disc; closed curves become signed loops."""
    if len(smoothings) != D.d:
        raise DiagramError(f"diagram has {D.d} inputs, got {len(smoothings)} smoothings")
    fillers = {}
    for i, s in enumerate(smoothings, 1):
        n, p = D.inputs[i - 1]
        if 2 * s.k != n:
            raise DiagramError(f"disc {i} has {n} slots but smoothing has {2 * s.k} points")
        if s.in_parity != p:
            raise DiagramError(f"disc {i} parity {p} does not match smoothing parity {s.in_parity}")
        fillers[i] = smoothing_as_diagram(s)
    return diagram_as_smoothing(glue(D, fillers))


# -- regions -------------------------------------------------------------------

@dataclass(frozen=True)
class Face:
    darts: tuple[int, ...]
    kind: str  # "region", "disc" (interior of an input disc) or "exterior"
    sign: int  # +1 positive, -1 negative, 0 for non-regions
    touches_outer: bool
    disc: int | None = None


@dataclass(frozen=True)
class FaceDecomposition:
    faces: tuple[Face, ...]
    euler: int

    @property
    def regions(self) -> list[Face]:
        return [f for f in self.faces if f.kind == "region"]

    @property
    def internal_negative(self) -> int:
        return sum(1 for f in self.regions if f.sign < 0 and not f.touches_outer)


def faces(D: PlanarArcDiagram) -> FaceDecomposition:
    _require_valid(D)
    pic = _build_picture(D)
    m = pic.map
    if not m.is_connected():
        raise PlanarityError("diagram is not connected; its regions are not determined by the map")
    arcset = set(pic.arc_edges)
    out_fwd = {2 * e for e in pic.out_seg_edges}
    disc_of_dart = {}
    for key, segs in pic.disc_seg_edges.items():
        if key[0] == "D" and key[1] > 0:
            for e in segs:
                disc_of_dart[2 * e] = key[1]
    result = []
    for f, cyc in enumerate(m.faces()):
        arc_darts = [d for d in cyc if (d >> 1) in arcset]
        if f == pic.exterior_face:
            result.append(Face(tuple(cyc), "exterior", 0, False))
            continue
        if not arc_darts:
            discs = {disc_of_dart.get(d) for d in cyc}
            disc = discs.pop() if len(discs) == 1 else None
            result.append(Face(tuple(cyc), "disc", 0, False, disc))
            continue
        signs = {1 if d % 2 == 0 else -1 for d in arc_darts}
        if len(signs) != 1:
            raise DiagramError("arc orientations are not checkerboard-consistent around a region")
        result.append(Face(tuple(cyc), "region", signs.pop(), any(d in out_fwd for d in cyc)))
    return FaceDecomposition(tuple(result), m.euler_characteristic())


def counts(D: PlanarArcDiagram) -> tuple[int, int]:
    """``(i_D, w_D)``: non-boundary arcs and negative internal regions."""
    if not is_type_A(D):
        raise DiagramError("counts are defined for type-A diagrams")
    i_D = sum(1 for u, v in D.arcs if u[0] and v[0])
    return i_D, faces(D).internal_negative


def rotation_associated_number(D: PlanarArcDiagram) -> Fraction:
    i_D, w_D = counts(D)
    return Fraction(1 + i_D - D.d, 2) - w_D


# -- basic diagrams --------------------------------------------------------------

def identity_diagram(n_slots: int, parity: int = 0) -> PlanarArcDiagram:
    return PlanarArcDiagram.make(n_slots, parity, ((n_slots, parity),),
                                 [((0, t), (1, t)) for t in range(n_slots)])


def _radial(out_map: Sequence[Endpoint], inputs, extra_arcs) -> PlanarArcDiagram:
    """Output slot ``t`` is joined to ``out_map[t]``; parity follows from slot 0."""
    disc, slot = out_map[0]
    n_in, p_in = inputs[disc - 1]
    out_parity = 0 if slot % 2 == p_in else 1
    arcs = [((0, t), ep) for t, ep in enumerate(out_map)] + list(extra_arcs)
    return PlanarArcDiagram.make(len(out_map), out_parity, inputs, arcs)


def make_basic_unary(k: int, j: int, in_parity: int = 0, shift: int | None = None) -> PlanarArcDiagram:
    """Curl joining slots ``j`` and ``j+1`` of a ``2k``-slot input disc.

    The output disc keeps the other ``2k - 2`` slots in counterclockwise order.
    By default output slot 0 sits on the lowest-numbered remaining slot.
    """
    n = 2 * k
    if k < 2:
        raise DiagramError("a unary basic diagram needs k >= 2 so one output strand remains")
    if not 0 <= j < n:
        raise DiagramError(f"slot {j} out of range")
    rest = [(j + 2 + t) % n for t in range(n - 2)]
    if shift is None:
        shift = rest.index(min(rest))
    out_map = [(1, rest[(t + shift) % (n - 2)]) for t in range(n - 2)]
    return _radial(out_map, ((n, in_parity),), [((1, j), (1, (j + 1) % n))])


def make_basic_binary(k1: int, k2: int, j1: int, j2: int, parity1: int = 0,
                      parity2: int | None = None, shift: int = 0) -> PlanarArcDiagram:
    """Two input discs joined by one arc from slot ``j1`` of disc 1 to slot ``j2`` of disc 2."""
    n1, n2 = 2 * k1, 2 * k2
    if k1 < 1 or k2 < 1 or not 0 <= j1 < n1 or not 0 <= j2 < n2:
        raise DiagramError("illegal slot choice for a binary basic diagram")
    in1 = j1 % 2 == parity1
    if parity2 is None:
        parity2 = (j2 % 2) if not in1 else 1 - (j2 % 2)
    in2 = j2 % 2 == parity2
    if in1 == in2:
        raise DiagramError("the joining arc must connect an in-point to an out-point")
    seq = [(1, (j1 + t) % n1) for t in range(1, n1)] + [(2, (j2 + t) % n2) for t in range(1, n2)]
    n = len(seq)
    out_map = [seq[(t + shift) % n] for t in range(n)]
    return _radial(out_map, ((n1, parity1), (n2, parity2)), [((1, j1), (2, j2))])


def basic_kind(D: PlanarArcDiagram) -> str | None:
    """``"negative"``/``"positive"`` unary, ``"binary"``, or ``None`` if not basic."""
    if not is_type_A(D):
        return None
    i_D = sum(1 for u, v in D.arcs if u[0] and v[0])
    if D.d == 2 and i_D == 1:
        return "binary"
    if D.d == 1 and i_D == 1:
        return "negative" if faces(D).internal_negative else "positive"
    return None


def rotate_output(D: PlanarArcDiagram, shift: int) -> PlanarArcDiagram:
    """Move the output marked point: new slot ``t`` is old slot ``t + shift``."""
    n = D.out_slots
    if n == 0:
        return D
    shift %= n

    def mv(ep):
        return (0, (ep[1] - shift) % n) if ep[0] == 0 else ep

    parity = D.out_parity if shift % 2 == 0 else 1 - D.out_parity
    return PlanarArcDiagram.make(n, parity, D.inputs, [(mv(u), mv(v)) for u, v in D.arcs],
                                 D.pos_loops, D.neg_loops)


def permute_inputs(D: PlanarArcDiagram, order: Sequence[int]) -> PlanarArcDiagram:
    """New input disc ``p`` (1-based) is old disc ``order[p - 1]``."""
    if sorted(order) != list(range(1, D.d + 1)):
        raise DiagramError("order must be a permutation of the input discs")
    where = {old: new for new, old in enumerate(order, 1)}

    def mv(ep):
        return ep if ep[0] == 0 else (where[ep[0]], ep[1])

    return PlanarArcDiagram.make(D.out_slots, D.out_parity, [D.inputs[o - 1] for o in order],
                                 [(mv(u), mv(v)) for u, v in D.arcs], D.pos_loops, D.neg_loops)


# -- decomposition into basic diagrams -----------------------------------------------

@dataclass(frozen=True)
class Recipe:
    """``root`` followed by substitutions: ``result = compose(result, i, B)`` per step.

    Input disc ``p`` of the built diagram is input disc ``input_order[p - 1]`` of
    the decomposed one.
    """

    root: PlanarArcDiagram
    steps: tuple[tuple[int, PlanarArcDiagram], ...]
    input_order: tuple[int, ...]

    def build(self) -> PlanarArcDiagram:
        D = self.root
        for i, B in self.steps:
            D = compose(D, i, B)
        return D

    def build_in_original_order(self) -> PlanarArcDiagram:
        built = self.build()
        inverse = [0] * len(self.input_order)
        for p, orig in enumerate(self.input_order, 1):
            inverse[orig - 1] = p
        return permute_inputs(built, inverse)

    @property
    def basics(self) -> list[PlanarArcDiagram]:
        return [self.root] + [B for _, B in self.steps]


def _merge_step(D: PlanarArcDiagram):
    inter = sorted((u, v) if u[0] < v[0] else (v, u)
                   for u, v in D.arcs if u[0] and v[0] and u[0] != v[0])
    (i, a), (j, b) = inter[0]
    (ni, pi), (nj, pj) = D.inputs[i - 1], D.inputs[j - 1]
    B = make_basic_binary(ni // 2, nj // 2, a, b, pi, pj)
    where = {}
    for u, v in B.arcs:
        if u[0] == 0 or v[0] == 0:
            out_ep, in_ep = (u, v) if u[0] == 0 else (v, u)
            where[(i if in_ep[0] == 1 else j, in_ep[1])] = out_ep[1]

    def newdisc(x):
        if x == i or x == j:
            return i
        return x - 1 if x > j else x

    def mv(ep):
        if ep[0] in (i, j):
            return (i, where[ep])
        return (newdisc(ep[0]), ep[1]) if ep[0] else ep

    inputs = list(D.inputs)
    inputs[i - 1] = (B.out_slots, B.out_parity)
    del inputs[j - 1]
    arcs = [(mv(u), mv(v)) for u, v in D.arcs if {u, v} != {(i, a), (j, b)}]
    return PlanarArcDiagram.make(D.out_slots, D.out_parity, inputs, arcs), i, j, B


def _curl_step(D: PlanarArcDiagram):
    n = D.slots(1)
    at = D.arc_at()
    for s in range(n):
        u, v = at[(1, s)]
        if u[0] == 1 and v[0] == 1 and {u[1], v[1]} == {s, (s + 1) % n}:
            U = make_basic_unary(n // 2, s, D.inputs[0][1], shift=0)
            where = {}
            for a, b in U.arcs:
                if a[0] == 0 or b[0] == 0:
                    out_ep, in_ep = (a, b) if a[0] == 0 else (b, a)
                    where[in_ep[1]] = out_ep[1]

            def mv(ep):
                return ep if ep[0] == 0 else (1, where[ep[1]])

            arcs = [(mv(a), mv(b)) for a, b in D.arcs if (a, b) != (u, v)]
            return PlanarArcDiagram.make(D.out_slots, D.out_parity, [(U.out_slots, U.out_parity)], arcs), U
    return None


def decompose_to_basic(D: PlanarArcDiagram) -> Recipe:
    """Write a type-A diagram as basic diagrams substituted into one another.

    Input discs are merged pairwise along interconnecting arcs (lowest disc and
    slot first) with binary diagrams; the curls left on the single remaining
    disc are then peeled off, lowest slot first, with unary diagrams.  When
    ``D`` has no non-boundary arcs at all the root is a plain relabelling
    diagram and there are no steps.
    """
    if not is_type_A(D):
        raise DiagramError("only type-A diagrams decompose into basic diagrams")

    def rec(X: PlanarArcDiagram, ids: list):
        if X.d >= 2:
            Xp, i, j, B = _merge_step(X)
            token = object()
            ids_p = list(ids)
            ids_p[i - 1] = token
            del ids_p[j - 1]
            root, steps, final = rec(Xp, ids_p)
            q = final.index(token) + 1
            final = final[: q - 1] + [ids[i - 1], ids[j - 1]] + final[q:]
            return root, steps + [(q, B)], final
        peeled = _curl_step(X)
        if peeled is None:
            return X, [], list(ids)
        Xp, U = peeled
        root, steps, final = rec(Xp, ids)
        return root, steps + [(final.index(ids[0]) + 1, U)], final

    root, steps, final = rec(D, list(range(1, D.d + 1)))
    if steps and steps[0][0] == 1 and root.d == 1:
        # the root only relabels slots; fold it into the first basic diagram
        shift = root.arc_at()[(0, 0)]
        shift = shift[1][1] if shift[0] == (0, 0) else shift[0][1]
        root, steps = rotate_output(steps[0][1], shift), steps[1:]
    return Recipe(root, tuple(steps), tuple(final))

"""Seeded random objects for the verification suites."""

from __future__ import annotations

import random

from . import planar
from .planar import PlanarArcDiagram
from .smoothing import OrientedSmoothing


def random_smoothing(k: int, in_parity: int, rng: random.Random) -> OrientedSmoothing:
    def match(points):
        if not points:
            return []
        j = rng.randrange(1, len(points), 2)
        return [(points[0], points[j])] + match(points[1:j]) + match(points[j + 1:])

    pairs = [(a, b) if a % 2 == in_parity else (b, a) for a, b in match(list(range(2 * k)))]
    return OrientedSmoothing.make(k, pairs, in_parity)


def total_boundary(D: PlanarArcDiagram) -> int:
    return D.out_slots + sum(n for n, _ in D.inputs)


def _unary_into(n_slots: int, parity: int, rng: random.Random) -> PlanarArcDiagram:
    k = n_slots // 2 + 1
    j = rng.randrange(2 * k)
    shift = rng.randrange(2 * k - 2)
    U = planar.make_basic_unary(k, j, 0, shift)
    if U.out_parity != parity:
        U = planar.make_basic_unary(k, j, 1, shift)
    return U


def _binary_into(n_slots: int, parity: int, rng: random.Random) -> PlanarArcDiagram:
    k = n_slots // 2 + 1
    k1 = rng.randint(1, k - 1)
    k2 = k - k1
    j1, j2 = rng.randrange(2 * k1), rng.randrange(2 * k2)
    p1 = rng.randrange(2)
    shift = rng.randrange(n_slots)
    B = planar.make_basic_binary(k1, k2, j1, j2, p1, None, shift)
    if B.out_parity != parity:
        B = planar.make_basic_binary(k1, k2, j1, j2, 1 - p1, None, shift)
    return B


def random_type_a(rng: random.Random, max_inputs: int = 4, max_boundary: int = 16,
                  steps: int | None = None, input_slots: int | None = None) -> PlanarArcDiagram:
    """Random type-A diagram grown by substituting basic diagrams into input discs.

    ``input_slots`` (if given) is the slot count every input disc must end with;
    discs are grown until they reach it.
    """
    k = rng.randint(1, 3)
    D = planar.identity_diagram(2 * k, rng.randrange(2))
    D = planar.rotate_output(D, rng.randrange(2 * k))
    if steps is None:
        steps = rng.randint(1, 5)
    done = 0
    for _ in range(60):
        if done >= steps:
            break
        i = rng.randint(1, D.d)
        n, p = D.inputs[i - 1]
        want_binary = D.d < max_inputs and rng.random() < 0.5
        if input_slots is not None and n >= input_slots:
            want_binary = False
            continue
        X = _binary_into(n, p, rng) if want_binary and n >= 2 else _unary_into(n, p, rng)
        C = planar.compose(D, i, X)
        if total_boundary(C) > max_boundary:
            continue
        D = C
        done += 1
    order = list(range(1, D.d + 1))
    rng.shuffle(order)
    return planar.permute_inputs(D, order)


# -- alternating tangles built from one-crossing pieces --------------------------

def _slots_needed(n: int) -> int:
    """Fewest 4-slot discs a disc of ``n`` slots can be refined into."""
    return max(1, n // 2 - 1)


def _refine(n: int, parity: int, rng: random.Random, grow: bool) -> PlanarArcDiagram:
    if n == 2 or (grow and n == 4 and rng.random() < 0.5):
        k = n // 2 + 1
        return _unary_into(n, parity, rng) if k > 1 else None
    k = n // 2 + 1
    k1 = 2 if n > 4 else 1
    if rng.random() < 0.5:
        k1 = k - k1
    j1, j2 = rng.randrange(2 * k1), rng.randrange(2 * (k - k1))
    p1 = rng.randrange(2)
    shift = rng.randrange(n)
    B = planar.make_basic_binary(k1, k - k1, j1, j2, p1, None, shift)
    if B.out_parity != parity:
        B = planar.make_basic_binary(k1, k - k1, j1, j2, 1 - p1, None, shift)
    return B


def grow_quad_diagram(out_slots: int, out_parity: int, rng: random.Random,
                      max_inputs: int = 6, extra: float = 0.4) -> PlanarArcDiagram:
    """Random type-A diagram with the given output whose input discs all have 4 slots."""
    if _slots_needed(out_slots) > max_inputs:
        raise ValueError(f"{out_slots} output slots need more than {max_inputs} inputs")
    D = planar.identity_diagram(out_slots, out_parity)
    while True:
        need = sum(_slots_needed(n) for n, _ in D.inputs)
        bad = [i for i, (n, _) in enumerate(D.inputs, 1) if n != 4]
        if bad:
            i = rng.choice(bad)
            grow = False
        elif need < max_inputs and rng.random() < extra:
            i = rng.randint(1, D.d)
            grow = True
        else:
            break
        n, p = D.inputs[i - 1]
        X = _refine(n, p, rng, grow)
        C = planar.compose(D, i, X)
        if sum(_slots_needed(m) for m, _ in C.inputs) > max_inputs:
            continue
        D = C
    order = list(range(1, D.d + 1))
    rng.shuffle(order)
    return planar.permute_inputs(D, order)


def _placeholders(D: PlanarArcDiagram) -> list:
    from .tangle import one_crossing
    return [one_crossing(-1, p) for _, p in D.inputs]


def _pieces_from(oriented, rotated, start: int, D: PlanarArcDiagram) -> list:
    from .tangle import TangleDiagram
    out = []
    for i in range(D.d):
        rot = rotated[start + i]
        p = D.inputs[i][1]
        base = tuple((p + j) % 4 for j in range(4))
        if rot:
            base = base[2:] + base[:2]
        out.append(TangleDiagram(2, (base,), (0, 1, 2, 3), (oriented.signs[start + i],)))
    return out


def random_alternating_tangle(rng: random.Random, k: int | None = None, max_crossings: int = 6,
                              max_k: int = 4, parity: int | None = None):
    """Non-split alternating tangle composed of one-crossing tangles.

    Returns ``(D, pieces, T)`` with ``T == compose_tangles(D, pieces)``.
    """
    from .tangle import compose_tangles, reorient_randomly
    if k is None:
        k = rng.randint(1, max_k)
    if parity is None:
        parity = rng.randrange(2)
    D = grow_quad_diagram(2 * k, parity, rng, max_crossings)
    T0 = compose_tangles(D, _placeholders(D), check=False)
    T1, rotated = reorient_randomly(T0, rng)
    pieces = _pieces_from(T1, rotated, 0, D)
    T = compose_tangles(D, pieces)
    assert T == T1
    return D, pieces, T


def random_morphism_case(rng: random.Random, max_crossings: int = 6, max_inputs: int = 3,
                         max_boundary: int = 12):
    """An outer type-A diagram and alternating tangles fitting its discs.

    Returns ``(D, tangles)``; the strands of all tangles are oriented
    consistently with each other, so ``compose_tangles(D, tangles)`` succeeds.
    """
    from .tangle import compose_tangles, crossingless_arc, reorient_randomly
    while True:
        D = random_type_a(rng, max_inputs=max_inputs, max_boundary=max_boundary)
        need = sum(_slots_needed(n) for n, _ in D.inputs)
        if need <= max_crossings:
            break
    budget = max_crossings - need
    inner = []
    for n, p in D.inputs:
        if n == 2 and rng.random() < 0.3:
            inner.append(None)
            continue
        own = _slots_needed(n)
        E = grow_quad_diagram(n, p, rng, own + budget)
        budget -= E.d - own
        inner.append(E)
    raw = [crossingless_arc() if E is None else compose_tangles(E, _placeholders(E), check=False)
           for E in inner]
    T0 = compose_tangles(D, raw, check=False)
    T1, rotated = reorient_randomly(T0, rng)
    tangles, start = [], 0
    for E, R in zip(inner, raw):
        if E is None:
            tangles.append(R)
            continue
        tangles.append(compose_tangles(E, _pieces_from(T1, rotated, start, E)))
        start += E.d
    return D, tangles

from __future__ import annotations

import json
import random
from pathlib import Path

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracle_statesum as oracle
from altjones import generate, skein
from altjones.laurent import LOOP, LaurentPoly
from altjones.planar import identity_diagram, make_basic_binary, make_basic_unary
from altjones.skein import SkeinElement, is_coherently_alternating
from altjones.smoothing import OrientedSmoothing, maximal_smoothing, minimal_smoothing
from altjones.tangle import (
    CrossingCapError,
    TangleDiagram,
    TangleError,
    TangleParseError,
    _state_sum,
    close,
    compose_tangles,
    crossingless_arc,
    evaluate_link,
    format_tangle,
    gravity_orient,
    is_alternating_diagram,
    is_non_split,
    jones,
    load_tangle,
    one_crossing,
    parse_tangle,
    reorient_randomly,
    validate,
)

HERE = Path(__file__).parent
GOLDEN = json.loads((HERE / "golden" / "links.json").read_text())
L = LaurentPoly.parse
seeds = st.integers(0, 10 ** 6)


def braid_tangle(word, orientations):
    """Braid on ``len(orientations)`` strands as a tangle; ``+i`` / ``-i`` is the i-th generator or its inverse.

    Strands run bottom to top if their orientation is ``+1``.  The boundary is
    read counterclockwise: bottom left to right, then top right to left.
    """
    n = len(orientations)
    nxt = iter(range(10 ** 6))
    bottom = [next(nxt) for _ in range(n)]
    cur = list(bottom)
    strand_at = list(range(n))
    crossings, signs = [], []
    corner = {"SW": (-1, -1), "SE": (1, -1), "NE": (1, 1), "NW": (-1, 1)}
    for g in word:
        i = abs(g) - 1
        l, r = cur[i], cur[i + 1]
        nl, nr = next(nxt), next(nxt)
        sl, sr = strand_at[i], strand_at[i + 1]
        # strand sl runs SW-NE, strand sr runs SE-NW
        paths = {sl: ("SW", "NE", l, nr), sr: ("SE", "NW", r, nl)}
        over = sl if g > 0 else sr
        under = sr if over == sl else sl

        def direction(s):
            p, q, e_p, e_q = paths[s]
            if orientations[s] < 0:
                p, q, e_p, e_q = q, p, e_q, e_p
            return p, q, e_p

        up, uq, u_in = direction(under)
        op, oq, _ = direction(over)
        ring = ["SW", "SE", "NE", "NW"]
        label = {"SW": l, "SE": r, "NE": nr, "NW": nl}
        start = ring.index(up)
        crossings.append(tuple(label[ring[(start + t) % 4]] for t in range(4)))
        ov = (corner[oq][0] - corner[op][0], corner[oq][1] - corner[op][1])
        un = (corner[uq][0] - corner[up][0], corner[uq][1] - corner[up][1])
        signs.append(1 if ov[0] * un[1] - ov[1] * un[0] > 0 else -1)
        cur[i], cur[i + 1] = nl, nr
        strand_at[i], strand_at[i + 1] = sr, sl
    boundary = bottom + cur[::-1]
    return TangleDiagram(n, tuple(crossings), tuple(boundary), tuple(signs))


class TestFormat:
    def test_parse_one_crossing(self):
        T = parse_tangle("tangle k=2\nX 0 1 2 3\nB 0 1 2 3\n")
        assert T == one_crossing(-1)

    def test_sign_token(self):
        T = parse_tangle("tangle k=2\nX 0 1 2 3 +\nB 0 1 2 3\n")
        assert T.signs == (1,)
        assert format_tangle(T) == "tangle k=2\nX 0 1 2 3 +\nB 0 1 2 3\n"

    def test_comments_and_blank_lines(self):
        T = parse_tangle("# a crossing\n\ntangle k=2\nX 0 1 2 3  # negative\n\nB 0 1 2 3\n")
        assert T.n_crossings == 1

    @pytest.mark.parametrize("text, line, col", [
        ("", 1, 1),
        ("tangle 2\n", 1, 1),
        ("tangle k=2\nX 0 1 2\nB 0 1 2 3\n", 2, 1),
        ("tangle k=2\nX 0 1 2 z\nB 0 1 2 3\n", 2, 9),
        ("tangle k=2\nX 0 1 2 3\nB 0 1 2\n", 3, 1),
        ("tangle k=2\nY 0 1 2 3\n", 2, 1),
    ])
    def test_parse_errors_have_positions(self, text, line, col):
        with pytest.raises(TangleParseError) as info:
            parse_tangle(text)
        assert (info.value.line, info.value.col) == (line, col)

    @pytest.mark.parametrize("name", sorted(GOLDEN))
    def test_golden_files_round_trip(self, name):
        text = (HERE / "golden" / f"{name}.tangle").read_text()
        T = parse_tangle(text)
        assert parse_tangle(format_tangle(T)) == T
        assert format_tangle(T) == text

    @given(seeds)
    @settings(max_examples=40, deadline=None)
    def test_round_trips(self, seed):
        _, _, T = generate.random_alternating_tangle(random.Random(seed))
        assert parse_tangle(format_tangle(T)) == T
        assert TangleDiagram.from_json(json.loads(json.dumps(T.to_json()))) == T
        assert load_tangle(json.dumps(T.to_json())) == T


class TestValidation:
    def test_edge_used_three_times(self):
        with pytest.raises(TangleError):
            TangleDiagram.make(2, [(0, 1, 2, 3)], (0, 1, 2, 0))

    def test_non_planar_rotation(self):
        with pytest.raises(TangleError, match="planar"):
            parse_tangle("tangle k=2\nX 0 3 2 1\nB 0 1 2 3\n")

    def test_sign_conflict(self):
        # the trefoil's signs are forced; flipping one contradicts the strand directions
        with pytest.raises(TangleError, match="conflict"):
            TangleDiagram.make(0, [(1, 5, 2, 4), (3, 1, 4, 6), (5, 3, 6, 2)], (), (1, 1, -1))

    def test_signs_derived_from_strands(self):
        T = TangleDiagram.make(0, [(1, 5, 2, 4), (3, 1, 4, 6), (5, 3, 6, 2)], ())
        assert T.signs == (1, 1, 1)
        assert oracle.crossing_sign((1, 5, 2, 4), 6) == 1

    def test_crossing_change_breaks_alternation(self):
        _, _, T = generate.random_alternating_tangle(random.Random(4), k=2, max_crossings=3)
        assert T.n_crossings >= 2
        x = T.crossings[0]
        changed = TangleDiagram(T.k, (x[1:] + x[:1],) + T.crossings[1:], T.boundary, T.signs)
        validate(changed)
        assert not is_alternating_diagram(changed)
        with pytest.raises(TangleError):
            gravity_orient(changed)
        with pytest.raises(TangleError):
            jones(changed)

    def test_split(self):
        T = TangleDiagram.make(4, [(0, 1, 2, 3), (4, 5, 6, 7)], range(8), (-1, -1))
        assert is_alternating_diagram(T)
        assert not is_non_split(T)
        with pytest.raises(TangleError, match="split"):
            jones(T)

    def test_single_crossing_non_split(self):
        assert is_non_split(one_crossing())
        assert is_non_split(crossingless_arc())


class TestGravity:
    @pytest.mark.parametrize("p", [0, 1])
    def test_single_crossing(self, p):
        g = gravity_orient(one_crossing(-1, p))
        assert g.in_parity == p
        assert [g.is_in(s) for s in range(4)] == [s % 2 == p for s in range(4)]

    @given(seeds)
    @settings(max_examples=60, deadline=None)
    def test_boundary_alternates(self, seed):
        D, _, T = generate.random_alternating_tangle(random.Random(seed))
        ends = T.ends()
        kinds = []
        for e in T.boundary:
            x = next(end for end in ends[e] if end[0] == "X")
            kinds.append("in" if x[2] % 2 == 0 else "out")
        assert all(kinds[s] != kinds[(s + 1) % len(kinds)] for s in range(len(kinds)))
        g = gravity_orient(T)
        assert list(g.boundary) == kinds
        assert g.in_parity == D.out_parity

    @given(seeds)
    @settings(max_examples=40, deadline=None)
    def test_arrows_point_into_undercrossings(self, seed):
        _, _, T = generate.random_alternating_tangle(random.Random(seed))
        g = gravity_orient(T)
        for e, lst in T.ends().items():
            tail = g.tails[e]
            head = lst[1] if tail == lst[0] else lst[0]
            if tail[0] == "X":
                assert tail[2] % 2 == 1
            if head[0] == "X":
                assert head[2] % 2 == 0


class TestJones:
    def test_negative_crossing(self):
        P = jones(one_crossing(-1))
        assert P == skein.normalize([(minimal_smoothing(2), L("-q^-2")), (maximal_smoothing(2), L("q^-1"))])

    def test_positive_crossing(self):
        P = jones(one_crossing(1))
        assert P == skein.normalize([(minimal_smoothing(2), L("q")), (maximal_smoothing(2), L("-q^2"))])

    def test_crossingless_arc(self):
        assert jones(crossingless_arc()) == SkeinElement.single(OrientedSmoothing.make(1, [(0, 1)]))

    @pytest.mark.parametrize("x", [(0, 1, 1, 2), (0, 2, 1, 1), (1, 1, 2, 0), (2, 0, 1, 1)])
    def test_reidemeister_one(self, x):
        # either kink on a single arc contributes exactly 1
        T = TangleDiagram.make(1, [x], (0, 2))
        P = jones(T)
        assert len(P.terms) == 1 and P.terms[0][1] == LaurentPoly.from_dict({0: 1})

    def test_kinked_unknot_arithmetic(self):
        assert L("q") * LOOP - L("q^2") == L("1")

    def test_reidemeister_two(self):
        T = braid_tangle([1, -1], [1, -1])
        validate(T)
        assert not is_alternating_diagram(T)
        identity = OrientedSmoothing.make(2, [(0, 3), (2, 1)])
        assert _state_sum(T, 0, None) == SkeinElement.single(identity)

    @pytest.mark.parametrize("sign", [1, -1])
    @pytest.mark.parametrize("orient", [(1, -1, 1), (-1, 1, -1)])
    def test_reidemeister_three(self, sign, orient):
        a = braid_tangle([sign * 1, sign * 2, sign * 1], orient)
        b = braid_tangle([sign * 2, sign * 1, sign * 2], orient)
        p = 0 if orient[0] > 0 else 1
        assert _state_sum(a, p, None) == _state_sum(b, p, None)

    def test_alternating_braid_is_coherent(self):
        T = braid_tangle([1, -2, 1, -2], [1, -1, 1])
        assert is_alternating_diagram(T) and is_non_split(T)
        assert is_coherently_alternating(jones(T))

    @given(seeds)
    @settings(max_examples=30, deadline=None)
    def test_relabelling_invariance(self, seed):
        rng = random.Random(seed)
        _, _, T = generate.random_alternating_tangle(rng)
        labels = T.labels()
        new = dict(zip(labels, rng.sample(range(100, 100 + 3 * len(labels)), len(labels))))
        R = TangleDiagram(T.k, tuple(tuple(new[e] for e in x) for x in T.crossings),
                          tuple(new[e] for e in T.boundary), T.signs)
        assert jones(R) == jones(T)

    @given(seeds)
    @settings(max_examples=30, deadline=None)
    def test_boundary_rotation(self, seed):
        # moving the base point by two slots relabels the smoothings and nothing else
        _, _, T = generate.random_alternating_tangle(random.Random(seed))
        n = 2 * T.k
        R = TangleDiagram(T.k, T.crossings, T.boundary[2:] + T.boundary[:2], T.signs)
        expected = skein.normalize(
            [(OrientedSmoothing.make(T.k, [((a - 2) % n, (b - 2) % n) for a, b in s.pairs], s.in_parity), c)
             for s, c in jones(T).terms], T.k, jones(T).in_parity)
        assert jones(R) == expected

    @given(seeds)
    @settings(max_examples=30, deadline=None)
    def test_reversing_every_strand(self, seed):
        _, _, T = generate.random_alternating_tangle(random.Random(seed))
        R = TangleDiagram(T.k, tuple(x[2:] + x[:2] for x in T.crossings), T.boundary, T.signs)
        validate(R)
        assert jones(R) == jones(T)

    def test_cap(self, monkeypatch):
        T = parse_tangle((HERE / "golden" / "trefoil.tangle").read_text())
        with pytest.raises(CrossingCapError):
            evaluate_link(T, cap=2)
        monkeypatch.setenv("SKEIN_MAX_CROSSINGS", "2")
        with pytest.raises(CrossingCapError):
            evaluate_link(T)
        monkeypatch.setenv("SKEIN_MAX_CROSSINGS", "3")
        assert evaluate_link(T)[1] == L("q^2 + q^6 - q^8")


class TestLinks:
    def test_unknot(self):
        assert evaluate_link(crossingless_arc()) == (LOOP, LaurentPoly.from_dict({0: 1}))

    @pytest.mark.parametrize("name", sorted(GOLDEN))
    def test_golden_values(self, name):
        entry = GOLDEN[name]
        T = parse_tangle((HERE / "golden" / f"{name}.tangle").read_text())
        hat, J = evaluate_link(T)
        assert str(hat) == entry["unnormalized"]
        assert str(J) == entry["normalized"]

    @pytest.mark.parametrize("name", sorted(GOLDEN))
    def test_oracle_agrees(self, name):
        pd = [tuple(x) for x in GOLDEN[name]["pd"]]
        hat, J = evaluate_link(TangleDiagram.make(0, pd, ()))
        assert J == LaurentPoly.from_dict(oracle.jones_q(pd))
        assert hat == LaurentPoly.from_dict(oracle.unnormalized(pd))

    def test_open_trefoil_closes_to_trefoil(self):
        T = parse_tangle((HERE / "fixtures" / "trefoil_open.tangle").read_text())
        assert evaluate_link(T)[1] == L("q^2 + q^6 - q^8")
        assert jones(T).terms[0][1] == L("q^2 + q^6 - q^8")
        assert close(T).k == 0

    @given(seeds)
    @settings(max_examples=40, deadline=None)
    def test_generated_closures_divide(self, seed):
        _, _, T = generate.random_alternating_tangle(random.Random(seed), k=1)
        hat, J = evaluate_link(T)
        assert J * LOOP == hat


class TestCompose:
    def test_identity(self):
        _, _, T = generate.random_alternating_tangle(random.Random(1), k=2)
        assert jones(compose_tangles(identity_diagram(4, gravity_orient(T).in_parity), [T])) == jones(T)

    def test_two_crossings_in_a_binary_diagram(self):
        B = make_basic_binary(2, 2, 0, 3, 0, 0)
        T = compose_tangles(B, [one_crossing(-1, 0), one_crossing(-1, 0)])
        assert T.n_crossings == 2
        assert is_alternating_diagram(T) and is_non_split(T)
        assert jones(T) == skein.apply_operator(B, [jones(one_crossing(-1)), jones(one_crossing(-1))])

    def test_mismatched_orientation(self):
        U = make_basic_unary(2, 0, 0)
        with pytest.raises(TangleError):
            compose_tangles(U, [one_crossing(-1, 1)])

    def test_arity(self):
        with pytest.raises(TangleError):
            compose_tangles(make_basic_unary(2, 0), [])

    @given(seeds)
    @settings(max_examples=40, deadline=None)
    def test_morphism(self, seed):
        D, ts = generate.random_morphism_case(random.Random(seed))
        lhs = jones(compose_tangles(D, ts), parity_hint=D.out_parity)
        rhs = skein.apply_operator(D, [jones(t, parity_hint=p) for t, (_, p) in zip(ts, D.inputs)])
        assert lhs == rhs

    @given(seeds)
    @settings(max_examples=40, deadline=None)
    def test_reorientation_keeps_alternation(self, seed):
        rng = random.Random(seed)
        _, _, T = generate.random_alternating_tangle(rng)
        R, _ = reorient_randomly(T, rng)
        assert is_alternating_diagram(R) and is_non_split(R)
        assert is_coherently_alternating(jones(R))

from __future__ import annotations

import itertools
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from altjones import generate, planar
from altjones.planar import (
    DiagramError,
    PlanarArcDiagram,
    apply,
    basic_kind,
    compose,
    counts,
    decompose_to_basic,
    diagram_as_smoothing,
    identity_diagram,
    is_type_A,
    make_basic_binary,
    make_basic_unary,
    permute_inputs,
    rotate_output,
    rotation_associated_number,
    smoothing_as_diagram,
)
from altjones.smoothing import (
    OrientedSmoothing,
    enumerate_smoothings,
    maximal_smoothing,
    minimal_smoothing,
    rotation_number,
)

seeds = st.integers(0, 10 ** 6)


def random_case(seed, **kw):
    rng = random.Random(seed)
    D = generate.random_type_a(rng, **kw)
    sig = [generate.random_smoothing(n // 2, p, rng) for n, p in D.inputs]
    return rng, D, sig


class TestConstruction:
    def test_identity_acts_trivially(self):
        for s in enumerate_smoothings(3, 1):
            assert apply(identity_diagram(6, 1), [s]) == s

    def test_identity_counts(self):
        assert counts(identity_diagram(4)) == (0, 0)
        assert rotation_associated_number(identity_diagram(4)) == 0

    @pytest.mark.parametrize("s", enumerate_smoothings(3), ids=str)
    def test_smoothing_round_trip(self, s):
        D = smoothing_as_diagram(s)
        assert D.d == 0
        assert diagram_as_smoothing(D) == s

    @given(seeds)
    @settings(max_examples=60, deadline=None)
    def test_json_round_trip(self, seed):
        _, D, _ = random_case(seed)
        assert PlanarArcDiagram.from_json(D.to_json()) == D

    def test_json_shape(self):
        obj = make_basic_unary(2, 0).to_json()
        assert set(obj) >= {"d", "out", "in", "arcs", "loops"}
        assert obj["d"] == 1 and obj["loops"] == 0

    def test_crossing_arcs_rejected(self):
        # slots 0-2 and 1-3 of a four-slot output cannot both be joined to the input disc planarly
        D = PlanarArcDiagram.make(4, 0, [(4, 0)], [((0, 0), (1, 1)), ((1, 0), (0, 1)),
                                                   ((0, 2), (1, 3)), ((1, 2), (0, 3))])
        assert not planar.validate(D)
        with pytest.raises(DiagramError):
            PlanarArcDiagram.from_json(D.to_json())

    def test_orientation_mismatch_rejected(self):
        D = PlanarArcDiagram.make(2, 0, [(2, 1)], [((0, 0), (1, 0)), ((1, 1), (0, 1))])
        assert not planar.validate(D)

    def test_apply_checks_arity_and_parity(self):
        U = make_basic_unary(2, 0)
        with pytest.raises(DiagramError):
            apply(U, [])
        with pytest.raises(DiagramError):
            apply(U, [minimal_smoothing(2, 1)])
        with pytest.raises(DiagramError):
            apply(U, [minimal_smoothing(3)])


class TestBasic:
    @pytest.mark.parametrize("k", [2, 3, 4])
    @pytest.mark.parametrize("p", [0, 1])
    def test_unary_sign_alternates_with_slot(self, k, p):
        for j in range(2 * k):
            U = make_basic_unary(k, j, p)
            kind = basic_kind(U)
            expected = "negative" if (j % 2 == p) else "positive"
            assert kind == expected
            assert rotation_associated_number(U) == (Fraction(-1, 2) if kind == "negative" else Fraction(1, 2))

    @pytest.mark.parametrize("k1, k2", [(1, 1), (1, 2), (2, 2), (2, 3)])
    def test_binary_constant(self, k1, k2):
        for j1, j2 in itertools.product(range(2 * k1), range(2 * k2)):
            B = make_basic_binary(k1, k2, j1, j2)
            assert basic_kind(B) == "binary"
            assert counts(B)[0] == 1
            assert rotation_associated_number(B) == 0

    def test_positive_curl_closes_p1_minimal_term_to_an_arc(self):
        U = make_basic_unary(2, 1)
        assert basic_kind(U) == "positive"
        out = apply(U, [minimal_smoothing(2)])
        assert out == OrientedSmoothing.make(1, [(0, 1)])

    def test_negative_curl_makes_a_loop_from_the_minimal_smoothing(self):
        U = make_basic_unary(2, 0)
        out = apply(U, [minimal_smoothing(2)])
        assert out.loops == 1 and out.neg_loops == 1
        assert apply(U, [maximal_smoothing(2)]).loops == 0

    def test_rotate_output_flips_parity_on_odd_shift(self):
        U = make_basic_unary(3, 0)
        assert rotate_output(U, 1).out_parity == 1 - U.out_parity
        assert rotate_output(U, 2).out_parity == U.out_parity
        assert rotation_associated_number(rotate_output(U, 3)) == rotation_associated_number(U)

    def test_not_basic(self):
        assert basic_kind(identity_diagram(4)) is None
        D = compose(make_basic_unary(3, 0), 1, make_basic_unary(4, 1))
        assert is_type_A(D) and basic_kind(D) is None


class TestOperators:
    @given(seeds)
    @settings(max_examples=150, deadline=None)
    def test_rotation_additivity(self, seed):
        _, D, sig = random_case(seed, max_boundary=14)
        R = rotation_number(apply(D, sig))
        assert R == rotation_associated_number(D) + sum((rotation_number(s) for s in sig), Fraction(0))

    @given(seeds)
    @settings(max_examples=100, deadline=None)
    def test_composition_is_coherent(self, seed):
        rng, D, _ = random_case(seed, max_inputs=3, max_boundary=12)
        i = rng.randint(1, D.d)
        n, p = D.inputs[i - 1]
        pick = generate._binary_into if rng.random() < 0.5 else generate._unary_into
        E = pick(n, p, rng)
        C = compose(D, i, E)
        sig = [generate.random_smoothing(m // 2, q, rng) for m, q in C.inputs]
        inner = apply(E, sig[i - 1: i - 1 + E.d])
        outer_inputs = sig[: i - 1] + [inner.without_loops()] + sig[i - 1 + E.d:]
        lhs = apply(C, sig)
        rhs = apply(D, outer_inputs)
        assert lhs.pairs == rhs.pairs
        assert lhs.loops == rhs.loops + inner.loops
        assert rotation_number(lhs) == rotation_number(rhs) + inner.pos_loops - inner.neg_loops

    @given(seeds)
    @settings(max_examples=40, deadline=None)
    def test_permuting_inputs(self, seed):
        rng, D, sig = random_case(seed)
        order = list(range(1, D.d + 1))
        rng.shuffle(order)
        P = permute_inputs(D, order)
        assert apply(P, [sig[o - 1] for o in order]) == apply(D, sig)


class TestDecompose:
    @given(seeds)
    @settings(max_examples=60, deadline=None)
    def test_soundness(self, seed):
        rng = random.Random(seed)
        D = generate.random_type_a(rng, max_inputs=3, max_boundary=12)
        recipe = decompose_to_basic(D)
        for B in recipe.basics[1:]:
            assert basic_kind(B) is not None
        built = recipe.build_in_original_order()
        for sig in itertools.product(*(enumerate_smoothings(n // 2, p) for n, p in D.inputs)):
            assert apply(built, list(sig)) == apply(D, list(sig))

    def test_basic_decomposes_to_itself(self):
        U = make_basic_unary(3, 2)
        recipe = decompose_to_basic(U)
        assert recipe.build() == U

    def test_rejects_non_type_a(self):
        with pytest.raises(DiagramError):
            decompose_to_basic(smoothing_as_diagram(minimal_smoothing(2)))

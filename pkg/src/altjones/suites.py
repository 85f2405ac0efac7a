"""Seeded verification suites shared by the CLI and the acceptance tests."""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from fractions import Fraction

from . import generate, planar, skein, smoothing, tangle


@dataclass
class SuiteResult:
    name: str
    cases: int = 0
    passed: int = 0
    failures: list[dict] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.passed == self.cases

    def record(self, good: bool, witness=None) -> None:
        self.cases += 1
        if good:
            self.passed += 1
        elif len(self.failures) < 5:
            self.failures.append(witness)

    def summary(self) -> str:
        return f"{self.name}: {self.passed}/{self.cases} exact"


def rotation_additivity(cases: int = 1000, seed: int = 7, max_boundary: int = 16) -> SuiteResult:
    res = SuiteResult("rotation-additivity")
    rng = random.Random(seed)
    for _ in range(cases):
        D = generate.random_type_a(rng, max_boundary=max_boundary)
        sig = [generate.random_smoothing(n // 2, p, rng) for n, p in D.inputs]
        lhs = smoothing.rotation_number(planar.apply(D, sig))
        rhs = planar.rotation_associated_number(D) + sum(
            (smoothing.rotation_number(s) for s in sig), Fraction(0))
        res.record(lhs == rhs, {"diagram": D.to_json(), "smoothings": [s.to_json() for s in sig],
                                "R(apply)": str(lhs), "expected": str(rhs)})
    return res


def all_basic_diagrams(max_k: int = 5):
    """Every unary and binary basic diagram with output ``k <= max_k``, both parities."""
    for p in (0, 1):
        for k in range(2, max_k + 2):
            for j in range(2 * k):
                for shift in range(2 * k - 2):
                    yield planar.make_basic_unary(k, j, p, shift)
        for k1 in range(1, max_k + 1):
            for k2 in range(1, max_k + 2 - k1):
                for j1 in range(2 * k1):
                    for j2 in range(2 * k2):
                        yield planar.make_basic_binary(k1, k2, j1, j2, p)


def basic_constants(max_k: int = 5) -> SuiteResult:
    res = SuiteResult("basic-constants")
    expected = {"negative": Fraction(-1, 2), "binary": Fraction(0), "positive": Fraction(1, 2)}
    for D in all_basic_diagrams(max_k):
        kind = planar.basic_kind(D)
        R = planar.rotation_associated_number(D)
        res.record(kind is not None and R == expected[kind],
                   {"diagram": D.to_json(), "kind": kind, "R_D": str(R)})
    return res


def morphism(cases: int = 200, seed: int = 11, max_crossings: int = 6) -> SuiteResult:
    res = SuiteResult("morphism")
    rng = random.Random(seed)
    for _ in range(cases):
        D, ts = generate.random_morphism_case(rng, max_crossings)
        lhs = tangle.jones(tangle.compose_tangles(D, ts), parity_hint=D.out_parity)
        rhs = skein.apply_operator(
            D, [tangle.jones(t, parity_hint=p) for t, (_, p) in zip(ts, D.inputs)])
        res.record(lhs == rhs, {"diagram": D.to_json(), "tangles": [t.to_json() for t in ts],
                                "composed": lhs.to_json(), "operator": rhs.to_json()})
    return res


def tangle_coherence(cases: int = 300, seed: int = 5, max_crossings: int = 6, max_k: int = 4,
             pool: list | None = None) -> SuiteResult:
    """Jones values of generated non-split alternating tangles are coherently alternating."""
    res = SuiteResult("theorem2")
    rng = random.Random(seed)
    for _ in range(cases):
        _, _, T = generate.random_alternating_tangle(rng, max_crossings=max_crossings, max_k=max_k)
        J = tangle.jones(T)
        w = skein.coherence_witness(J)
        if pool is not None and w is None:
            pool.append(J)
        res.record(w is None, None if w is None else {
            "tangle": T.to_json(), "depth": w[0], "closure": w[1].to_json(), "reason": w[2]})
    return res


def _random_basic_for(rng: random.Random, P: skein.SkeinElement, Q: skein.SkeinElement | None):
    if Q is None:
        return planar.make_basic_unary(P.k, rng.randrange(2 * P.k), P.in_parity,
                                       rng.randrange(max(2 * P.k - 2, 1)))
    choices = []
    for j1, j2 in itertools.product(range(2 * P.k), range(2 * Q.k)):
        if (j1 % 2 == P.in_parity) != (j2 % 2 == Q.in_parity):
            choices.append((j1, j2))
    j1, j2 = rng.choice(choices)
    shift = rng.randrange(2 * (P.k + Q.k - 1))
    return planar.make_basic_binary(P.k, Q.k, j1, j2, P.in_parity, Q.in_parity, shift)


def operator_preservation(cases: int = 100, seed: int = 3, pool: list | None = None,
             max_pool_k: int = 3) -> SuiteResult:
    """Basic operators applied to coherently alternating elements stay coherently alternating."""
    res = SuiteResult("theorem1")
    if pool is None:
        pool = []
        tangle_coherence(cases=150, seed=seed, max_crossings=4, max_k=max_pool_k, pool=pool)
    pool = [P for P in pool if P.k <= max_pool_k]
    rng = random.Random(seed)
    for _ in range(cases):
        P = rng.choice(pool)
        unary = P.k >= 2 and rng.random() < 0.3
        Q = None if unary else rng.choice(pool)
        B = _random_basic_for(rng, P, Q)
        out = skein.apply_operator(B, [P] if Q is None else [P, Q])
        w = skein.coherence_witness(out)
        res.record(w is None, None if w is None else {
            "operator": B.to_json(), "inputs": [X.to_json() for X in ([P] if Q is None else [P, Q])],
            "depth": w[0], "reason": w[2]})
    return res


def decompose_soundness(cases: int = 150, seed: int = 13, max_inputs: int = 3,
                        max_boundary: int = 12) -> SuiteResult:
    res = SuiteResult("decompose")
    rng = random.Random(seed)
    for _ in range(cases):
        D = generate.random_type_a(rng, max_inputs=max_inputs, max_boundary=max_boundary)
        built = planar.decompose_to_basic(D).build_in_original_order()
        bases = [smoothing.enumerate_smoothings(n // 2, p) for n, p in D.inputs]
        bad = None
        for sig in itertools.product(*bases):
            if planar.apply(D, list(sig)) != planar.apply(built, list(sig)):
                bad = [s.to_json() for s in sig]
                break
        res.record(bad is None, {"diagram": D.to_json(), "smoothings": bad})
    return res


def catalan(max_k: int = 5) -> SuiteResult:
    res = SuiteResult("catalan")
    expected = [1, 2, 5, 14, 42, 132, 429]
    for k in range(1, max_k + 1):
        n = len(smoothing.enumerate_smoothings(k))
        res.record(n == expected[k - 1], {"k": k, "count": n})
    return res


SUITES = {
    "rotation-additivity": rotation_additivity,
    "morphism": morphism,
    "theorem1": operator_preservation,
    "theorem2": tangle_coherence,
    "basic-constants": basic_constants,
    "decompose": decompose_soundness,
    "catalan": catalan,
}

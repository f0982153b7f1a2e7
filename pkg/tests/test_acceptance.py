"""Acceptance criteria, one runner per criterion.

Run under pytest (the terminal summary lists every criterion) or directly:

    python tests/test_acceptance.py
"""

from __future__ import annotations

import os
import subprocess
import sys
import time
from fractions import Fraction
from pathlib import Path

import pytest

from oresmooth import (
    AlgebraSpec,
    BaseKind,
    BasePoly,
    HopfFamily,
    apply_delta,
    apply_sigma,
    check_divergence,
    check_dual_basis,
    check_kernel_of_d,
    check_nu_x_constraint,
    check_nu_y_constraint,
    classify,
    smoothness_pipeline,
)
from oresmooth.calculus import (
    check_commutation,
    check_leibniz,
    check_relation_compatibility,
    default_dual_basis,
)
from oresmooth.hopf import verify_coassociativity, verify_coproduct_respects_relation, verify_counit
from oresmooth.sampling import make_rng, random_base_poly

L = BaseKind.LAURENT


def _lm(q, c):
    q, c = Fraction(q), Fraction(c)
    return AlgebraSpec.laurent(q, "-", {1: c, -1: -c * q})


# every admissible algebra exercised by the calculus criteria
POLY_GRID = [
    AlgebraSpec.poly(1, 0, {}),
    AlgebraSpec.poly(1, 0, {1: 1}),
    AlgebraSpec.poly(1, 0, {2: 1, 0: 1}),
    AlgebraSpec.poly(1, 1, {}),
    AlgebraSpec.poly(1, 1, {0: 1}),
    AlgebraSpec.poly(2, 1, {1: 1, 0: 1}),
    AlgebraSpec.poly(3, 6, {1: 5, 0: 15}),
    AlgebraSpec.poly(Fraction(1, 2), 0, {1: -1}),
]
LAURENT_PLUS_GRID = [
    AlgebraSpec.laurent(1, "+", {}),
    AlgebraSpec.laurent(1, "+", {2: 1, -1: -1}),
    AlgebraSpec.laurent(2, "+", {1: 3}),
    AlgebraSpec.laurent(Fraction(1, 3), "+", {}),
]
LAURENT_MINUS_GRID = [_lm(2, 1), _lm(3, 0)]
GRID = POLY_GRID + LAURENT_PLUS_GRID + LAURENT_MINUS_GRID

MUTATION_SPECS = [POLY_GRID[2], POLY_GRID[6], LAURENT_PLUS_GRID[2], LAURENT_MINUS_GRID[0]]


class Outcome:
    def __init__(self, ok: bool, detail: str):
        self.ok, self.detail = ok, detail

    def __bool__(self):
        return self.ok


def _first_failure(items):
    for label, ok in items:
        if not ok:
            return Outcome(False, f"failed: {label}")
    return None


def criterion_1() -> Outcome:
    """sigma-derivation law on 10 specs x 200 random pairs of degree <= 5, under 5 s."""
    specs = [
        AlgebraSpec.poly(1, 0, {5: 1, 1: 1}),
        AlgebraSpec.poly(1, 0, {0: 3}),
        AlgebraSpec.poly(1, 2, {0: -1}),
        AlgebraSpec.poly(1, Fraction(1, 3), {0: 4}),
        AlgebraSpec.poly(2, 1, {1: 1, 0: 1}),
        AlgebraSpec.poly(3, 6, {1: 5, 0: 15}),
        AlgebraSpec.poly(Fraction(1, 2), 0, {1: -1}),
        _lm(2, 1),
        _lm(Fraction(1, 2), -2),
        _lm(3, 5),
    ]
    rng = make_rng()
    start = time.perf_counter()
    checked = 0
    for spec in specs:
        s, p, kind = spec.sigma, spec.p, spec.base_kind
        for _ in range(200):
            f = random_base_poly(rng, kind, 5)
            g = random_base_poly(rng, kind, 5)
            lhs = apply_delta(s, p, f * g)
            rhs = apply_delta(s, p, f) * g + apply_sigma(s, f) * apply_delta(s, p, g)
            if lhs != rhs:
                return Outcome(False, f"{spec}: f={f}, g={g}")
            checked += 1
    elapsed = time.perf_counter() - start
    if elapsed >= 5:
        return Outcome(False, f"{checked} pairs took {elapsed:.2f} s (limit 5 s)")
    return Outcome(True, f"{checked} pairs, {elapsed:.2f} s")


QR_PAIRS = [(1, 0), (1, 2), (1, -1), (1, Fraction(1, 3)), (2, 0), (2, 1), (3, 6), (Fraction(1, 2), 0),
            (Fraction(1, 2), 3), (-1, 0), (-1, 2), (5, -4), (Fraction(2, 3), 1), (-2, 0), (-3, 3),
            (4, 1), (Fraction(-1, 2), 1), (7, 0), (3, 0), (Fraction(5, 3), -1)]


def criterion_2() -> Outcome:
    """classify agrees with both constraint equations on 20 (q, r) pairs x 50 samples of p."""
    rng = make_rng()
    cases = admissible = 0
    for q, r in QR_PAIRS:
        q, r = Fraction(q), Fraction(r)
        for i in range(50):
            p = {e: Fraction(rng.randint(-2, 2)) for e in range(rng.randint(0, 5) + 1)}
            # a fifth of the samples are pushed onto the admissible families
            if i % 5 == 0:
                c = Fraction(rng.randint(-2, 2))
                p = {0: c} if q == 1 else {1: c, 0: c * r / (q - 1)}
            spec = AlgebraSpec.poly(q, r, p)
            direct = check_nu_x_constraint(spec) and check_nu_y_constraint(spec)
            verdict = classify(spec)
            if verdict.admissible != direct:
                return Outcome(False, f"{spec}: classify={verdict.verdict.value}, equations={direct}")
            cases += 1
            admissible += direct
    return Outcome(True, f"{cases} cases, {admissible} admissible")


def criterion_3() -> Outcome:
    """Commutation of the twisting maps on monomials with |k| + l <= 8."""
    specs = [s for s in POLY_GRID + LAURENT_PLUS_GRID]
    specs += [_lm(q, c) for q in (2, 3, Fraction(1, 2)) for c in (0, 1, -2)]
    failure = _first_failure((str(s), check_commutation(s, 8).passed) for s in specs)
    return failure or Outcome(True, f"{len(specs)} specs")


def criterion_4() -> Outcome:
    """d respects the defining relation and the Leibniz rule on 200 random pairs per spec."""
    rng = make_rng()
    for spec in GRID:
        rel = check_relation_compatibility(spec)
        if not rel.passed:
            return Outcome(False, f"relation, {spec}: {rel.counterexample}")
        lb = check_leibniz(spec, samples=200, degree=4, rng=rng)
        if not lb.passed:
            return Outcome(False, f"Leibniz, {spec}: {lb.counterexample}")
    return Outcome(True, f"{len(GRID)} specs")


def criterion_5() -> Outcome:
    """Dual-basis identities at bound 6, and every single-form corruption is caught."""
    specs = [
        AlgebraSpec.poly(1, 0, {}), AlgebraSpec.poly(1, 0, {1: 1}), AlgebraSpec.poly(1, 0, {2: 1, 0: 1}),
        AlgebraSpec.poly(1, 1, {}), AlgebraSpec.poly(1, 1, {0: 1}),
        AlgebraSpec.poly(2, 1, {1: 1, 0: 1}), AlgebraSpec.poly(3, 6, {1: 5, 0: 15}),
        AlgebraSpec.poly(Fraction(1, 2), 0, {1: -1}),
    ] + LAURENT_PLUS_GRID + LAURENT_MINUS_GRID
    for spec in specs:
        report = check_dual_basis(spec, 6)
        if not report.passed:
            return Outcome(False, f"{spec}: {report.counterexample}")
    mutations = 0
    for spec in MUTATION_SPECS:
        for slot in range(4):
            basis = [list(pair) for pair in default_dual_basis(spec)]
            i, j = divmod(slot, 2)
            basis[i][j] = basis[i][j] * 2
            if check_dual_basis(spec, 6, dual_basis=basis).passed:
                return Outcome(False, f"corrupted form {slot} not detected for {spec}")
            mutations += 1
    return Outcome(True, f"{len(specs)} specs, {mutations} mutations caught")


def criterion_6() -> Outcome:
    """Divergence of the basis maps, right Leibniz rule on 100 samples, preimages up to 6."""
    rng = make_rng()
    failure = _first_failure(
        (str(s), check_divergence(s, 6, samples=100, rng=rng).passed) for s in GRID)
    return failure or Outcome(True, f"{len(GRID)} specs")


def criterion_7() -> Outcome:
    """ker d is the scalars at bound 6."""
    failure = _first_failure((str(s), check_kernel_of_d(s, 6)) for s in GRID)
    return failure or Outcome(True, f"{len(GRID)} specs")


def _hopf_grid():
    yield HopfFamily.enveloping()
    for q in (2, 3, Fraction(1, 2), Fraction(5, 3), -2):
        for n in range(1, 5):
            yield HopfFamily.quantum_torus(q, n)
    for n in (2, 3, 4):
        yield HopfFamily.laurent_derivation(n)


def criterion_8() -> Outcome:
    """Smoothness pipeline and coproduct checks for the three Hopf families."""
    fams = list(_hopf_grid())
    for fam in fams:
        for check in (smoothness_pipeline(fam, 6), verify_coproduct_respects_relation(fam),
                      verify_counit(fam), verify_coassociativity(fam)):
            if not check.passed:
                return Outcome(False, f"{fam}: {check.name}: {check.counterexample}")
    return Outcome(True, f"{len(fams)} families")


_SEED_PROBE = (
    "from oresmooth.sampling import make_rng, random_element;"
    "from oresmooth import AlgebraSpec;"
    "r = make_rng(); s = AlgebraSpec.poly(2, 1, {1: 1, 0: 1});"
    "print([str(random_element(r, s)) for _ in range(20)])"
)


def _probe(seed: str) -> str:
    env = dict(os.environ, ORESMOOTH_SEED=seed)
    return subprocess.run([sys.executable, "-c", _SEED_PROBE], env=env, capture_output=True,
                          text=True, check=True).stdout


def criterion_9(elapsed: float) -> Outcome:
    """The criteria above finish within 60 s and random samples are fixed by ORESMOOTH_SEED."""
    if elapsed >= 60:
        return Outcome(False, f"criteria took {elapsed:.1f} s")
    a, b, c = _probe("11"), _probe("11"), _probe("12")
    if a != b:
        return Outcome(False, "same seed gave different samples")
    if a == c:
        return Outcome(False, "seed has no effect on samples")
    return Outcome(True, f"criteria 1-8 in {elapsed:.1f} s; seeded runs reproducible")


RUNNERS = [criterion_1, criterion_2, criterion_3, criterion_4, criterion_5, criterion_6, criterion_7,
           criterion_8]

_elapsed = {}


def _report(number: int, outcome: Outcome):
    print(f"criterion {number}: {'PASS' if outcome else 'FAIL'} ({outcome.detail})")


@pytest.mark.parametrize("number", range(1, 9))
def test_criterion(number, request):
    request.node.user_properties.append(("criterion", number))
    start = time.perf_counter()
    outcome = RUNNERS[number - 1]()
    _elapsed[number] = time.perf_counter() - start
    _report(number, outcome)
    assert outcome, outcome.detail


@pytest.mark.criterion(9)
def test_criterion_9():
    outcome = criterion_9(sum(_elapsed.values()))
    _report(9, outcome)
    assert outcome, outcome.detail


def main() -> int:
    failed = 0
    total = 0.0
    for number, runner in enumerate(RUNNERS, start=1):
        start = time.perf_counter()
        outcome = runner()
        total += time.perf_counter() - start
        _report(number, outcome)
        failed += not outcome
    outcome = criterion_9(total)
    _report(9, outcome)
    failed += not outcome
    return 1 if failed else 0


if __name__ == "__main__":
    sys.path.insert(0, str(Path(__file__).parent))
    sys.exit(main())

from fractions import Fraction

import pytest

from oresmooth import (
    AlgebraSpec,
    BaseKind,
    BasePoly,
    NonInvertibleImage,
    OreElement,
    SpecMismatch,
    add,
    normalize_product,
    scalar_mul,
)
from oresmooth.ore import apply_endo
from oresmooth.parsing import parse_element
from oresmooth.sampling import random_element
from oracles import WordAlgebra

ADMISSIBLE = [
    AlgebraSpec.poly(1, 0, {5: 1, 1: 1}),
    AlgebraSpec.poly(1, 2, {0: -3}),
    AlgebraSpec.poly(3, 6, {1: 5, 0: 15}),
    AlgebraSpec.poly(Fraction(1, 2), 0, {1: -1}),
    AlgebraSpec.laurent(1, "+", {3: 1, -1: 2}),
    AlgebraSpec.laurent(3, "+", {1: Fraction(2, 3)}),
    AlgebraSpec.laurent(2, "-", {1: 1, -1: -2}),
    AlgebraSpec.laurent(Fraction(1, 2), "-", {1: -2, -1: 1}),
]
GENERIC = [
    AlgebraSpec.poly(2, 1, {3: 1, 0: -1}),
    AlgebraSpec.laurent(-3, "+", {2: 1, -3: 4}),
    AlgebraSpec.laurent(5, "-", {0: 1, 2: -1}),
]


@pytest.mark.parametrize("q,r,p", [(2, 1, {2: 1}), (Fraction(1, 3), -2, {0: 4, 1: 1}), (1, 0, {})])
def test_defining_relation(q, r, p):
    spec = AlgebraSpec.poly(q, r, p)
    expected = spec.monomial(1, 1, q) + spec.monomial(0, 1, r) + spec.from_base(spec.p)
    assert normalize_product(spec.y, spec.x) == expected


def test_y_times_x_squared():
    spec = AlgebraSpec.poly(2, 0, 0)
    assert spec.y * spec.x ** 2 == spec.monomial(2, 1, 4)


def test_laurent_minus_relation():
    q, c = Fraction(3), Fraction(-2)
    spec = AlgebraSpec.laurent(q, "-", {1: c, -1: -c * q})
    expected = spec.monomial(-1, 1, q) + spec.monomial(1, 0, c) + spec.monomial(-1, 0, -c * q)
    assert spec.y * spec.x == expected


def test_unit_add_scalar():
    spec = AlgebraSpec.poly(2, 1, {1: 1})
    x, y = spec.x, spec.y
    a = x * y + 3 * y
    assert spec.one * a == a == a * spec.one
    assert add(x * y + y, -(x * y)) == y
    assert scalar_mul(0, a).is_zero()
    assert scalar_mul(2, x + y) == 2 * x + 2 * y


def test_spec_mismatch():
    a, b = AlgebraSpec.poly(2), AlgebraSpec.poly(3)
    with pytest.raises(SpecMismatch):
        a.x * b.y
    with pytest.raises(SpecMismatch):
        a.x + b.y


def test_normal_form_invariants():
    spec = AlgebraSpec.poly(2)
    e = OreElement({(1, 1): 0, (2, 0): 3}, spec)
    assert e.terms == {(2, 0): 3}
    with pytest.raises(Exception):
        OreElement({(-1, 0): 1}, spec)
    with pytest.raises(Exception):
        OreElement({(0, -1): 1}, AlgebraSpec.laurent(2))


@pytest.mark.parametrize("spec", ADMISSIBLE + GENERIC, ids=str)
def test_products_match_word_rewriting(spec, rng):
    words = WordAlgebra(spec)
    for _ in range(40):
        a = random_element(rng, spec, 3, 3)
        b = random_element(rng, spec, 3, 3)
        assert a * b == words.multiply(a, b), (a, b)


@pytest.mark.parametrize("spec", ADMISSIBLE + GENERIC, ids=str)
def test_associativity_and_degree(spec, rng):
    for _ in range(100):
        a, b, c = (random_element(rng, spec, 3, 3) for _ in range(3))
        assert (a * b) * c == a * (b * c)
        assert (a * b).y_degree() == a.y_degree() + b.y_degree()


@pytest.mark.parametrize("spec", ADMISSIBLE + GENERIC, ids=str)
def test_confluence_smoke(spec):
    x, y = spec.x, spec.y
    assert normalize_product(y, normalize_product(y, x)) == normalize_product(normalize_product(y, y), x)
    if spec.is_laurent:
        assert x * x ** -1 == spec.one == x ** -1 * x
        # y x^-1 is forced by multiplying the relation by x^-1 on both sides
        assert (y * x ** -1) * x == y


def test_printing():
    spec = AlgebraSpec.laurent(2, "-", {1: 1, -1: -2})
    assert str(spec.y * spec.x) == "2*x^-1*y + x - 2*x^-1"
    poly = AlgebraSpec.poly(2)
    assert str(poly.zero) == "0"
    e = poly.monomial(2, 1, 3) - poly.monomial(0, 3, Fraction(1, 2)) - poly.one
    assert str(e) == "-1/2*y^3 + 3*x^2*y - 1"
    assert str(AlgebraSpec.laurent(2).monomial(-1, 3, Fraction(-1, 2))) == "-1/2*x^-1*y^3"


@pytest.mark.parametrize("spec", ADMISSIBLE + GENERIC, ids=str)
def test_print_parse_round_trip(spec, rng):
    for _ in range(200):
        e = random_element(rng, spec, 4, 4)
        assert parse_element(str(e), spec) == e


def test_apply_endo_examples():
    spec = AlgebraSpec.poly(1, 0, {2: 1})
    x, y = spec.x, spec.y
    a = x ** 2 * y - 3 * y ** 2
    assert apply_endo((x, y), a) == a
    dp = spec.from_base(spec.p.derivative())
    assert apply_endo((x, y + dp), y) == y + dp
    q = Fraction(3)
    lm = AlgebraSpec.laurent(q, "-", {1: 1, -1: -q})
    assert apply_endo((lm.monomial(-1, 0, q), lm.y), lm.x ** 2) == lm.monomial(-2, 0, q ** 2)


def test_apply_endo_needs_unit():
    spec = AlgebraSpec.laurent(1, "+", {})
    with pytest.raises(NonInvertibleImage):
        apply_endo((spec.x + 1, spec.y), spec.x ** -1)


def test_powers():
    spec = AlgebraSpec.laurent(2)
    assert spec.x ** -3 == spec.monomial(-3, 0)
    with pytest.raises(Exception):
        spec.y ** -1
    assert AlgebraSpec.poly(2).y ** 0 == AlgebraSpec.poly(2).one


def test_spec_text():
    assert str(AlgebraSpec.poly(3, 6, {1: 5, 0: 15})) == "A[3,6;5*x + 15]"
    assert str(AlgebraSpec.laurent(2, "-", {})) == "A[2,-;0]"
    with pytest.raises(Exception):
        AlgebraSpec.laurent(0)
    with pytest.raises(Exception):
        AlgebraSpec.poly(1, 0, BasePoly({-1: 1}, BaseKind.LAURENT))

"""The three pointed Hopf algebra families of GK dimension two and their coproduct checks.

    a: A[1,0;x]        x, y primitive
    b: A[q,+;0]        x grouplike, Delta(y) = y(x)1 + x^n(x)y
    c: A[1,+;x^n - x]  x grouplike, Delta(y) = y(x)x^(n-1) + 1(x)y
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .basering import BaseKind, BasePoly, format_terms
from .calculus import (
    check_commutation,
    check_divergence,
    check_dual_basis,
    check_relation_compatibility,
    check_volume_relation,
    kernel_of_d_report,
)
from .errors import NotAdmissibleSpec
from .morphisms import build_nu_pair, classify
from .ore import AlgebraSpec, OreElement
from .reports import CheckReport, combine
from .scalar import as_scalar, format_scalar
from .sampling import monomials


@dataclass(frozen=True)
class HopfFamily:
    kind: str
    q: Fraction = Fraction(1)
    n: int = 1

    def __post_init__(self):
        if self.kind not in ("a", "b", "c"):
            raise ValueError(f"family must be 'a', 'b' or 'c', got {self.kind!r}")
        object.__setattr__(self, "q", as_scalar(self.q))
        if self.n < 1:
            raise ValueError("n must be a positive integer")
        if self.kind == "b" and self.q in (0, 1):
            raise ValueError("family b needs q != 0, 1")

    @classmethod
    def enveloping(cls):
        return cls("a")

    @classmethod
    def quantum_torus(cls, q, n):
        return cls("b", q, n)

    @classmethod
    def laurent_derivation(cls, n):
        return cls("c", 1, n)

    @property
    def spec(self) -> AlgebraSpec:
        if self.kind == "a":
            return AlgebraSpec.poly(1, 0, {1: 1})
        if self.kind == "b":
            return AlgebraSpec.laurent(self.q, "+", 0)
        return AlgebraSpec.laurent(1, "+", BasePoly({self.n: 1, 1: -1}, BaseKind.LAURENT))

    @property
    def x_counit(self) -> Fraction:
        return Fraction(0) if self.kind == "a" else Fraction(1)

    def __str__(self):
        if self.kind == "a":
            return "a: A[1,0;x]"
        if self.kind == "b":
            return f"b: A[{format_scalar(self.q)},+;0], n={self.n}"
        return f"c: A[1,+;x^{self.n} - x], n={self.n}"


class TensorElement:
    """``sum c * m_1 (x) ... (x) m_r`` with each ``m_i = (k, l)`` a normal-form monomial.

    Multiplication is factorwise, with no signs.
    """

    __slots__ = ("terms", "spec", "arity")

    def __init__(self, terms, spec: AlgebraSpec, arity: int = 2):
        self.terms = {key: c for key, c in dict(terms).items() if c != 0}
        self.spec = spec
        self.arity = arity

    @classmethod
    def pure(cls, *factors: OreElement) -> "TensorElement":
        spec = factors[0].spec
        out = {}
        for combo in itertools.product(*(f.terms.items() for f in factors)):
            key = tuple(m for m, _ in combo)
            c = Fraction(1)
            for _, v in combo:
                c *= v
            out[key] = out.get(key, 0) + c
        return cls(out, spec, len(factors))

    @classmethod
    def unit(cls, spec: AlgebraSpec, arity: int = 2):
        return cls({((0, 0),) * arity: Fraction(1)}, spec, arity)

    def is_zero(self):
        return not self.terms

    def __add__(self, other):
        out = dict(self.terms)
        for key, c in other.terms.items():
            out[key] = out.get(key, 0) + c
        return TensorElement(out, self.spec, self.arity)

    def __neg__(self):
        return TensorElement({k: -c for k, c in self.terms.items()}, self.spec, self.arity)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return TensorElement({k: c * other for k, c in self.terms.items()}, self.spec, self.arity)
        if not isinstance(other, TensorElement):
            return NotImplemented
        spec = self.spec
        out = {}
        for ka, ca in self.terms.items():
            for kb, cb in other.terms.items():
                legs = [
                    (spec.monomial(*ma) * spec.monomial(*mb)).terms.items()
                    for ma, mb in zip(ka, kb)
                ]
                base = ca * cb
                for combo in itertools.product(*legs):
                    key = tuple(m for m, _ in combo)
                    c = base
                    for _, v in combo:
                        c *= v
                    out[key] = out.get(key, 0) + c
        return TensorElement(out, spec, self.arity)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self * other
        return NotImplemented

    def __pow__(self, n: int):
        result = TensorElement.unit(self.spec, self.arity)
        for _ in range(n):
            result = result * self
        return result

    def __eq__(self, other):
        if not isinstance(other, TensorElement):
            return NotImplemented
        return self.arity == other.arity and self.terms == other.terms

    __hash__ = None

    def __str__(self):
        if not self.terms:
            return "0"
        spec = self.spec
        return format_terms(
            (c, " (x) ".join(str(spec.monomial(k, l)) for k, l in key))
            for key, c in sorted(self.terms.items())
        )


def _delta_generators(fam: HopfFamily, delta_y: TensorElement | None = None):
    spec = fam.spec
    x, y, one = spec.x, spec.y, spec.one
    if fam.kind == "a":
        dx = TensorElement.pure(x, one) + TensorElement.pure(one, x)
        dy = TensorElement.pure(y, one) + TensorElement.pure(one, y)
        dxi = None
    elif fam.kind == "b":
        dx = TensorElement.pure(x, x)
        dy = TensorElement.pure(y, one) + TensorElement.pure(x ** fam.n, y)
        dxi = TensorElement.pure(x ** -1, x ** -1)
    else:
        dx = TensorElement.pure(x, x)
        dy = TensorElement.pure(y, x ** (fam.n - 1)) + TensorElement.pure(one, y)
        dxi = TensorElement.pure(x ** -1, x ** -1)
    if delta_y is not None:
        dy = delta_y
    return dx, dy, dxi


def coproduct(fam: HopfFamily, a: OreElement, delta_y: TensorElement | None = None) -> TensorElement:
    """Delta extended multiplicatively to normal-form monomials and linearly to sums."""
    dx, dy, dxi = _delta_generators(fam, delta_y)
    spec = fam.spec
    xp, yp = {}, {}

    def xpow(k):
        if k not in xp:
            xp[k] = dx ** k if k >= 0 else dxi ** (-k)
        return xp[k]

    def ypow(l):
        if l not in yp:
            yp[l] = dy ** l
        return yp[l]

    out = TensorElement({}, spec, 2)
    for (k, l), c in a.terms.items():
        out = out + (xpow(k) * ypow(l)) * c
    return out


def counit_monomial(fam: HopfFamily, k: int, l: int) -> Fraction:
    """epsilon(x^k y^l) with epsilon(y) = 0 and epsilon(x) = 0 or 1."""
    if l:
        return Fraction(0)
    if k == 0:
        return Fraction(1)
    return fam.x_counit ** k if fam.x_counit else Fraction(0)


def counit(fam: HopfFamily, a: OreElement) -> Fraction:
    return sum((c * counit_monomial(fam, k, l) for (k, l), c in a.terms.items()), Fraction(0))


def apply_counit_leg(fam: HopfFamily, t: TensorElement, leg: int) -> OreElement:
    """Contract one leg of a two-fold tensor with the counit."""
    spec = fam.spec
    out = {}
    for key, c in t.terms.items():
        e = counit_monomial(fam, *key[leg])
        if e:
            other = key[1 - leg]
            out[other] = out.get(other, 0) + c * e
    return OreElement(out, spec)


def apply_coproduct_leg(fam: HopfFamily, t: TensorElement, leg: int) -> TensorElement:
    """Replace leg ``leg`` of ``t`` by its coproduct, raising the arity by one."""
    spec = fam.spec
    out = TensorElement({}, spec, t.arity + 1)
    for key, c in t.terms.items():
        split = coproduct(fam, spec.monomial(*key[leg]))
        acc = {}
        for skey, sc in split.terms.items():
            new = key[:leg] + skey + key[leg + 1:]
            acc[new] = acc.get(new, 0) + c * sc
        out = out + TensorElement(acc, spec, t.arity + 1)
    return out


def relation_obstruction(fam: HopfFamily, delta_y: TensorElement | None = None) -> TensorElement:
    """Delta(y)Delta(x) - [Delta(sigma(x))Delta(y) + Delta(p)]; zero iff Delta respects the relation."""
    spec = fam.spec
    dx, dy, _ = _delta_generators(fam, delta_y)
    unit = TensorElement.unit(spec)
    sigma_x = dx * spec.q + unit * spec.r
    dp = coproduct(fam, spec.from_base(spec.p))
    return dy * dx - (sigma_x * dy + dp)


def verify_coproduct_respects_relation(fam: HopfFamily, delta_y: TensorElement | None = None) -> CheckReport:
    spec = fam.spec
    obstruction = relation_obstruction(fam, delta_y)
    details = {"obstruction": str(obstruction)}
    passed = obstruction.is_zero()
    counter = None if passed else f"obstruction {obstruction}"
    if spec.is_laurent:
        dx, _, dxi = _delta_generators(fam, delta_y)
        unit = TensorElement.unit(spec)
        inv_ok = dx * dxi == unit and dxi * dx == unit
        details["inverse"] = inv_ok
        if not inv_ok and passed:
            passed, counter = False, "Delta(x) Delta(x^-1) != 1(x)1"
    return CheckReport("hopf-relation", str(fam), passed, None, counter, details)


def verify_counit(fam: HopfFamily, degree: int = 3) -> CheckReport:
    spec = fam.spec
    gens = [spec.x, spec.y]
    if spec.is_laurent:
        gens.append(spec.x ** -1)
    samples = gens + [spec.monomial(k, l) for k, l in monomials(spec, degree)]
    for g in samples:
        t = coproduct(fam, g)
        for leg in (0, 1):
            if apply_counit_leg(fam, t, leg) != g:
                return CheckReport("hopf-counit", str(fam), False, degree, f"leg {leg} on {g}")
    # epsilon must kill the defining relation too
    rel = spec.y * spec.x - spec.from_base(spec.sigma.image_of_x(spec.base_kind)) * spec.y - spec.from_base(spec.p)
    lhs = counit_monomial(fam, 0, 1) * counit_monomial(fam, 1, 0)
    rhs = (counit(fam, spec.from_base(spec.sigma.image_of_x(spec.base_kind))) * counit_monomial(fam, 0, 1)
           + counit(fam, spec.from_base(spec.p)))
    if lhs != rhs:
        return CheckReport("hopf-counit", str(fam), False, degree, f"counit does not kill {rel}")
    return CheckReport("hopf-counit", str(fam), True, degree)


def verify_coassociativity(fam: HopfFamily) -> CheckReport:
    spec = fam.spec
    gens = [spec.x, spec.y]
    if spec.is_laurent:
        gens.append(spec.x ** -1)
    for g in gens:
        t = coproduct(fam, g)
        if apply_coproduct_leg(fam, t, 0) != apply_coproduct_leg(fam, t, 1):
            return CheckReport("hopf-coassociativity", str(fam), False, None, str(g))
    return CheckReport("hopf-coassociativity", str(fam), True)


@lru_cache(maxsize=None)
def _spec_smoothness(spec: AlgebraSpec, bound: int) -> CheckReport:
    name = str(spec)
    adm = classify(spec)
    steps = [CheckReport("admissible", name, adm.admissible, None,
                         None if adm.admissible else "NotAdmissible", adm.to_dict())]
    if not adm.admissible:
        return combine("smoothness", name, steps, bound)
    try:
        build_nu_pair(spec)
        steps.append(CheckReport("nu-pair", name, True))
    except (NotAdmissibleSpec, AssertionError) as exc:
        steps.append(CheckReport("nu-pair", name, False, None, str(exc)))
        return combine("smoothness", name, steps, bound)
    steps += [
        check_commutation(spec, bound),
        check_volume_relation(spec, bound),
        check_relation_compatibility(spec),
        check_dual_basis(spec, bound),
        kernel_of_d_report(spec, bound),
        check_divergence(spec, bound, samples=20),
    ]
    return combine("smoothness", name, steps, bound)


def smoothness_pipeline(fam: HopfFamily | AlgebraSpec, bound: int = 6) -> CheckReport:
    """classify, build the twisting maps, then run every calculus check on the family's algebra."""
    spec = fam.spec if isinstance(fam, HopfFamily) else fam
    report = _spec_smoothness(spec, bound)
    return CheckReport(report.name, str(fam), report.passed, report.bound,
                       report.counterexample, report.details)


def verify_hopf(fam: HopfFamily, bound: int = 6) -> CheckReport:
    return combine(
        "hopf",
        str(fam),
        [
            verify_coproduct_respects_relation(fam),
            verify_counit(fam),
            verify_coassociativity(fam),
            smoothness_pipeline(fam, bound),
        ],
        bound,
    )

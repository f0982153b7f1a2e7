"""Two-dimensional differential calculus over the admissible Ore extensions.

One-forms are ``dx*a + dy*b`` with coefficients on the right; the left action
is twisted, ``a dx = dx nu_x(a)`` and ``a dy = dy nu_y(a)``.  Two-forms are
right multiples of a single volume form: ``dx^dy`` for the polynomial and
Laurent-plus bases, ``dy^dx`` for the Laurent-minus base.

Relations used for the top degree:

    polynomial / Laurent-plus:   dx^dx = dy^dy = 0,  dy^dx = -q dx^dy
    Laurent-minus:               dx^dx = dy^dy = 0,  dx^dy = q dy^dx x^-2
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from sympy import QQ
from sympy.polys.matrices import DomainMatrix

from .basering import SigmaKind
from .errors import NoPreimage, SpecMismatch
from .morphisms import build_nu_pair
from .ore import AlgebraMap, AlgebraSpec, OreElement
from .reports import CheckReport
from .sampling import make_rng, monomials, random_element


class OneForm:
    """``dx*a + dy*b``."""

    __slots__ = ("a", "b")

    def __init__(self, a: OreElement, b: OreElement):
        if a.spec != b.spec:
            raise SpecMismatch(f"{a.spec} vs {b.spec}")
        self.a = a
        self.b = b

    @property
    def spec(self) -> AlgebraSpec:
        return self.a.spec

    def is_zero(self) -> bool:
        return self.a.is_zero() and self.b.is_zero()

    def _same(self, other):
        if not isinstance(other, OneForm):
            return NotImplemented
        if other.spec != self.spec:
            raise SpecMismatch(f"{self.spec} vs {other.spec}")
        return other

    def __add__(self, other):
        if self._same(other) is NotImplemented:
            return NotImplemented
        return OneForm(self.a + other.a, self.b + other.b)

    def __neg__(self):
        return OneForm(-self.a, -self.b)

    def __sub__(self, other):
        if self._same(other) is NotImplemented:
            return NotImplemented
        return OneForm(self.a - other.a, self.b - other.b)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, OreElement)):
            return OneForm(self.a * other, self.b * other)
        if isinstance(other, OneForm):
            return wedge(self, other)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return OneForm(self.a * other, self.b * other)
        if isinstance(other, OreElement):
            return left_mul_oneform(other, self)
        return NotImplemented

    def __eq__(self, other):
        if isinstance(other, int) and other == 0:
            return self.is_zero()
        if not isinstance(other, OneForm):
            return NotImplemented
        return self.spec == other.spec and self.a == other.a and self.b == other.b

    __hash__ = None

    def __str__(self):
        parts = []
        if not self.a.is_zero():
            parts.append(f"dx*({self.a})")
        if not self.b.is_zero():
            parts.append(f"dy*({self.b})")
        return " + ".join(parts) if parts else "0"

    def __repr__(self):
        return f"OneForm({self})"


class TwoForm:
    """``vol*c`` where ``vol`` is the volume form of the calculus."""

    __slots__ = ("c",)

    def __init__(self, c: OreElement):
        self.c = c

    @property
    def spec(self) -> AlgebraSpec:
        return self.c.spec

    def is_zero(self) -> bool:
        return self.c.is_zero()

    def __add__(self, other):
        if not isinstance(other, TwoForm):
            return NotImplemented
        return TwoForm(self.c + other.c)

    def __neg__(self):
        return TwoForm(-self.c)

    def __sub__(self, other):
        if not isinstance(other, TwoForm):
            return NotImplemented
        return TwoForm(self.c - other.c)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, OreElement)):
            return TwoForm(self.c * other)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return TwoForm(self.c * other)
        if isinstance(other, OreElement):
            return TwoForm(calculus_for(other.spec).nu_omega(other) * self.c)
        return NotImplemented

    def __eq__(self, other):
        if isinstance(other, int) and other == 0:
            return self.is_zero()
        if not isinstance(other, TwoForm):
            return NotImplemented
        return self.c == other.c

    __hash__ = None

    def __str__(self):
        if self.c.is_zero():
            return "0"
        vol = "(dy*dx)" if _is_minus(self.spec) else "(dx*dy)"
        return f"{vol}*({self.c})"

    def __repr__(self):
        return f"TwoForm({self})"


@dataclass(frozen=True)
class IntegralForm1:
    """``phi_x.a + phi_y.b``: the right-module map ``dx*u + dy*v -> nu_x(a) u + nu_y(b) v``."""

    a: OreElement
    b: OreElement

    @property
    def spec(self) -> AlgebraSpec:
        return self.a.spec

    def __call__(self, w: OneForm) -> OreElement:
        return calculus_for(self.spec).evaluate(self, w)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, OreElement)):
            return IntegralForm1(self.a * other, self.b * other)
        return NotImplemented

    def __add__(self, other):
        if not isinstance(other, IntegralForm1):
            return NotImplemented
        return IntegralForm1(self.a + other.a, self.b + other.b)

    def __str__(self):
        parts = []
        if not self.a.is_zero():
            parts.append(f"phi_x*({self.a})")
        if not self.b.is_zero():
            parts.append(f"phi_y*({self.b})")
        return " + ".join(parts) if parts else "0"


def _is_minus(spec: AlgebraSpec) -> bool:
    return spec.sigma.kind is SigmaKind.LAURENT_MINUS


class Calculus:
    """All structure maps of the calculus over one admissible algebra."""

    def __init__(self, spec: AlgebraSpec):
        self.spec = spec
        self.nus = build_nu_pair(spec)
        self.minus = _is_minus(spec)
        n = self.nus
        self.mu_x, self.mu_y = n.nu_x, n.nu_y
        if self.minus:
            self.nu_omega = n.nu_x.compose(n.nu_y)
            self.nu_omega_inv = n.nu_y_inv.compose(n.nu_x_inv)
        else:
            self.nu_omega = n.nu_y.compose(n.nu_x)
            self.nu_omega_inv = n.nu_x_inv.compose(n.nu_y_inv)
        zero, one = spec.zero, spec.one
        self.dx = OneForm(one, zero)
        self.dy = OneForm(zero, one)
        self.dual_basis = default_dual_basis(spec)
        self._y_shift_pow = {0: one}
        self._cross_check_divergence()

    # degree one

    def left_mul(self, a: OreElement, w: OneForm) -> OneForm:
        return OneForm(self.mu_x(a) * w.a, self.mu_y(a) * w.b)

    def _mu_y_x_power(self, k: int) -> OreElement:
        cache = self._y_shift_pow
        if k not in cache:
            if k < 0:
                cache[k] = self.mu_y.x_image ** k
            else:
                cache[k] = self._mu_y_x_power(k - 1) * self.mu_y.x_image
        return cache[k]

    def partial_x(self, a: OreElement) -> OreElement:
        return a.spec.element({(k - 1, l): k * c for (k, l), c in a.terms.items() if k != 0})

    def partial_y(self, a: OreElement) -> OreElement:
        # x^k dy = dy nu_y(x)^k, hence d(x^k y^l) has dy-part l nu_y(x)^k y^(l-1)
        out = a.spec.zero
        for (k, l), c in a.terms.items():
            if l:
                out = out + self._mu_y_x_power(k) * a.spec.monomial(0, l - 1, l * c)
        return out

    def d(self, a: OreElement) -> OneForm:
        return OneForm(self.partial_x(a), self.partial_y(a))

    # degree two

    def wedge(self, u: OneForm, v: OneForm) -> TwoForm:
        if u.spec != v.spec:
            raise SpecMismatch(f"{u.spec} vs {v.spec}")
        if self.minus:
            x_m2 = self.spec.monomial(-2, 0, self.spec.q)
            return TwoForm(x_m2 * self.mu_y(u.a) * v.b + self.mu_x(u.b) * v.a)
        return TwoForm(self.mu_y(u.a) * v.b - self.spec.q * self.mu_x(u.b) * v.a)

    def volume_pair(self):
        """The ordered pair of one-forms whose wedge is the volume form."""
        return (self.dy, self.dx) if self.minus else (self.dx, self.dy)

    def left_mul_twoform(self, a: OreElement, w: TwoForm) -> TwoForm:
        return TwoForm(self.nu_omega(a) * w.c)

    def pi(self, w: TwoForm) -> OreElement:
        return w.c

    # integral forms

    def evaluate(self, phi: IntegralForm1, w: OneForm) -> OreElement:
        return self.mu_x(phi.a) * w.a + self.mu_y(phi.b) * w.b

    def divergence_general(self, phi: IntegralForm1, dual_basis=None) -> OreElement:
        """``-sum_i pi(d(nu_omega^-1(phi(w_i))) ^ wbar_i)`` for a dual basis ``(w_i, wbar_i)``."""
        total = self.spec.zero
        for w, wbar in dual_basis or self.dual_basis:
            g = self.nu_omega_inv(self.evaluate(phi, w))
            total = total + self.pi(self.wedge(self.d(g), wbar))
        return -total

    def divergence(self, phi: IntegralForm1) -> OreElement:
        return self.partial_x(phi.a) + self.partial_y(phi.b)

    def _cross_check_divergence(self, bound: int = 2):
        spec = self.spec
        for k, l in monomials(spec, bound):
            m = spec.monomial(k, l)
            for phi in (IntegralForm1(m, spec.zero), IntegralForm1(spec.zero, m)):
                if self.divergence(phi) != self.divergence_general(phi):
                    raise AssertionError(f"divergence formulas disagree on {phi} in {spec}")

    def divergence_preimage(self, m: OreElement) -> IntegralForm1:
        spec = self.spec
        a, b = spec.zero, spec.zero
        for (k, l), c in m.terms.items():
            if k != -1:
                a = a + spec.monomial(k + 1, l, c / (k + 1))
                continue
            unit = self.mu_y.x_image.as_unit_monomial()
            if unit is None or unit[1] == 0:
                raise NoPreimage(f"x^{k}*y^{l} in {spec}")
            s, e = unit
            j = -e
            b = b + spec.monomial(j, l + 1, c / ((l + 1) * s ** j))
        phi = IntegralForm1(a, b)
        if self.divergence(phi) != m:
            raise NoPreimage(f"{m} in {spec}")
        return phi


def default_dual_basis(spec: AlgebraSpec):
    """Pairs ``(w_i, wbar_i)`` of one-forms making the volume form integrating."""
    zero, one = spec.zero, spec.one
    dx, dy = OneForm(one, zero), OneForm(zero, one)
    q = spec.q
    if _is_minus(spec):
        return [(dx, dy), (dy, dx * spec.monomial(-2, 0, q))]
    return [(dx, dy * (-1 / q)), (dy, dx)]


@lru_cache(maxsize=None)
def calculus_for(spec: AlgebraSpec) -> Calculus:
    return Calculus(spec)


# operation-level entry points


def left_mul_oneform(a: OreElement, w: OneForm) -> OneForm:
    return calculus_for(a.spec).left_mul(a, w)


def differential(a: OreElement) -> OneForm:
    return calculus_for(a.spec).d(a)


def wedge(u: OneForm, v: OneForm) -> TwoForm:
    return calculus_for(u.spec).wedge(u, v)


def volume_automorphism(spec: AlgebraSpec) -> AlgebraMap:
    return calculus_for(spec).nu_omega


def pi_omega(w: TwoForm) -> OreElement:
    return w.c


def divergence(phi: IntegralForm1) -> OreElement:
    return calculus_for(phi.spec).divergence(phi)


def divergence_preimage(spec: AlgebraSpec, m: OreElement) -> IntegralForm1:
    return calculus_for(spec).divergence_preimage(m)


def d_word(spec: AlgebraSpec, word, coeff=1) -> OneForm:
    """Leibniz expansion of ``d(g_1 g_2 ... g_n)`` for generators 'x', 'y', 'x^-1'.

    Uses only d(x) = dx, d(y) = dy, d(x^-1) = -x^-1 dx x^-1 and the bimodule
    structure; never differentiates a normal form.
    """
    calc = calculus_for(spec)
    gens = {"x": spec.x, "y": spec.y}
    if spec.is_laurent:
        gens["x^-1"] = spec.x ** -1
    diffs = {"x": calc.dx, "y": calc.dy}
    if spec.is_laurent:
        xi = gens["x^-1"]
        diffs["x^-1"] = -(calc.left_mul(xi, calc.dx) * xi)
    total = OneForm(spec.zero, spec.zero)
    for i, g in enumerate(word):
        prefix = spec.one
        for h in word[:i]:
            prefix = prefix * gens[h]
        suffix = spec.one
        for h in word[i + 1:]:
            suffix = suffix * gens[h]
        total = total + calc.left_mul(prefix, diffs[g]) * suffix
    return total * coeff


# verification routines


def _monomial_forms(spec, bound):
    calc = calculus_for(spec)
    for k, l in monomials(spec, bound):
        m = spec.monomial(k, l)
        yield calc.dx * m
        yield calc.dy * m


def check_dual_basis(spec: AlgebraSpec, bound: int = 6, dual_basis=None) -> CheckReport:
    """Both dual-basis identities on every monomial one-form up to ``bound``.

    w = sum_i w_i pi(wbar_i ^ w)   and   w = sum_i nu_omega^-1(pi(w ^ w_i)) wbar_i
    """
    calc = calculus_for(spec)
    basis = dual_basis if dual_basis is not None else calc.dual_basis
    failures = []
    checked = 0
    for w in _monomial_forms(spec, bound):
        first = OneForm(spec.zero, spec.zero)
        second = OneForm(spec.zero, spec.zero)
        for wi, wbar in basis:
            first = first + wi * calc.pi(calc.wedge(wbar, w))
            second = second + calc.left_mul(calc.nu_omega_inv(calc.pi(calc.wedge(w, wi))), wbar)
        checked += 1
        if first != w:
            failures.append(f"first identity fails at {w}: got {first}")
        if second != w:
            failures.append(f"second identity fails at {w}: got {second}")
    return CheckReport(
        "dual-basis",
        str(spec),
        not failures,
        bound,
        failures[0] if failures else None,
        {"forms_checked": checked, "failures": len(failures)},
    )


def check_kernel_of_d(spec: AlgebraSpec, bound: int = 6) -> bool:
    return kernel_of_d_report(spec, bound).passed


def kernel_of_d_report(spec: AlgebraSpec, bound: int = 6) -> CheckReport:
    """Exact null space of (partial_x, partial_y) on monomials up to ``bound``."""
    calc = calculus_for(spec)
    cols = monomials(spec, bound)
    images = [calc.d(spec.monomial(k, l)) for k, l in cols]
    rows = {}
    for w in images:
        for part, elem in (("dx", w.a), ("dy", w.b)):
            for key in elem.terms:
                rows.setdefault((part, key), len(rows))
    mat = [[QQ(0)] * len(cols) for _ in range(len(rows))]
    for j, w in enumerate(images):
        for part, elem in (("dx", w.a), ("dy", w.b)):
            for key, c in elem.terms.items():
                mat[rows[(part, key)]][j] = QQ(c.numerator, c.denominator)
    if not rows:
        mat = [[QQ(0)] * len(cols)]
    dm = DomainMatrix(mat, (len(mat), len(cols)), QQ)
    null = dm.nullspace().to_Matrix()
    unit = cols.index((0, 0))
    ok = null.rows == 1 and all(null[0, j] == 0 for j in range(len(cols)) if j != unit)
    counter = None
    if not ok:
        vecs = []
        for i in range(null.rows):
            vecs.append(" + ".join(f"{null[i, j]}*x^{cols[j][0]}*y^{cols[j][1]}"
                                   for j in range(len(cols)) if null[i, j] != 0))
        counter = "; ".join(vecs)
    return CheckReport("kernel-d", str(spec), ok, bound, counter,
                       {"monomials": len(cols), "kernel_dimension": null.rows})


def check_commutation(spec: AlgebraSpec, bound: int = 8) -> CheckReport:
    """nu_y nu_x = nu_x nu_y (polynomial/Laurent-plus) or
    nu_y nu_x(a) x^2 = x^2 nu_x nu_y(a) (Laurent-minus) on monomials."""
    calc = calculus_for(spec)
    nx, ny = calc.nus.nu_x, calc.nus.nu_y
    x2 = spec.x ** 2
    for k, l in monomials(spec, bound):
        a = spec.monomial(k, l)
        lhs, rhs = ny(nx(a)), nx(ny(a))
        if calc.minus:
            lhs, rhs = lhs * x2, x2 * rhs
        if lhs != rhs:
            return CheckReport("commutation", str(spec), False, bound, f"x^{k}*y^{l}")
    return CheckReport("commutation", str(spec), True, bound)


def check_volume_relation(spec: AlgebraSpec, bound: int = 8) -> CheckReport:
    """a.vol computed by pushing a through the wedge equals vol.nu_omega(a)."""
    calc = calculus_for(spec)
    first, second = calc.volume_pair()
    vol = calc.wedge(first, second)
    if vol.c != spec.one:
        return CheckReport("volume", str(spec), False, bound, f"volume pair wedges to {vol}")
    for k, l in monomials(spec, bound):
        a = spec.monomial(k, l)
        pushed = calc.wedge(calc.left_mul(a, first), second)
        if pushed != calc.left_mul_twoform(a, vol):
            return CheckReport("volume", str(spec), False, bound, f"x^{k}*y^{l}")
    return CheckReport("volume", str(spec), True, bound)


def relation_words(spec: AlgebraSpec):
    """The defining relation as two weighted lists of generator words (lhs, rhs)."""
    def x_word(e):
        return ["x"] * e if e >= 0 else ["x^-1"] * (-e)

    lhs = [(1, ["y", "x"])]
    rhs = []
    for e, c in spec.sigma.image_of_x(spec.base_kind).items():
        rhs.append((c, x_word(e) + ["y"]))
    for e, c in spec.p.items():
        rhs.append((c, x_word(e)))
    return lhs, rhs


def check_relation_compatibility(spec: AlgebraSpec) -> CheckReport:
    """d applied through Leibniz to both sides of the defining relation agrees."""
    zero = OneForm(spec.zero, spec.zero)
    lhs_words, rhs_words = relation_words(spec)
    lhs = sum((d_word(spec, w, c) for c, w in lhs_words), zero)
    rhs = sum((d_word(spec, w, c) for c, w in rhs_words), zero)
    normal = differential(spec.y * spec.x)
    if lhs != rhs:
        return CheckReport("relation-leibniz", str(spec), False, None, f"{lhs}  !=  {rhs}")
    if lhs != normal:
        return CheckReport("relation-leibniz", str(spec), False, None, f"{lhs}  !=  d(yx) = {normal}")
    return CheckReport("relation-leibniz", str(spec), True, None, details={"d(yx)": str(lhs)})


def check_leibniz(spec: AlgebraSpec, samples: int = 200, degree: int = 4,
                  rng: random.Random | None = None) -> CheckReport:
    calc = calculus_for(spec)
    rng = rng or make_rng()
    for _ in range(samples):
        a = random_element(rng, spec, degree, 3)
        b = random_element(rng, spec, degree, 3)
        if calc.d(a * b) != calc.d(a) * b + calc.left_mul(a, calc.d(b)):
            return CheckReport("leibniz", str(spec), False, degree, f"a = {a}, b = {b}")
    return CheckReport("leibniz", str(spec), True, degree, details={"samples": samples})


def check_wedge_balanced(spec: AlgebraSpec, samples: int = 50, degree: int = 3,
                         rng: random.Random | None = None) -> CheckReport:
    """(u a)^v = u^(a v) and (a u)^v = a (u^v) on random data."""
    calc = calculus_for(spec)
    rng = rng or make_rng()
    for _ in range(samples):
        u = OneForm(random_element(rng, spec, degree, 2), random_element(rng, spec, degree, 2))
        v = OneForm(random_element(rng, spec, degree, 2), random_element(rng, spec, degree, 2))
        a = random_element(rng, spec, degree, 2)
        if calc.wedge(u * a, v) != calc.wedge(u, calc.left_mul(a, v)):
            return CheckReport("wedge-balanced", str(spec), False, degree, f"u={u}, a={a}, v={v}")
        if calc.wedge(calc.left_mul(a, u), v) != calc.left_mul_twoform(a, calc.wedge(u, v)):
            return CheckReport("wedge-left", str(spec), False, degree, f"u={u}, a={a}, v={v}")
    return CheckReport("wedge-balanced", str(spec), True, degree, details={"samples": samples})


def check_divergence(spec: AlgebraSpec, bound: int = 6, samples: int = 100,
                     rng: random.Random | None = None) -> CheckReport:
    """Divergence of the basis maps, the right Leibniz rule, and surjectivity."""
    calc = calculus_for(spec)
    rng = rng or make_rng()
    zero, one = spec.zero, spec.one
    phi_x, phi_y = IntegralForm1(one, zero), IntegralForm1(zero, one)
    name = "divergence"
    for label, phi in (("phi_x", phi_x), ("phi_y", phi_y)):
        val = calc.divergence_general(phi)
        if not val.is_zero():
            return CheckReport(name, str(spec), False, bound, f"div({label}) = {val}")
    for _ in range(samples):
        phi = IntegralForm1(random_element(rng, spec, 3, 2), random_element(rng, spec, 3, 2))
        a = random_element(rng, spec, 3, 2)
        lhs = calc.divergence_general(phi * a)
        rhs = calc.divergence_general(phi) * a + phi(calc.d(a))
        if lhs != rhs:
            return CheckReport(name, str(spec), False, bound, f"Leibniz fails: phi={phi}, a={a}")
        if lhs != calc.divergence(phi * a):
            return CheckReport(name, str(spec), False, bound, f"closed form differs: phi={phi}, a={a}")
    for k, l in monomials(spec, bound):
        m = spec.monomial(k, l)
        pre = calc.divergence_preimage(m)
        if calc.divergence_general(pre) != m:
            return CheckReport(name, str(spec), False, bound, f"no preimage for x^{k}*y^{l}")
    return CheckReport(name, str(spec), True, bound,
                       details={"samples": samples, "integral": "0 (divergence is onto)"})

"""The commutative base rings K[x] and K[x, x^-1], their automorphisms and twisted derivations."""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction

from .errors import IncompatibleBaseRing
from .scalar import ONE, ZERO, as_scalar, format_scalar


class BaseKind(str, enum.Enum):
    POLY = "poly"
    LAURENT = "laurent"


def format_terms(terms) -> str:
    """Join ``(coeff, monomial_text)`` pairs into ``2*x - 1/2*x^-1`` style text.

    An empty monomial text stands for the unit.
    """
    out = []
    for coeff, mono in terms:
        sign = "-" if coeff < 0 else "+"
        mag = -coeff if coeff < 0 else coeff
        if mono == "":
            body = format_scalar(mag)
        elif mag == 1:
            body = mono
        else:
            body = f"{format_scalar(mag)}*{mono}"
        if not out:
            out.append(("-" if sign == "-" else "") + body)
        else:
            out.append(f" {sign} {body}")
    return "".join(out) if out else "0"


def x_power_text(k: int) -> str:
    if k == 0:
        return ""
    if k == 1:
        return "x"
    return f"x^{k}"


class BasePoly:
    """An element of K[x] (kind POLY) or K[x, x^-1] (kind LAURENT).

    Stored as a map from integer exponent to nonzero rational coefficient.
    Instances are immutable.
    """

    __slots__ = ("_coeffs", "kind", "_hash")

    def __init__(self, coeffs=None, kind: BaseKind = BaseKind.POLY):
        kind = BaseKind(kind)
        clean = {}
        for k, c in (coeffs or {}).items():
            c = as_scalar(c)
            if c != 0:
                if kind is BaseKind.POLY and k < 0:
                    raise IncompatibleBaseRing(f"x^{k} is not in K[x]")
                clean[int(k)] = c
        object.__setattr__(self, "_coeffs", clean)
        object.__setattr__(self, "kind", kind)
        object.__setattr__(self, "_hash", None)

    @classmethod
    def _trusted(cls, coeffs: dict, kind: BaseKind) -> "BasePoly":
        """Build from already-valid Fraction coefficients, dropping zeros only."""
        obj = object.__new__(cls)
        object.__setattr__(obj, "_coeffs", {k: c for k, c in coeffs.items() if c})
        object.__setattr__(obj, "kind", kind)
        object.__setattr__(obj, "_hash", None)
        return obj

    def __setattr__(self, name, value):
        raise AttributeError("BasePoly is immutable")

    # construction helpers

    @classmethod
    def zero(cls, kind=BaseKind.POLY):
        return cls({}, kind)

    @classmethod
    def const(cls, c, kind=BaseKind.POLY):
        return cls({0: c}, kind)

    @classmethod
    def monomial(cls, k: int, c=ONE, kind=BaseKind.POLY):
        return cls({k: c}, kind)

    @classmethod
    def gen(cls, kind=BaseKind.POLY):
        return cls({1: ONE}, kind)

    # inspection

    def items(self):
        return self._coeffs.items()

    def coeff(self, k: int) -> Fraction:
        return self._coeffs.get(k, Fraction(0))

    def exponents(self):
        return sorted(self._coeffs)

    def is_zero(self) -> bool:
        return not self._coeffs

    def is_constant(self) -> bool:
        return all(k == 0 for k in self._coeffs)

    def degree(self):
        """Top exponent, or None for zero."""
        return max(self._coeffs) if self._coeffs else None

    def valuation(self):
        return min(self._coeffs) if self._coeffs else None

    def as_unit_monomial(self):
        """Return ``(c, k)`` when this is a unit ``c*x^k`` of its ring, else None."""
        if len(self._coeffs) != 1:
            return None
        (k, c), = self._coeffs.items()
        if k != 0 and self.kind is BaseKind.POLY:
            return None
        return c, k

    # arithmetic

    def _check(self, other):
        if isinstance(other, (int, Fraction)):
            return BasePoly.const(other, self.kind)
        if not isinstance(other, BasePoly):
            return NotImplemented
        return other

    def _result_kind(self, other):
        # K[x] sits inside K[x, x^-1]
        if BaseKind.LAURENT in (self.kind, other.kind):
            return BaseKind.LAURENT
        return BaseKind.POLY

    def __add__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        out = dict(self._coeffs)
        for k, c in other._coeffs.items():
            out[k] = out.get(k, 0) + c
        return BasePoly(out, self._result_kind(other))

    __radd__ = __add__

    def __neg__(self):
        return BasePoly({k: -c for k, c in self._coeffs.items()}, self.kind)

    def __sub__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return BasePoly({k: c * other for k, c in self._coeffs.items()}, self.kind)
        other = self._check(other)
        if other is NotImplemented:
            return other
        out = {}
        for i, a in self._coeffs.items():
            for j, b in other._coeffs.items():
                out[i + j] = out.get(i + j, ZERO) + a * b
        return BasePoly._trusted(out, self._result_kind(other))

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self * other
        return NotImplemented

    def __pow__(self, n: int):
        if n < 0:
            unit = self.as_unit_monomial()
            if unit is None or self.kind is not BaseKind.LAURENT:
                raise IncompatibleBaseRing(f"({self})^{n} is not in the base ring")
            c, k = unit
            return BasePoly({k * n: c ** n}, self.kind)
        result = BasePoly.const(ONE, self.kind)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = BasePoly.const(other, self.kind)
        if not isinstance(other, BasePoly):
            return NotImplemented
        return self._coeffs == other._coeffs

    def __hash__(self):
        h = self._hash
        if h is None:
            h = hash(frozenset(self._coeffs.items()))
            object.__setattr__(self, "_hash", h)
        return h

    def to_kind(self, kind) -> "BasePoly":
        return BasePoly(self._coeffs, kind)

    def substitute(self, g: "BasePoly") -> "BasePoly":
        """Return f(g): replace x by ``g`` and expand."""
        result = BasePoly.zero(g.kind)
        if self.is_zero():
            return result
        lo, hi = self.valuation(), self.degree()
        pos = {}
        if hi > 0:
            cur = BasePoly.const(ONE, g.kind)
            for k in range(1, hi + 1):
                cur = cur * g
                pos[k] = cur
        if lo < 0:
            ginv = g ** -1
            cur = BasePoly.const(ONE, g.kind)
            for k in range(-1, lo - 1, -1):
                cur = cur * ginv
                pos[k] = cur
        for k, c in self._coeffs.items():
            result = result + (BasePoly.const(c, g.kind) if k == 0 else pos[k] * c)
        return result

    def derivative(self) -> "BasePoly":
        return BasePoly({k - 1: k * c for k, c in self._coeffs.items() if k != 0}, self.kind)

    def divmod(self, divisor: "BasePoly"):
        """Long division in K[x]; returns (quotient, remainder)."""
        if divisor.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        if self.kind is BaseKind.LAURENT or divisor.kind is BaseKind.LAURENT:
            raise IncompatibleBaseRing("long division is only defined in K[x]")
        rem = dict(self._coeffs)
        dd = divisor.degree()
        lead = divisor.coeff(dd)
        quot = {}
        while rem and max(rem) >= dd:
            top = max(rem)
            factor = rem[top] / lead
            quot[top - dd] = factor
            for k, c in divisor._coeffs.items():
                e = k + top - dd
                v = rem.get(e, 0) - factor * c
                if v == 0:
                    rem.pop(e, None)
                else:
                    rem[e] = v
        return BasePoly(quot, BaseKind.POLY), BasePoly(rem, BaseKind.POLY)

    def __str__(self):
        return format_terms(
            (self._coeffs[k], x_power_text(k)) for k in sorted(self._coeffs, reverse=True)
        )

    def __repr__(self):
        return f"BasePoly({self}, {self.kind.value})"


class SigmaKind(str, enum.Enum):
    AFFINE = "affine"
    LAURENT_PLUS = "laurent+"
    LAURENT_MINUS = "laurent-"


@dataclass(frozen=True)
class SigmaSpec:
    """An automorphism of the base ring: x -> qx + r, x -> qx, or x -> q/x."""

    kind: SigmaKind
    q: Fraction
    r: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "kind", SigmaKind(self.kind))
        object.__setattr__(self, "q", as_scalar(self.q))
        object.__setattr__(self, "r", as_scalar(self.r))
        if self.q == 0:
            raise ValueError("q must be nonzero")
        if self.kind is not SigmaKind.AFFINE and self.r != 0:
            raise ValueError("Laurent automorphisms carry no translation")

    @classmethod
    def affine(cls, q, r=0):
        return cls(SigmaKind.AFFINE, q, r)

    @classmethod
    def laurent_plus(cls, q):
        return cls(SigmaKind.LAURENT_PLUS, q)

    @classmethod
    def laurent_minus(cls, q):
        return cls(SigmaKind.LAURENT_MINUS, q)

    def is_identity(self) -> bool:
        return self.kind is not SigmaKind.LAURENT_MINUS and self.q == 1 and self.r == 0

    def check_ring(self, kind: BaseKind):
        kind = BaseKind(kind)
        if self.kind is not SigmaKind.AFFINE and kind is not BaseKind.LAURENT:
            raise IncompatibleBaseRing(f"{self.kind.value} automorphism needs K[x, x^-1]")
        if self.kind is SigmaKind.AFFINE and self.r != 0 and kind is BaseKind.LAURENT:
            raise IncompatibleBaseRing("x -> qx + r with r != 0 does not preserve K[x, x^-1]")

    def image_of_x(self, kind: BaseKind) -> BasePoly:
        self.check_ring(kind)
        if self.kind is SigmaKind.LAURENT_MINUS:
            return BasePoly({-1: self.q}, kind)
        return BasePoly({1: self.q, 0: self.r}, kind)

    def inverse_image_of_x(self, kind: BaseKind) -> BasePoly:
        self.check_ring(kind)
        if self.kind is SigmaKind.LAURENT_MINUS:
            # q/x is its own inverse: q / (q/x) = x
            return BasePoly({-1: self.q}, kind)
        return BasePoly({1: 1 / self.q, 0: -self.r / self.q}, kind)


def apply_sigma(s: SigmaSpec, f: BasePoly) -> BasePoly:
    return f.substitute(s.image_of_x(f.kind))


def apply_sigma_inverse(s: SigmaSpec, f: BasePoly) -> BasePoly:
    return f.substitute(s.inverse_image_of_x(f.kind))


def derivative(f: BasePoly) -> BasePoly:
    return f.derivative()


def _delta_x_power(s: SigmaSpec, p: BasePoly, k: int) -> BasePoly:
    """delta(x^k) from delta(x) = p and the twisted Leibniz rule; Laurent base."""
    kind = BaseKind.LAURENT
    if k == 0:
        return BasePoly.zero(kind)
    sx = s.image_of_x(kind)
    c, e = sx.as_unit_monomial()
    if k > 0:
        # delta(x^k) = sum_i sigma(x)^i delta(x) x^(k-1-i)
        acc = {}
        for i in range(k):
            exp = e * i + (k - 1 - i)
            acc[exp] = acc.get(exp, 0) + c ** i
        return BasePoly(acc, kind) * p
    # 0 = delta(x^k x^-k) = delta(x^k) x^-k + sigma(x^k) delta(x^-k)
    sigma_xk = BasePoly({e * k: c ** k}, kind)
    return -(sigma_xk * _delta_x_power(s, p, -k) * BasePoly.monomial(k, ONE, kind))


def apply_delta(s: SigmaSpec, p: BasePoly, f: BasePoly) -> BasePoly:
    """The sigma-derivation delta_p with delta_p(x) = p, applied to f."""
    if p.kind is not f.kind:
        raise IncompatibleBaseRing("p and f live in different base rings")
    s.check_ring(f.kind)
    if s.is_identity():
        return f.derivative() * p
    if f.kind is BaseKind.POLY:
        sx = s.image_of_x(f.kind)
        quot, rem = (apply_sigma(s, f) - f).divmod(sx - BasePoly.gen(f.kind))
        assert rem.is_zero(), "divided difference must be exact"
        return quot * p
    out = BasePoly.zero(f.kind)
    for k, c in f.items():
        out = out + _delta_x_power(s, p, k) * c
    return out

"""Normal-form arithmetic in the Ore extensions K[x][y; sigma, delta_p] and K[x, x^-1][y; sigma, delta_p].

Every element is kept as a finite sum of ``c * x^k * y^l`` with x-powers to the
left.  The single rewriting rule is ``y f(x) = sigma(f) y + delta_p(f)``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from .basering import (
    BaseKind,
    BasePoly,
    SigmaKind,
    SigmaSpec,
    apply_delta,
    apply_sigma,
    format_terms,
    x_power_text,
)
from .errors import IncompatibleBaseRing, NonInvertibleImage, SpecMismatch
from .scalar import ONE, as_scalar, format_scalar


def _as_base_poly(p, kind: BaseKind) -> BasePoly:
    if isinstance(p, BasePoly):
        return p.to_kind(kind)
    if isinstance(p, dict):
        return BasePoly(p, kind)
    if isinstance(p, (int, Fraction, str)):
        return BasePoly.const(as_scalar(p), kind)
    # iterable of (exponent, coefficient) pairs
    return BasePoly({int(k): as_scalar(c) for k, c in p}, kind)


@dataclass(frozen=True)
class AlgebraSpec:
    """Presentation data of ``A[q,r;p]`` (polynomial base) or ``A[q,+/-;p]`` (Laurent base)."""

    sigma: SigmaSpec
    p: BasePoly
    base_kind: BaseKind

    def __post_init__(self):
        object.__setattr__(self, "base_kind", BaseKind(self.base_kind))
        self.sigma.check_ring(self.base_kind)
        if self.p.kind is not self.base_kind:
            raise IncompatibleBaseRing("p must live in the base ring of the algebra")
        # specs key every multiplication cache, so hash once
        object.__setattr__(self, "_hash", hash((self.sigma, self.p, self.base_kind)))

    def __hash__(self):
        return self._hash

    @classmethod
    def poly(cls, q, r=0, p=0):
        """``A[q,r;p(x)]``: yx = qxy + ry + p(x) over K[x]."""
        return cls(SigmaSpec.affine(q, r), _as_base_poly(p, BaseKind.POLY), BaseKind.POLY)

    @classmethod
    def laurent(cls, q, sign="+", p=0):
        """``A[q,+/-;p(x)]``: yx = q x^(+/-1) y + p(x) over K[x, x^-1]."""
        if sign in ("+", 1, "plus"):
            sigma = SigmaSpec.laurent_plus(q)
        elif sign in ("-", -1, "minus"):
            sigma = SigmaSpec.laurent_minus(q)
        else:
            raise ValueError(f"sign must be '+' or '-', got {sign!r}")
        return cls(sigma, _as_base_poly(p, BaseKind.LAURENT), BaseKind.LAURENT)

    @property
    def q(self) -> Fraction:
        return self.sigma.q

    @property
    def r(self) -> Fraction:
        return self.sigma.r

    @property
    def is_laurent(self) -> bool:
        return self.base_kind is BaseKind.LAURENT

    @property
    def sign(self):
        """'+' or '-' for Laurent bases, None for K[x]."""
        if self.sigma.kind is SigmaKind.LAURENT_MINUS:
            return "-"
        if self.is_laurent:
            return "+"
        return None

    def base(self, f) -> BasePoly:
        return _as_base_poly(f, self.base_kind)

    # generators

    @property
    def x(self) -> "OreElement":
        return OreElement({(1, 0): ONE}, self)

    @property
    def y(self) -> "OreElement":
        return OreElement({(0, 1): ONE}, self)

    @property
    def one(self) -> "OreElement":
        return OreElement({(0, 0): ONE}, self)

    @property
    def zero(self) -> "OreElement":
        return OreElement({}, self)

    def const(self, c) -> "OreElement":
        return OreElement({(0, 0): as_scalar(c)}, self)

    def monomial(self, k: int, l: int, c=ONE) -> "OreElement":
        return OreElement({(k, l): as_scalar(c)}, self)

    def from_base(self, f: BasePoly) -> "OreElement":
        return OreElement({(k, 0): c for k, c in f.items()}, self)

    def element(self, terms) -> "OreElement":
        return OreElement(terms, self)

    def __str__(self):
        q = format_scalar(self.q)
        if self.is_laurent:
            return f"A[{q},{self.sign};{self.p}]"
        return f"A[{q},{format_scalar(self.r)};{self.p}]"


@lru_cache(maxsize=None)
def _twist_x_power(spec: AlgebraSpec, k: int):
    """(sigma(x^k), delta_p(x^k)) as coefficient tuples."""
    f = BasePoly.monomial(k, ONE, spec.base_kind)
    s = apply_sigma(spec.sigma, f)
    d = apply_delta(spec.sigma, spec.p, f)
    return tuple(s.items()), tuple(d.items())


@lru_cache(maxsize=None)
def commute(spec: AlgebraSpec, l: int, k: int):
    """Normal form of ``y^l x^k`` as a tuple of ``(x_exp, y_exp, coeff)``."""
    if l == 0:
        return ((k, 0, ONE),)
    acc = {}
    for kk, j, c in commute(spec, l - 1, k):
        sig, dl = _twist_x_power(spec, kk)
        for e, a in sig:
            acc[(e, j + 1)] = acc.get((e, j + 1), 0) + c * a
        for e, a in dl:
            acc[(e, j)] = acc.get((e, j), 0) + c * a
    return tuple((e, j, c) for (e, j), c in acc.items() if c != 0)


class OreElement:
    """A normal-form element ``sum c[k, l] x^k y^l`` of an Ore extension."""

    __slots__ = ("terms", "spec", "_hash")

    def __init__(self, terms, spec: AlgebraSpec):
        clean = {}
        for (k, l), c in dict(terms).items():
            c = as_scalar(c)
            if c == 0:
                continue
            if l < 0:
                raise ValueError("negative power of y")
            if k < 0 and spec.base_kind is BaseKind.POLY:
                raise IncompatibleBaseRing(f"x^{k} is not in {spec}")
            clean[(int(k), int(l))] = c
        self.terms = clean
        self.spec = spec
        self._hash = None

    # helpers

    def _coerce(self, other):
        if isinstance(other, OreElement):
            if other.spec != self.spec:
                raise SpecMismatch(f"{self.spec} vs {other.spec}")
            return other
        if isinstance(other, (int, Fraction)):
            return self.spec.const(other)
        if isinstance(other, BasePoly):
            return self.spec.from_base(other.to_kind(self.spec.base_kind))
        return NotImplemented

    def is_zero(self) -> bool:
        return not self.terms

    def coeff(self, k: int, l: int) -> Fraction:
        return self.terms.get((k, l), Fraction(0))

    def y_degree(self):
        return max((l for _, l in self.terms), default=None)

    def y_coefficients(self) -> dict:
        """Map ``l -> f_l(x)`` with ``self = sum f_l(x) y^l``."""
        out = {}
        for (k, l), c in self.terms.items():
            out.setdefault(l, {})[k] = c
        return {l: BasePoly(d, self.spec.base_kind) for l, d in out.items()}

    def as_scalar(self):
        """The scalar value if this element lies in K.1, else None."""
        if not self.terms:
            return Fraction(0)
        if set(self.terms) == {(0, 0)}:
            return self.terms[(0, 0)]
        return None

    def as_unit_monomial(self):
        """Return ``(c, k)`` if this is ``c x^k`` and a unit of the algebra."""
        if len(self.terms) != 1:
            return None
        ((k, l), c), = self.terms.items()
        if l != 0 or (k != 0 and not self.spec.is_laurent):
            return None
        return c, k

    # arithmetic

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self.terms)
        for key, c in other.terms.items():
            out[key] = out.get(key, 0) + c
        return OreElement(out, self.spec)

    __radd__ = __add__

    def __neg__(self):
        return OreElement({key: -c for key, c in self.terms.items()}, self.spec)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return scalar_mul(other, self)
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return normalize_product(self, other)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return scalar_mul(other, self)
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return normalize_product(other, self)

    def __pow__(self, n: int):
        if n < 0:
            unit = self.as_unit_monomial()
            if unit is None:
                raise NonInvertibleImage(f"({self}) is not invertible")
            c, k = unit
            return OreElement({(k * n, 0): c ** n}, self.spec)
        result = self.spec.one
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self.spec.const(other)
        if not isinstance(other, OreElement):
            return NotImplemented
        return self.spec == other.spec and self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.spec, frozenset(self.terms.items())))
        return self._hash

    def sorted_terms(self):
        """Terms in canonical print order: descending y-degree, then descending x-exponent."""
        return sorted(self.terms.items(), key=lambda kv: (-kv[0][1], -kv[0][0]))

    def __str__(self):
        def mono(k, l):
            parts = [x_power_text(k)] if k else []
            if l == 1:
                parts.append("y")
            elif l > 1:
                parts.append(f"y^{l}")
            return "*".join(parts)

        return format_terms((c, mono(k, l)) for (k, l), c in self.sorted_terms())

    def __repr__(self):
        return f"OreElement({self}, {self.spec})"


def scalar_mul(s, a: OreElement) -> OreElement:
    s = as_scalar(s)
    return OreElement({key: s * c for key, c in a.terms.items()}, a.spec)


def add(a: OreElement, b: OreElement) -> OreElement:
    return a + b


def normalize_product(a: OreElement, b: OreElement) -> OreElement:
    """The product ``a * b`` brought back to normal form."""
    if a.spec is not b.spec and a.spec != b.spec:
        raise SpecMismatch(f"{a.spec} vs {b.spec}")
    spec = a.spec
    out = {}
    for (ka, la), ca in a.terms.items():
        for (kb, lb), cb in b.terms.items():
            c = ca * cb
            for e, j, t in commute(spec, la, kb):
                key = (ka + e, j + lb)
                out[key] = out.get(key, 0) + c * t
    return OreElement(out, spec)


@dataclass(frozen=True)
class AlgebraMap:
    """The algebra endomorphism determined by the images of x and y."""

    x_image: OreElement
    y_image: OreElement
    _powers: dict = field(default_factory=dict, init=False, repr=False, compare=False)

    @property
    def spec(self) -> AlgebraSpec:
        return self.x_image.spec

    @classmethod
    def identity(cls, spec: AlgebraSpec):
        return cls(spec.x, spec.y)

    def __call__(self, a: OreElement) -> OreElement:
        return apply_endo((self.x_image, self.y_image), a, self._powers)

    def compose(self, inner: "AlgebraMap") -> "AlgebraMap":
        """``self o inner``: apply ``inner`` first."""
        return AlgebraMap(self(inner.x_image), self(inner.y_image))

    def __str__(self):
        return f"x -> {self.x_image}, y -> {self.y_image}"


def apply_endo(images, a: OreElement, cache: dict | None = None) -> OreElement:
    """Evaluate the algebra map ``x -> img_x, y -> img_y`` on ``a`` term by term.

    ``cache`` may carry images of monomials between calls with the same images.
    """
    img_x, img_y = images
    spec = a.spec
    if cache is None:
        cache = {}
    if not cache:
        cache[("x", 0)] = cache[("y", 0)] = spec.one

    def x_to(k):
        key = ("x", k)
        if key not in cache:
            if k < 0:
                unit = img_x.as_unit_monomial()
                if unit is None:
                    raise NonInvertibleImage(f"x^{k} needs an inverse of {img_x}")
                c, e = unit
                cache[key] = OreElement({(e * k, 0): c ** k}, spec)
            else:
                cache[key] = x_to(k - 1) * img_x
        return cache[key]

    def y_to(l):
        key = ("y", l)
        if key not in cache:
            cache[key] = y_to(l - 1) * img_y
        return cache[key]

    out = {}
    for (k, l), c in a.terms.items():
        mono = cache.get((k, l))
        if mono is None:
            mono = cache[(k, l)] = x_to(k) * y_to(l)
        for key, t in mono.terms.items():
            out[key] = out.get(key, 0) + c * t
    return OreElement(out, spec)

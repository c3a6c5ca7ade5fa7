"""Exact rational arithmetic with p-adic valuations and univariate polynomials.

Everything downstream (Weierstrass models, Tate's algorithm, Velu formulas,
formal groups) runs on `fractions.Fraction` coefficients, so all equalities
in this package are bit-exact.  The valuation of zero is +infinity, which
makes the ultrametric laws hold without special cases.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from itertools import product

import sympy

INF = math.inf


class NonIntegralError(ValueError):
    """A coefficient had negative p-adic valuation where integrality is required."""


class SingularModelError(ValueError):
    """A Weierstrass model with vanishing discriminant was supplied."""


def valuation(x, p):
    """p-adic valuation of a rational number; +inf for zero."""
    x = Fraction(x)
    if x == 0:
        return INF
    v = 0
    n = x.numerator
    while n % p == 0:
        n //= p
        v += 1
    d = x.denominator
    while d % p == 0:
        d //= p
        v -= 1
    return v


def residue(x, p, k=1):
    """Reduce a rational with val_p >= 0 modulo p**k (denominator inverted)."""
    x = Fraction(x)
    m = p ** k
    if x.denominator % p == 0:
        raise NonIntegralError(f"{x} is not {p}-integral")
    return x.numerator * pow(x.denominator, -1, m) % m


_RATIONAL_RE = re.compile(r"-?\d+(/\d+)?\Z")


def parse_rational(s):
    """Parse 'n' or 'n/d' with optional leading minus."""
    text = str(s).strip()
    if not _RATIONAL_RE.match(text):
        raise ValueError(f"not an integer or n/d rational literal: {s!r}")
    return Fraction(text)


@dataclass(frozen=True)
class LocalFieldContext:
    """The unramified field of residue degree f over the p-adic base.

    Only p and f are ever needed: rational numbers keep their valuations
    under unramified base change, so val_K(p) = 1 always holds here.
    """

    p: int
    f: int = 1

    def __post_init__(self):
        if self.p < 3 or not sympy.isprime(self.p):
            raise ValueError(f"p must be an odd prime, got {self.p}")
        if self.f < 1:
            raise ValueError(f"residue degree must be positive, got {self.f}")


class Polynomial:
    """Univariate polynomial over Q. Coefficients are stored constant term first."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=()):
        cs = [Fraction(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs = tuple(cs)

    @classmethod
    def x(cls):
        return cls([0, 1])

    @classmethod
    def constant(cls, c):
        return cls([c])

    @property
    def degree(self):
        return len(self.coeffs) - 1 if self.coeffs else -1

    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.coeffs == other.coeffs
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def __getitem__(self, i):
        return self.coeffs[i] if 0 <= i <= self.degree else Fraction(0)

    def leading(self):
        if not self.coeffs:
            raise ValueError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def __add__(self, other):
        other = _coerce(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return Polynomial([self[i] + other[i] for i in range(n)])

    __radd__ = __add__

    def __neg__(self):
        return Polynomial([-c for c in self.coeffs])

    def __sub__(self, other):
        return self + (-_coerce(other))

    def __rsub__(self, other):
        return _coerce(other) + (-self)

    def __mul__(self, other):
        other = _coerce(other)
        if not self or not other:
            return Polynomial()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return Polynomial(out)

    __rmul__ = __mul__

    def __pow__(self, n):
        out = Polynomial([1])
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def divrem(self, other):
        """Exact division with remainder: self = q*other + r, deg r < deg other."""
        other = _coerce(other)
        if not other:
            raise ZeroDivisionError("division by the zero polynomial")
        q = [Fraction(0)] * max(0, self.degree - other.degree + 1)
        r = list(self.coeffs)
        lead = other.leading()
        d = other.degree
        while len(r) - 1 >= d and any(c != 0 for c in r):
            while r and r[-1] == 0:
                r.pop()
            if len(r) - 1 < d:
                break
            c = r[-1] / lead
            k = len(r) - 1 - d
            q[k] = c
            for i, b in enumerate(other.coeffs):
                r[k + i] -= c * b
            r.pop()
        return Polynomial(q), Polynomial(r)

    def __mod__(self, other):
        return self.divrem(other)[1]

    def __floordiv__(self, other):
        return self.divrem(other)[0]

    def monic(self):
        if not self:
            return self
        inv = 1 / self.leading()
        return Polynomial([c * inv for c in self.coeffs])

    def gcd(self, other):
        """Monic greatest common divisor."""
        a, b = self, _coerce(other)
        while b:
            a, b = b, a % b
        return a.monic()

    def derivative(self):
        return Polynomial([i * c for i, c in enumerate(self.coeffs)][1:])

    def __call__(self, x):
        out = Fraction(0) if isinstance(x, (int, Fraction)) else x * 0
        for c in reversed(self.coeffs):
            out = out * x + c
        return out

    def shift(self, r):
        """self(x + r)."""
        out = Polynomial()
        xr = Polynomial([r, 1])
        for c in reversed(self.coeffs):
            out = out * xr + Polynomial([c])
        return out

    def content_valuation(self, p):
        """Minimum p-adic valuation over all coefficients (+inf for zero)."""
        return min((valuation(c, p) for c in self.coeffs), default=INF)

    def scale_x(self, c):
        """self(c*x)."""
        return Polynomial([a * Fraction(c) ** i for i, a in enumerate(self.coeffs)])

    def __repr__(self):
        if not self:
            return "Poly(0)"
        terms = []
        for i, c in enumerate(self.coeffs):
            if c:
                terms.append(f"{c}*x^{i}" if i else f"{c}")
        return "Poly(" + " + ".join(terms) + ")"


def _coerce(v):
    if isinstance(v, Polynomial):
        return v
    return Polynomial([v])


class ModPoly:
    """Univariate polynomial over F_p, coefficients constant term first."""

    __slots__ = ("p", "coeffs")

    def __init__(self, coeffs, p):
        cs = [int(c) % p for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs = tuple(cs)
        self.p = p

    @property
    def degree(self):
        return len(self.coeffs) - 1 if self.coeffs else -1

    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other):
        return (
            isinstance(other, ModPoly)
            and self.p == other.p
            and self.coeffs == other.coeffs
        )

    def __hash__(self):
        return hash((self.p, self.coeffs))

    def __getitem__(self, i):
        return self.coeffs[i] if 0 <= i <= self.degree else 0

    def __add__(self, other):
        n = max(len(self.coeffs), len(other.coeffs))
        return ModPoly([self[i] + other[i] for i in range(n)], self.p)

    def __sub__(self, other):
        n = max(len(self.coeffs), len(other.coeffs))
        return ModPoly([self[i] - other[i] for i in range(n)], self.p)

    def __mul__(self, other):
        if isinstance(other, int):
            return ModPoly([c * other for c in self.coeffs], self.p)
        if not self or not other:
            return ModPoly([], self.p)
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return ModPoly(out, self.p)

    def __pow__(self, n):
        out = ModPoly([1], self.p)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def divrem(self, other):
        if not other:
            raise ZeroDivisionError("division by the zero polynomial")
        p = self.p
        inv = pow(other.coeffs[-1], -1, p)
        d = other.degree
        r = list(self.coeffs)
        q = [0] * max(0, self.degree - d + 1)
        while len(r) - 1 >= d:
            if r[-1] == 0:
                r.pop()
                continue
            c = r[-1] * inv % p
            k = len(r) - 1 - d
            q[k] = c
            for i, b in enumerate(other.coeffs):
                r[k + i] = (r[k + i] - c * b) % p
            r.pop()
        return ModPoly(q, p), ModPoly(r, p)

    def __mod__(self, other):
        return self.divrem(other)[1]

    def gcd(self, other):
        a, b = self, other
        while b:
            a, b = b, a % b
        if a:
            inv = pow(a.coeffs[-1], -1, self.p)
            a = a * inv
        return a

    def derivative(self):
        return ModPoly([i * c for i, c in enumerate(self.coeffs)][1:], self.p)

    def __call__(self, x):
        out = 0
        for c in reversed(self.coeffs):
            out = (out * x + c) % self.p
        return out

    def __repr__(self):
        return f"ModPoly({list(self.coeffs)}, p={self.p})"


def reduce_mod_p(a: Polynomial, p: int) -> ModPoly:
    """Coefficient-wise reduction of a rational polynomial modulo p.

    Raises NonIntegralError if any coefficient has negative valuation.
    """
    return ModPoly([residue(c, p) for c in a.coeffs], p)


_X = sympy.Symbol("x")


def _to_sympy(a: Polynomial):
    return sympy.Poly.from_list(
        [sympy.Rational(c.numerator, c.denominator) for c in reversed(a.coeffs)],
        _X,
        domain="QQ",
    )


def _from_sympy(sp) -> Polynomial:
    return Polynomial([Fraction(c.p, c.q) for c in reversed(sp.all_coeffs())])


def factor_degree_d(a: Polynomial, d: int) -> set:
    """All monic degree-d rational factors of a.

    Products of subsets of the irreducible rational factorization whose
    degrees sum to d; empty set when no such factor exists.
    """
    if not a:
        raise ValueError("zero polynomial")
    if d < 1 or d > a.degree:
        raise ValueError(f"need 1 <= d <= deg a, got d={d}")
    _, factors = _to_sympy(a).factor_list()
    irred = []
    for f, mult in factors:
        if f.degree() >= 1:
            irred.append((_from_sympy(f).monic(), f.degree(), mult))
    found = set()
    ranges = [range(m + 1) for _, _, m in irred]
    for exps in product(*ranges):
        if sum(e * deg for e, (_, deg, _) in zip(exps, irred)) != d:
            continue
        h = Polynomial([1])
        for e, (f, _, _) in zip(exps, irred):
            h = h * f**e
        found.add(h)
    return found

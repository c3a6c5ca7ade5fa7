"""Division polynomials, kernel discovery, Velu's formulas, dual isogenies,
and the valuation exponent of the leading formal coefficient via
minimal-differential scaling.

An isogeny is stored in Velu normalization: the pullback of the codomain's
invariant differential is exactly the domain's invariant differential for
the two stored models.  Only the valuation of the exponent is intrinsic to
the curves, so alpha is represented by that integer plus the residue
degree, never as a magnitude.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .exactnum import LocalFieldContext, Polynomial, factor_degree_d, valuation
from .localdata import minimal_model
from .weierstrass import (
    WeierstrassModel,
    find_isomorphism,
    invariants,
    transform,
)


class RationalFunction:
    """Quotient of two rational polynomials, stored in lowest terms with
    monic denominator."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=None):
        if not isinstance(num, Polynomial):
            num = Polynomial([num])
        if den is None:
            den = Polynomial([1])
        elif not isinstance(den, Polynomial):
            den = Polynomial([den])
        if not den:
            raise ZeroDivisionError("zero denominator")
        g = num.gcd(den)
        if g.degree > 0:
            num = num // g
            den = den // g
        lead = den.leading()
        if lead != 1:
            num = num * (1 / lead)
            den = den * (1 / lead)
        self.num = num
        self.den = den

    @classmethod
    def x(cls):
        return cls(Polynomial.x())

    def __call__(self, v):
        d = self.den(v)
        if d == 0:
            raise ZeroDivisionError(f"pole at {v}")
        return self.num(v) / d

    def __eq__(self, other):
        other = _coerce_rf(other)
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((self.num, self.den))

    def __add__(self, other):
        other = _coerce_rf(other)
        return RationalFunction(
            self.num * other.den + other.num * self.den, self.den * other.den
        )

    __radd__ = __add__

    def __neg__(self):
        return RationalFunction(-self.num, self.den)

    def __sub__(self, other):
        return self + (-_coerce_rf(other))

    def __rsub__(self, other):
        return _coerce_rf(other) + (-self)

    def __mul__(self, other):
        other = _coerce_rf(other)
        return RationalFunction(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _coerce_rf(other)
        return RationalFunction(self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other):
        return _coerce_rf(other) / self

    def derivative(self):
        return RationalFunction(
            self.num.derivative() * self.den - self.num * self.den.derivative(),
            self.den * self.den,
        )

    def compose(self, other: "RationalFunction") -> "RationalFunction":
        """self(other(x))."""
        num = Polynomial()
        den_pows = [Polynomial([1])]
        d = self.num.degree if self.num else 0
        d = max(d, self.den.degree)
        for _ in range(d):
            den_pows.append(den_pows[-1] * other.den)
        num_out = Polynomial()
        for i, c in enumerate(self.num.coeffs):
            num_out = num_out + Polynomial([c]) * other.num ** i * den_pows[d - i]
        den_out = Polynomial()
        for i, c in enumerate(self.den.coeffs):
            den_out = den_out + Polynomial([c]) * other.num ** i * den_pows[d - i]
        return RationalFunction(num_out, den_out)

    def is_zero(self):
        return not self.num

    def __repr__(self):
        return f"({self.num})/({self.den})"


def _coerce_rf(v):
    if isinstance(v, RationalFunction):
        return v
    return RationalFunction(v)


def division_polynomial(m: WeierstrassModel, p: int) -> Polynomial:
    """The p-division polynomial (p odd): degree (p^2 - 1)/2, roots the
    x-coordinates of the nonzero p-torsion points."""
    if p < 3 or p % 2 == 0:
        raise ValueError("only odd p supported")
    return _division_polynomials(m, p)[p]


def _division_polynomials(m: WeierstrassModel, top: int):
    """Univariate parts f_n of the division polynomials psi_n, with
    psi_n = f_n for odd n and psi_n = f_n * psi_2 for even n."""
    iv = invariants(m)
    b2, b4, b6, b8 = iv.b2, iv.b4, iv.b6, iv.b8
    B = Polynomial([b6, 2 * b4, b2, 4])  # psi_2^2
    f = {
        0: Polynomial(),
        1: Polynomial([1]),
        2: Polynomial([1]),
        3: Polynomial([b8, 3 * b6, 3 * b4, b2, 3]),
        4: Polynomial(
            [
                b4 * b8 - b6 * b6,
                b2 * b8 - b4 * b6,
                10 * b8,
                10 * b6,
                5 * b4,
                b2,
                2,
            ]
        ),
    }

    def get(n):
        if n in f:
            return f[n]
        if n % 2 == 1:
            k = (n - 1) // 2
            a, b, c, d = get(k + 2), get(k), get(k - 1), get(k + 1)
            if k % 2 == 0:
                f[n] = a * b ** 3 * B ** 2 - c * d ** 3
            else:
                f[n] = a * b ** 3 - c * d ** 3 * B ** 2
        else:
            k = n // 2
            a, b, c, d, e = get(k), get(k + 2), get(k - 1), get(k - 2), get(k + 1)
            f[n] = a * (b * c ** 2 - d * e ** 2)
        return f[n]

    return {n: get(n) for n in range(top + 2)}


@dataclass(frozen=True)
class IsogenyData:
    domain: WeierstrassModel
    codomain: WeierstrassModel
    kernel: Polynomial
    x_map: RationalFunction
    # y-coordinate map: Y = y_map_a(x) + y_map_b(x) * y
    y_map_a: RationalFunction
    y_map_b: RationalFunction
    degree: int


class KernelError(ValueError):
    """The supplied polynomial does not cut out a stable kernel."""


def velu(m: WeierstrassModel, h: Polynomial, p: int) -> IsogenyData:
    """Quotient of m by the subgroup with kernel polynomial h (deg (p-1)/2).

    The maps are verified symbolically to satisfy the codomain equation;
    failure means h does not define a stable subgroup.
    """
    n = (p - 1) // 2
    h = h.monic()
    if h.degree != n:
        raise KernelError(f"kernel polynomial must have degree {n}, got {h.degree}")
    psi = division_polynomial(m, p)
    if psi % h:
        raise KernelError("kernel polynomial does not divide the division polynomial")

    iv = invariants(m)
    b2, b4, b6 = iv.b2, iv.b4, iv.b6
    s1 = -h[n - 1]
    s2 = h[n - 2] if n >= 2 else Fraction(0)
    s3 = -h[n - 3] if n >= 3 else Fraction(0)
    p1 = s1
    p2 = s1 * s1 - 2 * s2
    p3 = s1 ** 3 - 3 * s1 * s2 + 3 * s3
    t = 6 * p2 + b2 * p1 + n * b4
    w = 10 * p3 + 2 * b2 * p2 + 3 * b4 * p1 + n * b6
    codomain = WeierstrassModel(
        m.a1, m.a2, m.a3, m.a4 - 5 * t, m.a6 - b2 * t - 7 * w
    )

    # x-map: X = x + sum_Q [ T(x_Q)/(x - x_Q) + B(x_Q)/(x - x_Q)^2 ]
    # with T(z) = 6z^2 + b2 z + b4 and B(z) = 4z^3 + b2 z^2 + 2 b4 z + b6.
    T = Polynomial([b4, b2, 6])
    B = Polynomial([b6, 2 * b4, b2, 4])
    hp = h.derivative()
    NT = (T * hp) % h
    NB = (B * hp) % h
    x = Polynomial.x()
    num = x * h * h + NT * h - NB.derivative() * h + NB * hp
    x_map = RationalFunction(num, h * h)
    if x_map.num.degree != p or x_map.den.degree != p - 1:
        raise KernelError("x-map does not have the degree of a p-isogeny")

    # Velu normalization forces 2Y + a1 X + a3 = X'(x) (2y + a1 x + a3).
    xp = x_map.derivative()
    y_map_a = (xp * RationalFunction(Polynomial([m.a3, m.a1]))
               - m.a1 * x_map - RationalFunction(m.a3)) * Fraction(1, 2)
    y_map_b = xp

    iso = IsogenyData(m, codomain, h, x_map, y_map_a, y_map_b, p)
    if not _satisfies_codomain(iso):
        raise KernelError("maps do not land on the codomain; kernel not stable")
    return iso


def _satisfies_codomain(iso: IsogenyData) -> bool:
    """Check Y^2 + a1 X Y + a3 Y = X^3 + a2 X^2 + a4 X + a6 identically,
    working in Q(x)[y] modulo the domain equation."""
    m = iso.domain
    c = iso.codomain
    X, P, Q = iso.x_map, iso.y_map_a, iso.y_map_b
    # y^2 = S(x) - (a1 x + a3) y on the domain.
    S = RationalFunction(Polynomial([m.a6, m.a4, m.a2, 1]))
    lam = RationalFunction(Polynomial([m.a3, m.a1]))
    # Y^2 = P^2 + Q^2 S + (2PQ - Q^2 lam) y
    const = P * P + Q * Q * S + c.a1 * X * P + c.a3 * P \
        - X * X * X - c.a2 * X * X - c.a4 * X - RationalFunction(c.a6)
    lin = 2 * P * Q - Q * Q * lam + c.a1 * X * Q + c.a3 * Q
    return const.is_zero() and lin.is_zero()


def find_kernels(m: WeierstrassModel, p: int) -> list:
    """All monic degree-(p-1)/2 rational factors of the p-division
    polynomial that define stable subgroups, sorted deterministically."""
    psi = division_polynomial(m, p)
    kernels = []
    for h in factor_degree_d(psi, (p - 1) // 2):
        try:
            velu(m, h, p)
        except KernelError:
            continue
        kernels.append(h)
    kernels.sort(key=lambda h: h.coeffs)
    return kernels


def multiplication_by_p_x(m: WeierstrassModel, p: int) -> RationalFunction:
    """The x-coordinate of multiplication by p as a rational function."""
    f = _division_polynomials(m, p)
    iv = invariants(m)
    B = Polynomial([iv.b6, 2 * iv.b4, iv.b2, 4])
    x = Polynomial.x()
    fp = f[p]
    return RationalFunction(x * fp * fp - f[p - 1] * f[p + 1] * B, fp * fp)


def dual_isogeny(iso: IsogenyData) -> IsogenyData:
    """The isogeny from iso.codomain composing with iso to multiplication
    by p, selected by j-matching plus the exact composition identity
    x([p]P) = (iota . dual . iso)_x(P)."""
    p = iso.degree
    j_domain = invariants(iso.domain).j
    mul_x = multiplication_by_p_x(iso.domain, p)
    for h in find_kernels(iso.codomain, p):
        cand = velu(iso.codomain, h, p)
        if invariants(cand.codomain).j != j_domain:
            continue
        tau = find_isomorphism(cand.codomain, iso.domain)
        if tau is None:
            continue
        # x-coordinate of the isomorphism: points of cand.codomain map to
        # iso.domain via x' = (x - tau.r) / tau.u^2 ... in the transform
        # convention x_src = u^2 x_dst + r.
        comp = cand.x_map.compose(iso.x_map)
        iota = RationalFunction(
            Polynomial([-tau.r, 1]) * (1 / tau.u ** 2)
        )
        if iota.compose(comp) == mul_x:
            return cand
    raise KernelError("no kernel of the codomain composes to multiplication by p")


@dataclass(frozen=True)
class AlphaInvariant:
    """alpha = p^(f * exponent); only the exponent is intrinsic."""

    exponent: int
    f: int

    def magnitude_label(self, p: int) -> str:
        if self.exponent == 0:
            return "1"
        if self.f == 1 and self.exponent == 1:
            return str(p)
        return f"{p}^{self.f * self.exponent}"


def alpha(iso: IsogenyData, ctx: LocalFieldContext) -> AlphaInvariant:
    """val_K of the pullback ratio of minimal invariant differentials.

    The Velu models carry the normalized pullback, so the exponent is the
    difference of the differential scales from the Velu models to the
    minimal models on each side.
    """
    p = ctx.p
    if p != iso.degree:
        raise ValueError(f"context prime {p} != isogeny degree {iso.degree}")
    _, tau_dom = minimal_model(iso.domain, p)
    _, tau_cod = minimal_model(iso.codomain, p)
    exponent = valuation(tau_cod.u, p) - valuation(tau_dom.u, p)
    if not 0 <= exponent <= 1:
        raise RuntimeError(
            f"alpha exponent {exponent} outside [0, 1] in an unramified context"
        )
    return AlphaInvariant(exponent=exponent, f=ctx.f)

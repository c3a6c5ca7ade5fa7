"""Formal group expansions, the group law, multiplication series, the
induced homomorphism of a p-isogeny, formal height, and the separability
of reduced isogenies.

All series carry explicit truncation metadata: a PowerSeries with
precision N knows its coefficients in degrees < N and nothing beyond, and
arithmetic never claims more precision than the operands support.  The
parameter is z = -x/y, with w = -1/y = z^3(1 + ...).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .exactnum import ModPoly, NonIntegralError, Polynomial, residue, valuation
from .isogeny import IsogenyData, RationalFunction
from .localdata import minimal_model, tate_algorithm
from .weierstrass import WeierstrassModel, find_isomorphism, invariants


def default_order(p: int) -> int:
    """Height detection needs the z^(p^2) coefficient; add safety margin."""
    return p * p + 4


class PrecisionError(ValueError):
    """The requested coefficients exceed the available truncation order."""


class PowerSeries:
    """Truncated power series over Q: coefficients in degrees < prec."""

    __slots__ = ("coeffs", "prec")

    def __init__(self, coeffs, prec):
        if prec < 0:
            raise PrecisionError("negative truncation order")
        cs = [Fraction(c) for c in coeffs[:prec]]
        cs += [Fraction(0)] * (prec - len(cs))
        self.coeffs = cs
        self.prec = prec

    @classmethod
    def zero(cls, prec):
        return cls([], prec)

    @classmethod
    def identity(cls, prec):
        return cls([0, 1], prec)

    @classmethod
    def constant(cls, c, prec):
        return cls([c], prec)

    def __getitem__(self, i):
        if i >= self.prec:
            raise PrecisionError(f"coefficient {i} beyond truncation order {self.prec}")
        return self.coeffs[i] if i >= 0 else Fraction(0)

    def __eq__(self, other):
        n = min(self.prec, other.prec)
        return self.coeffs[:n] == other.coeffs[:n]

    def valuation_z(self):
        """Order of vanishing at z = 0 (prec if indistinguishable from 0)."""
        for i, c in enumerate(self.coeffs):
            if c:
                return i
        return self.prec

    def is_zero(self):
        return all(c == 0 for c in self.coeffs)

    def truncate(self, prec):
        return PowerSeries(self.coeffs, min(prec, self.prec))

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = PowerSeries.constant(other, self.prec)
        n = min(self.prec, other.prec)
        return PowerSeries([self[i] + other[i] for i in range(n)], n)

    __radd__ = __add__

    def __neg__(self):
        return PowerSeries([-c for c in self.coeffs], self.prec)

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = PowerSeries.constant(other, self.prec)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return PowerSeries([c * other for c in self.coeffs], self.prec)
        n = min(self.prec, other.prec)
        out = [Fraction(0)] * n
        for i, a in enumerate(self.coeffs[:n]):
            if not a:
                continue
            for j in range(min(len(other.coeffs), n - i)):
                out[i + j] += a * other.coeffs[j]
        return PowerSeries(out, n)

    __rmul__ = __mul__

    def __pow__(self, k):
        out = PowerSeries.constant(1, self.prec)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def shift(self, k):
        """Multiply by z^k (k >= 0); precision grows with the shift."""
        return PowerSeries([Fraction(0)] * k + self.coeffs, self.prec + k)

    def derivative(self):
        return PowerSeries(
            [i * c for i, c in enumerate(self.coeffs)][1:], max(self.prec - 1, 0)
        )

    def integral(self):
        """Antiderivative with zero constant term."""
        return PowerSeries(
            [Fraction(0)] + [c / (i + 1) for i, c in enumerate(self.coeffs)],
            self.prec + 1,
        )

    def inverse(self):
        """Multiplicative inverse; requires a nonzero constant term."""
        if not self.coeffs or self.coeffs[0] == 0:
            raise ZeroDivisionError("series has no multiplicative inverse")
        n = self.prec
        inv0 = 1 / self.coeffs[0]
        out = [inv0] + [Fraction(0)] * (n - 1)
        for k in range(1, n):
            s = Fraction(0)
            for i in range(1, k + 1):
                s += self.coeffs[i] * out[k - i] if i < len(self.coeffs) else 0
            out[k] = -inv0 * s
        return PowerSeries(out, n)

    def compose(self, inner: "PowerSeries") -> "PowerSeries":
        """self(inner(z)); inner must have zero constant term."""
        if inner.prec and inner.coeffs[0] != 0:
            raise ValueError("can only compose into a series without constant term")
        n = min(self.prec, inner.prec)
        out = PowerSeries.constant(0, n)
        for c in reversed(self.coeffs[:n]):
            out = out * inner.truncate(n) + c
        return out

    def reversion(self):
        """Compositional inverse of c1*z + ... with c1 != 0."""
        if self.prec < 2 or self.coeffs[0] != 0 or self.coeffs[1] == 0:
            raise ValueError("reversion needs the form c1*z + ... with c1 != 0")
        n = self.prec
        c1 = self.coeffs[1]
        # Newton iteration with doubling working precision.
        g = PowerSeries([0, 1 / c1], 2)
        prec = 2
        while prec < n:
            prec = min(2 * prec, n)
            g = PowerSeries(g.coeffs, prec)
            f = self.truncate(prec)
            err = f.compose(g) - PowerSeries.identity(prec)
            corr = err * f.derivative().compose(g).inverse()
            g = g - corr
        err = self.compose(g) - PowerSeries.identity(n)
        if not err.is_zero():
            g = g - err * self.derivative().compose(g).inverse()
        return g

    def reduce_mod(self, p):
        return [residue(c, p) for c in self.coeffs]

    def __repr__(self):
        terms = [
            (f"{c}*z^{i}" if i > 1 else ("z" if c == 1 and i == 1 else f"{c}*z"))
            for i, c in enumerate(self.coeffs)
            if c and i >= 1
        ]
        if self.coeffs and self.coeffs[0]:
            terms.insert(0, str(self.coeffs[0]))
        body = " + ".join(terms) if terms else "0"
        return f"{body} + O(z^{self.prec})"


class LaurentSeries:
    """z^shift * u(z) with u a PowerSeries whose constant term may be zero.

    Only shifts >= -3 ever occur here (x and y expansions)."""

    __slots__ = ("shift", "series")

    def __init__(self, shift, series):
        v = series.valuation_z()
        if 0 < v < series.prec:
            series = PowerSeries(series.coeffs[v:], series.prec - v)
            shift += v
        self.shift = shift
        self.series = series

    @classmethod
    def from_power_series(cls, s):
        return cls(0, s)

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = LaurentSeries(0, PowerSeries.constant(other, self.series.prec))
        e = min(self.shift, other.shift)
        a = self.series.shift(self.shift - e)
        b = other.series.shift(other.shift - e)
        return LaurentSeries(e, a + b)

    __radd__ = __add__

    def __neg__(self):
        return LaurentSeries(self.shift, -self.series)

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = LaurentSeries(0, PowerSeries.constant(other, self.series.prec))
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return LaurentSeries(self.shift, self.series * other)
        return LaurentSeries(self.shift + other.shift, self.series * other.series)

    __rmul__ = __mul__

    def inverse(self):
        return LaurentSeries(-self.shift, self.series.inverse())

    def __truediv__(self, other):
        return self * other.inverse()

    def derivative(self):
        e, u = self.shift, self.series
        # d/dz [z^e u] = z^(e-1) (e*u + z*u')
        zup = u.derivative().shift(1)
        return LaurentSeries(e - 1, (u * e + zup.truncate(u.prec)))

    def power_series(self):
        if self.shift < 0 and not self.series.is_zero():
            raise ValueError(f"series has a pole of order {-self.shift}")
        if self.shift < 0:
            return PowerSeries.zero(self.series.prec + self.shift)
        return self.series.shift(self.shift)

    def __repr__(self):
        return f"z^{self.shift} * ({self.series})"


def eval_poly(poly: Polynomial, v: LaurentSeries, prec: int) -> LaurentSeries:
    out = LaurentSeries(0, PowerSeries.zero(prec))
    for c in reversed(poly.coeffs):
        out = out * v + c
    if not poly.coeffs:
        out = LaurentSeries(0, PowerSeries.zero(prec))
    return out


def eval_rational(fn: RationalFunction, v: LaurentSeries, prec: int) -> LaurentSeries:
    num = eval_poly(fn.num, v, prec)
    den = eval_poly(fn.den, v, prec)
    return num / den


@dataclass
class FormalExpansion:
    """w, x, y and the normalized invariant differential of a model."""

    model: WeierstrassModel
    w: PowerSeries  # w = z^3 (1 + ...)
    x: LaurentSeries  # z^-2 (1 + ...)
    y: LaurentSeries  # -z^-3 (1 + ...)
    omega: PowerSeries  # 1 + ...


def formal_expansion(m: WeierstrassModel, N: int) -> FormalExpansion:
    """Expand the formal group data of a model to truncation order N.

    w(z) solves w = z^3 + a1 z w + a2 z^2 w + a3 w^2 + a4 z w^2 + a6 w^3
    by fixed-point iteration; x = z/w, y = -1/w; omega is normalized with
    leading coefficient 1.
    """
    if N < 5:
        raise PrecisionError("order must be at least 5")
    a1, a2, a3, a4, a6 = m.ainvs()
    prec = N + 8
    z = PowerSeries.identity(prec)
    w = z ** 3
    for _ in range(prec):
        w2 = w * w
        new = (
            z ** 3
            + (z * a1 + z ** 2 * a2) * w
            + (w2 * a3)
            + (z * w2 * a4)
            + (w2 * w * a6)
        )
        if new == w:
            w = new
            break
        w = new
    wl = LaurentSeries(0, w)
    zl = LaurentSeries(0, z)
    x = zl / wl
    y = -(wl.inverse())
    xp = x.derivative()
    denom = y * 2 + x * a1 + a3
    omega_l = xp / denom
    omega = omega_l.power_series().truncate(N)
    return FormalExpansion(m, w.truncate(N + 3), x, y, omega)


def formal_log(m: WeierstrassModel, N: int) -> PowerSeries:
    """The formal logarithm: integral of the normalized differential."""
    return formal_expansion(m, N).omega.integral().truncate(N + 1)


def multiplication_series(m: WeierstrassModel, k: int, N: int) -> PowerSeries:
    """The multiplication-by-k series [k](z) = L^-1(k L(z)), leading
    coefficient k."""
    if N < 2:
        raise PrecisionError("order must be at least 2")
    if k == 0:
        return PowerSeries.zero(N + 1)
    if k == 1:
        return PowerSeries.identity(N + 1)
    L = formal_log(m, N)
    return L.reversion().compose(L * k).truncate(N + 1)


class BiSeries:
    """Bivariate truncated series in z1, z2: terms of total degree < prec."""

    __slots__ = ("terms", "prec")

    def __init__(self, terms, prec):
        self.prec = prec
        self.terms = {
            k: Fraction(v) for k, v in terms.items() if v and k[0] + k[1] < prec
        }

    @classmethod
    def variable(cls, which, prec):
        key = (1, 0) if which == 1 else (0, 1)
        return cls({key: Fraction(1)}, prec)

    @classmethod
    def constant(cls, c, prec):
        return cls({(0, 0): Fraction(c)}, prec)

    @classmethod
    def from_univariate(cls, s: PowerSeries, which, prec):
        n = min(prec, s.prec)
        if which == 1:
            return cls({(i, 0): c for i, c in enumerate(s.coeffs[:n])}, n)
        return cls({(0, i): c for i, c in enumerate(s.coeffs[:n])}, n)

    def __eq__(self, other):
        n = min(self.prec, other.prec)

        def trim(t):
            return {k: v for k, v in t.items() if k[0] + k[1] < n}

        return trim(self.terms) == trim(other.terms)

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = BiSeries.constant(other, self.prec)
        n = min(self.prec, other.prec)
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out.get(k, Fraction(0)) + v
        return BiSeries(out, n)

    __radd__ = __add__

    def __neg__(self):
        return BiSeries({k: -v for k, v in self.terms.items()}, self.prec)

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = BiSeries.constant(other, self.prec)
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return BiSeries({k: v * other for k, v in self.terms.items()}, self.prec)
        n = min(self.prec, other.prec)
        out = {}
        for (i1, j1), a in self.terms.items():
            for (i2, j2), b in other.terms.items():
                i, j = i1 + i2, j1 + j2
                if i + j < n:
                    key = (i, j)
                    out[key] = out.get(key, Fraction(0)) + a * b
        return BiSeries(out, n)

    __rmul__ = __mul__

    def min_total_degree(self):
        return min((i + j for i, j in self.terms), default=self.prec)

    def inverse(self):
        c0 = self.terms.get((0, 0), Fraction(0))
        if c0 == 0:
            raise ZeroDivisionError("bivariate series has no inverse")
        rest = (self - c0) * (1 / c0)
        # geometric series: (1/c0) * sum (-rest)^k
        out = BiSeries.constant(0, self.prec)
        power = BiSeries.constant(1, self.prec)
        for k in range(self.prec):
            out = out + power
            power = power * (-rest)
            if not power.terms:
                break
        return out * (1 / c0)

    def substitute(self, s1: "BiSeries", s2: "BiSeries") -> "BiSeries":
        """Evaluate at (s1, s2); both must have no constant term."""
        n = min(self.prec, s1.prec, s2.prec)
        pow1 = [BiSeries.constant(1, n)]
        pow2 = [BiSeries.constant(1, n)]
        max_i = max((i for i, _ in self.terms), default=0)
        max_j = max((j for _, j in self.terms), default=0)
        for _ in range(max_i):
            pow1.append(pow1[-1] * s1)
        for _ in range(max_j):
            pow2.append(pow2[-1] * s2)
        out = BiSeries.constant(0, n)
        for (i, j), c in self.terms.items():
            out = out + pow1[i] * pow2[j] * c
        return out

    def swap(self):
        return BiSeries({(j, i): v for (i, j), v in self.terms.items()}, self.prec)

    def set_z2(self, s: PowerSeries) -> PowerSeries:
        """Evaluate z2 = s(z1) for univariate s with no constant term."""
        n = min(self.prec, s.prec)
        by_j = {}
        for (i, j), c in self.terms.items():
            by_j.setdefault(j, {})[i] = c
        out = PowerSeries.zero(n)
        sp = [PowerSeries.constant(1, n)]
        for _ in range(max(by_j, default=0)):
            sp.append(sp[-1] * s.truncate(n))
        for j, row in by_j.items():
            coeffs = [Fraction(0)] * n
            for i, c in row.items():
                if i < n:
                    coeffs[i] = c
            out = out + PowerSeries(coeffs, n) * sp[j]
        return out

    def divide_z2_minus_z1(self) -> "BiSeries":
        """Exact division by (z2 - z1)."""
        rows = {}
        for (i, j), c in self.terms.items():
            rows.setdefault(j, {})[i] = c
        max_j = max(rows, default=0)
        # a_j = q_{j-1} - z1 * q_j  =>  q_{j-1} = a_j + z1 * q_j
        q = {}
        cur = {}  # q_j as dict i -> coeff, starting above the top
        for j in range(max_j, 0, -1):
            a_j = rows.get(j, {})
            nxt = dict(a_j)
            for i, c in cur.items():
                nxt[i + 1] = nxt.get(i + 1, Fraction(0)) + c
            q[j - 1] = {i: c for i, c in nxt.items() if c}
            cur = q[j - 1]
        # consistency: a_0 = -z1 * q_0
        out = {}
        for j, row in q.items():
            for i, c in row.items():
                if i + j < self.prec - 1:
                    out[(i, j)] = c
        return BiSeries(out, self.prec - 1)

    def __repr__(self):
        items = sorted(self.terms.items())
        body = " + ".join(f"{c}*z1^{i}*z2^{j}" for (i, j), c in items[:12])
        more = " + ..." if len(items) > 12 else ""
        return f"BiSeries({body}{more}, prec={self.prec})"


def inversion_series(m: WeierstrassModel, N: int) -> PowerSeries:
    """i(z): the parameter of the inverse point, i(z) = -z - a1 z^2 - ..."""
    exp = formal_expansion(m, N + 2)
    num = exp.x
    den = exp.y + exp.x * m.a1 + m.a3
    return (num / den).power_series().truncate(N + 1)


def group_law(m: WeierstrassModel, N: int) -> BiSeries:
    """The formal group law F(z1, z2) = z1 + z2 + ..., computed from the
    chord construction in the (z, w) plane; truncated at total degree N."""
    if N < 3:
        raise PrecisionError("order must be at least 3")
    a1, a2, a3, a4, a6 = m.ainvs()
    prec = N + 1
    w = formal_expansion(m, prec + 3).w
    w1 = BiSeries.from_univariate(w, 1, prec + 2)
    w2 = BiSeries.from_univariate(w, 2, prec + 2)
    z1 = BiSeries.variable(1, prec)
    z2 = BiSeries.variable(2, prec)
    lam = (w2 - w1).divide_z2_minus_z1()
    lam = BiSeries(lam.terms, prec)
    nu = BiSeries(w1.terms, prec) - lam * z1
    den = (lam * a2 + 1) + lam * lam * a4 + lam * lam * lam * a6
    numer = lam * a1 + nu * a2 + lam * lam * a3 + lam * nu * (2 * a4) \
        + lam * lam * nu * (3 * a6)
    z3 = -z1 - z2 - numer * den.inverse()
    inv = inversion_series(m, prec)
    # F = i(z3): compose univariate into bivariate
    n = prec
    out = BiSeries.constant(0, n)
    power = BiSeries.constant(1, n)
    for k, c in enumerate(inv.coeffs[:n]):
        if c:
            out = out + power * c
        power = power * z3
        if not power.terms:
            break
    return out


@dataclass
class FormalHomomorphism:
    """Phi(T) = a1 T + a2 T^2 + ... induced on formal groups by an isogeny
    expressed on chosen (usually minimal) models."""

    series: PowerSeries

    @property
    def a1(self) -> Fraction:
        return self.series[1]

    def leading_valuation(self, p: int):
        return valuation(self.a1, p)


def _parameter_change(x_l, y_l, tau):
    """Parameter-side coordinate change: given x, y Laurent series on the
    source model and tau with transform(source, tau) = target, return the
    (x', y') series on the target model."""
    u, r, s, t = tau.u, tau.r, tau.s, tau.t
    xs = (x_l - r) * Fraction(1, u * u)
    ys = (y_l - (x_l - r) * s - t) * Fraction(1, u ** 3)
    return xs, ys


def isogeny_series(
    iso: IsogenyData,
    N: int,
    domain_minimal=None,
    codomain_minimal=None,
) -> FormalHomomorphism:
    """The formal homomorphism between the formal groups of the minimal
    models, as the composite of three substitutions: minimal-to-Velu model
    change, the Velu maps, then the Velu-to-minimal change on the codomain.

    The valuation of the leading coefficient is an output of the series
    computation, independent of the differential-scaling route.
    """
    p = iso.degree
    if domain_minimal is None:
        md, tau_d = minimal_model(iso.domain, p)
    else:
        md, tau_d = domain_minimal
    if codomain_minimal is None:
        mc, tau_c = minimal_model(iso.codomain, p)
    else:
        mc, tau_c = codomain_minimal

    work = N + 6
    exp = formal_expansion(md, work)
    # md -> Velu domain model
    sigma = tau_d.inverse()
    x_dom, y_dom = _parameter_change(exp.x, exp.y, sigma)
    # Velu maps
    prec = work
    X = eval_rational(iso.x_map, x_dom, prec)
    Pp = eval_rational(iso.y_map_a, x_dom, prec)
    Qq = eval_rational(iso.y_map_b, x_dom, prec)
    Y = Pp + Qq * y_dom
    # Velu codomain -> mc
    x_mc, y_mc = _parameter_change(X, Y, tau_c)
    phi = (-(x_mc / y_mc)).power_series().truncate(N + 1)
    if phi.prec < 2:
        raise PrecisionError("truncation insufficient for the leading coefficient")
    return FormalHomomorphism(phi)


def formal_height(m: WeierstrassModel, p: int, N: int = None) -> int:
    """Height of the reduction: 1 if the first nonvanishing coefficient of
    [p](z) mod p sits in degree p, 2 if in degree p^2.  Requires good
    reduction at p."""
    if N is None:
        N = default_order(p)
    if N < p * p + 1:
        raise PrecisionError(f"need N >= p^2 + 1 = {p * p + 1}")
    data = tate_algorithm(m, p)
    if data.v_min != 0:
        raise ValueError("formal height requires good reduction at p")
    mul = multiplication_series(data.minimal_model, p, N)
    red = mul.reduce_mod(p)
    for i, c in enumerate(red):
        if c:
            if i == p:
                return 1
            if i == p * p:
                return 2
            raise RuntimeError(
                f"first nonzero coefficient of [p] mod p at unexpected degree {i}"
            )
    raise PrecisionError("[p] vanished mod p to the working precision")


def reduced_x_map(iso: IsogenyData, p: int):
    """The x-coordinate map between minimal models, reduced mod p: a pair
    of ModPoly (numerator, denominator)."""
    md, tau_d = minimal_model(iso.domain, p)
    mc, tau_c = minimal_model(iso.codomain, p)
    sigma = tau_d.inverse()
    # x on md -> x on Velu domain: x_dom = (x - sigma.r)/sigma.u^2
    to_velu = RationalFunction(
        Polynomial([-sigma.r, 1]) * (1 / sigma.u ** 2)
    )
    from_velu = RationalFunction(
        Polynomial([-tau_c.r, 1]) * (1 / tau_c.u ** 2)
    )
    total = from_velu.compose(iso.x_map.compose(to_velu))
    num, den = total.num, total.den
    shift = min(num.content_valuation(p), den.content_valuation(p))
    scale = Fraction(1, p) ** shift if shift >= 0 else Fraction(p) ** (-shift)
    num = num * scale
    den = den * scale
    try:
        nbar = ModPoly([residue(c, p) for c in num.coeffs], p)
        dbar = ModPoly([residue(c, p) for c in den.coeffs], p)
    except NonIntegralError as exc:
        raise NonIntegralError(f"reduced x-map is not p-integral: {exc}") from exc
    if not dbar:
        raise NonIntegralError("reduced x-map denominator vanishes mod p")
    return nbar, dbar


def separability_shadow(iso: IsogenyData, p: int) -> bool:
    """Separability of the reduced isogeny between the special fibers:
    true iff the formal derivative of the reduced x-map is nonzero."""
    data = tate_algorithm(iso.domain, p)
    if data.v_min != 0:
        raise ValueError("separability shadow requires good reduction at p")
    nbar, dbar = reduced_x_map(iso, p)
    wronskian = nbar.derivative() * dbar - nbar * dbar.derivative()
    return bool(wronskian)


def isogeny_series_conjugate_check(iso: IsogenyData, dual: IsogenyData, p: int, N: int):
    """Verify that the two formal homomorphisms compose to the
    multiplication-by-p series on the domain's minimal model, after the
    unimodular parameter change identifying the dual's codomain with it.

    Returns (ok, detail)."""
    md, tau_d = minimal_model(iso.domain, p)
    mc, tau_c = minimal_model(iso.codomain, p)
    mdd, tau_dd = minimal_model(dual.codomain, p)
    phi = isogeny_series(iso, N, (md, tau_d), (mc, tau_c))
    phi_dual = isogeny_series(dual, N, (mc, tau_c), (mdd, tau_dd))
    composite = phi_dual.series.compose(phi.series)
    if mdd != md:
        iota = find_isomorphism(mdd, md)
        if iota is None:
            return False, "dual codomain minimal model not isomorphic to domain"
        exp = formal_expansion(mdd, N + 6)
        x2, y2 = _parameter_change(exp.x, exp.y, iota)
        conj = (-(x2 / y2)).power_series().truncate(N + 1)
        composite = conj.compose(composite)
    mul = multiplication_series(md, p, N)
    order = min(composite.prec, mul.prec)
    for i in range(order):
        if composite[i] != mul[i]:
            return False, f"composite differs from [p] at degree {i}"
    return True, f"composite equals [p] to order {order}"

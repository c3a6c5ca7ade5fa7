"""Weierstrass models, standard invariants, and coordinate changes.

The transformation convention is x = u^2 x' + r, y = u^3 y' + s u^2 x' + t,
so the discriminant scales as Delta' = u^-12 Delta and the invariant
differential as omega' = u * omega.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .exactnum import SingularModelError, valuation


@dataclass(frozen=True)
class WeierstrassModel:
    a1: Fraction
    a2: Fraction
    a3: Fraction
    a4: Fraction
    a6: Fraction

    def __post_init__(self):
        for name in ("a1", "a2", "a3", "a4", "a6"):
            object.__setattr__(self, name, Fraction(getattr(self, name)))

    @classmethod
    def from_list(cls, ainvs):
        a = [Fraction(str(c)) for c in ainvs]
        if len(a) != 5:
            raise ValueError("expected [a1, a2, a3, a4, a6]")
        return cls(*a)

    def ainvs(self):
        return (self.a1, self.a2, self.a3, self.a4, self.a6)

    def to_list(self):
        return [str(c) for c in self.ainvs()]

    def __repr__(self):
        return f"WeierstrassModel({', '.join(str(c) for c in self.ainvs())})"


@dataclass(frozen=True)
class StandardInvariants:
    b2: Fraction
    b4: Fraction
    b6: Fraction
    b8: Fraction
    c4: Fraction
    c6: Fraction
    disc: Fraction
    j: Fraction


def invariants(m: WeierstrassModel, allow_singular=False) -> StandardInvariants:
    """The standard b-, c-, discriminant and j invariants of a model."""
    a1, a2, a3, a4, a6 = m.ainvs()
    b2 = a1 * a1 + 4 * a2
    b4 = 2 * a4 + a1 * a3
    b6 = a3 * a3 + 4 * a6
    b8 = a1 * a1 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4
    c4 = b2 * b2 - 24 * b4
    c6 = -b2 ** 3 + 36 * b2 * b4 - 216 * b6
    disc = -b2 * b2 * b8 - 8 * b4 ** 3 - 27 * b6 * b6 + 9 * b2 * b4 * b6
    if disc == 0:
        if not allow_singular:
            raise SingularModelError(f"model {m} is singular (discriminant 0)")
        j = Fraction(0)
    else:
        j = c4 ** 3 / disc
    return StandardInvariants(b2, b4, b6, b8, c4, c6, disc, j)


@dataclass(frozen=True)
class Transformation:
    u: Fraction
    r: Fraction = Fraction(0)
    s: Fraction = Fraction(0)
    t: Fraction = Fraction(0)

    def __post_init__(self):
        for name in ("u", "r", "s", "t"):
            object.__setattr__(self, name, Fraction(getattr(self, name)))
        if self.u == 0:
            raise ValueError("transformation scale u must be nonzero")

    @classmethod
    def identity(cls):
        return cls(Fraction(1))

    def is_identity(self):
        return self.u == 1 and self.r == 0 and self.s == 0 and self.t == 0

    def compose(self, other: "Transformation") -> "Transformation":
        """The single transformation equal to applying self, then other."""
        u1, r1, s1, t1 = self.u, self.r, self.s, self.t
        u2, r2, s2, t2 = other.u, other.r, other.s, other.t
        return Transformation(
            u1 * u2,
            r1 + u1 * u1 * r2,
            s1 + u1 * s2,
            t1 + u1 * u1 * s1 * r2 + u1 ** 3 * t2,
        )

    def inverse(self) -> "Transformation":
        u, r, s, t = self.u, self.r, self.s, self.t
        return Transformation(1 / u, -r / u ** 2, -s / u, (r * s - t) / u ** 3)


def transform(m: WeierstrassModel, t: Transformation) -> WeierstrassModel:
    """The model in the new coordinates (x', y')."""
    a1, a2, a3, a4, a6 = m.ainvs()
    u, r, s, tt = t.u, t.r, t.s, t.t
    b1 = (a1 + 2 * s) / u
    b2 = (a2 - s * a1 + 3 * r - s * s) / u ** 2
    b3 = (a3 + r * a1 + 2 * tt) / u ** 3
    b4 = (a4 - s * a3 + 2 * r * a2 - (tt + r * s) * a1 + 3 * r * r - 2 * s * tt) / u ** 4
    b6 = (a6 + r * a4 + r * r * a2 + r ** 3 - tt * a3 - tt * tt - r * tt * a1) / u ** 6
    return WeierstrassModel(b1, b2, b3, b4, b6)


def _rational_nth_root(x: Fraction, n: int):
    """The rational n-th root of x, or None."""
    if x == 0:
        return Fraction(0)
    sign = 1
    if x < 0:
        if n % 2 == 0:
            return None
        sign = -1
        x = -x
    num = _int_nth_root(x.numerator, n)
    den = _int_nth_root(x.denominator, n)
    if num is None or den is None:
        return None
    return sign * Fraction(num, den)


def _int_nth_root(v: int, n: int):
    r = round(v ** (1 / n))
    for c in (r - 1, r, r + 1):
        if c >= 0 and c ** n == v:
            return c
    return None


def find_isomorphism(src: WeierstrassModel, dst: WeierstrassModel):
    """A Transformation t with transform(src, t) == dst, or None.

    Candidate scales u come from the invariant ratios Delta_src/Delta_dst
    = u^12, c4_src/c4_dst = u^4; the shifts r, s, t are then solved
    linearly and the result verified exactly.
    """
    inv_s = invariants(src)
    inv_d = invariants(dst)
    if inv_s.j != inv_d.j:
        return None
    u2: Fraction | None
    if inv_s.c4 != 0:
        u4 = inv_s.c4 / inv_d.c4
        u2 = _rational_nth_root(u4, 2)
    elif inv_s.c6 != 0:
        u6 = inv_s.c6 / inv_d.c6
        u2 = _rational_nth_root(u6, 3)
    else:  # c4 = c6 = 0 would force Delta = 0
        return None
    if u2 is None or u2 <= 0:
        return None
    u = _rational_nth_root(u2, 2)
    if u is None:
        return None
    for uu in (u, -u):
        s = (uu * dst.a1 - src.a1) / 2
        r = (uu ** 2 * dst.a2 - src.a2 + s * src.a1 + s * s) / 3
        t = (uu ** 3 * dst.a3 - src.a3 - r * src.a1) / 2
        cand = Transformation(uu, r, s, t)
        if transform(src, cand) == dst:
            return cand
    return None


def differential_scale(src: WeierstrassModel, dst: WeierstrassModel, p: int) -> int:
    """val_p(u) for the transformation connecting two isomorphic models.

    Equals (val_p(Delta_src) - val_p(Delta_dst)) / 12; raises if the models
    are visibly non-isomorphic or the valuation difference is not a
    multiple of 12.
    """
    inv_s = invariants(src)
    inv_d = invariants(dst)
    if inv_s.j != inv_d.j:
        raise ValueError("models are not isomorphic (distinct j-invariants)")
    diff = valuation(inv_s.disc, p) - valuation(inv_d.disc, p)
    if diff % 12 != 0:
        raise ValueError(
            f"models are not isomorphic over K: val(Delta) differs by {diff}"
        )
    return diff // 12

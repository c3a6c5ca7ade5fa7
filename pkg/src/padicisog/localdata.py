"""Tate's algorithm at an odd prime: minimal models, Kodaira types,
geometric component counts, the conductor via Ogg's formula, and
classification of the reduction type.

Root-multiplicity checks along the way are geometric (they decide
multiplicities, not rationality of roots), so the component count m is
the number of components over the algebraic closure of the residue field.
Curves are ingested with rational coefficients and interpreted over the
unramified field of residue degree f; since that base change is
unramified, every quantity below is computed exactly as over Q_p.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .exactnum import INF, ModPoly, SingularModelError, residue, valuation
from .weierstrass import (
    Transformation,
    WeierstrassModel,
    invariants,
    transform,
)


@dataclass(frozen=True)
class KodairaType:
    """One of I0, In, II, III, IV and their starred versions."""

    kind: str  # "I", "II", "III", "IV", "I*", "II*", "III*", "IV*"
    n: int = 0  # only meaningful for kinds "I" and "I*"

    _COMPONENTS = {
        "II": 1,
        "III": 2,
        "IV": 3,
        "IV*": 7,
        "III*": 8,
        "II*": 9,
    }

    def __post_init__(self):
        if self.kind in ("I", "I*"):
            if self.n < 0:
                raise ValueError(f"I{self.n} is not a Kodaira type")
        elif self.kind not in self._COMPONENTS:
            raise ValueError(f"unknown Kodaira kind {self.kind!r}")

    def components(self) -> int:
        if self.kind == "I":
            return max(self.n, 1)
        if self.kind == "I*":
            return self.n + 5
        return self._COMPONENTS[self.kind]

    def label(self) -> str:
        """Serialized name; starred types render with a trailing 's'."""
        if self.kind == "I":
            return f"I{self.n}"
        if self.kind == "I*":
            return f"I{self.n}s"
        return self.kind.replace("*", "s")

    @classmethod
    def from_label(cls, s: str):
        s = s.strip().replace("*", "s")
        starred = s.endswith("s")
        core = s[:-1] if starred else s
        if core.startswith("I") and core[1:].isdigit():
            return cls("I*" if starred else "I", int(core[1:]))
        kind = core + ("*" if starred else "")
        return cls(kind)

    def __repr__(self):
        return self.label()


def geometric_components(k: KodairaType) -> int:
    """Number of irreducible components of the special fiber over the
    algebraic closure of the residue field."""
    return k.components()


def conductor_via_ogg(v_min: int, m: int) -> int:
    """Ogg's formula solved for the conductor exponent: v_min - m + 1."""
    if v_min < 0 or m < 1:
        raise ValueError("need v_min >= 0 and m >= 1")
    f = v_min - m + 1
    if f < 0:
        raise ValueError(f"inconsistent inputs: Ogg gives conductor {f} < 0")
    return f


GOOD_ORDINARY = "good-ordinary"
GOOD_SUPERSINGULAR = "good-supersingular"
MULTIPLICATIVE = "multiplicative"
ADDITIVE_POT_MULT = "additive-potentially-multiplicative"
ADDITIVE_POT_ORDINARY = "additive-potentially-ordinary"
ADDITIVE_POT_SUPERSINGULAR = "additive-potentially-supersingular"


@dataclass(frozen=True)
class LocalData:
    minimal_model: WeierstrassModel
    transformation: Transformation  # input model -> minimal model
    v_min: int
    kodaira: KodairaType
    m: int
    conductor_exponent: int
    reduction: str

    def to_record(self):
        return {
            "v_min": self.v_min,
            "kodaira": self.kodaira.label(),
            "m": self.m,
            "conductor": self.conductor_exponent,
            "reduction": self.reduction,
        }


def _check_prime(p):
    if p < 3:
        raise ValueError(f"only odd primes are supported, got p={p}")


def _integralizing_exponent(m: WeierstrassModel, p: int) -> int:
    """Smallest k >= 0 such that scaling by u = p^-k makes the model p-integral."""
    k = 0
    for i, a in zip((1, 2, 3, 4, 6), m.ainvs()):
        v = valuation(a, p)
        if v < 0:
            k = max(k, math.ceil(-v / i))
    return k


def _singular_point(m: WeierstrassModel, p: int):
    """The unique singular point of the reduced curve mod p, by direct scan."""
    a1, a2, a3, a4, a6 = (residue(a, p) for a in m.ainvs())
    for x in range(p):
        for y in range(p):
            f = (y * y + a1 * x * y + a3 * y - x ** 3 - a2 * x * x - a4 * x - a6) % p
            fx = (a1 * y - 3 * x * x - 2 * a2 * x - a4) % p
            fy = (2 * y + a1 * x + a3) % p
            if f == 0 and fx == 0 and fy == 0:
                return x, y
    raise SingularModelError("reduced curve is smooth; no singular point exists")


def _quad_roots(a, b, c, p):
    """(distinct, double_root) for a*X^2 + b*X + c over F_p, a != 0 mod p."""
    disc = (b * b - 4 * a * c) % p
    if disc != 0:
        return True, None
    return False, (-b * pow(2 * a, -1, p)) % p


def tate_algorithm(model: WeierstrassModel, p: int) -> LocalData:
    """Run Tate's algorithm over the p-adic integers (p odd).

    Returns the minimal model, the transformation reaching it, the Kodaira
    type, the geometric component count and the conductor exponent (via
    Ogg's formula, which is exact also in the wild p = 3 cases).
    """
    _check_prime(p)
    invariants(model)  # raises on singular input
    tau = Transformation.identity()
    m = model

    def apply(tr):
        nonlocal tau, m
        tau = tau.compose(tr)
        m = transform(m, tr)

    k = _integralizing_exponent(m, p)
    if k:
        apply(Transformation(Fraction(1, p ** k)))

    while True:
        iv = invariants(m)
        n = valuation(iv.disc, p)
        if n == 0:
            return _finish(model, m, tau, n, KodairaType("I", 0))

        x0, y0 = _singular_point(m, p)
        if x0 or y0:
            apply(Transformation(1, x0, 0, y0))
            iv = invariants(m)

        if valuation(iv.b2, p) == 0:
            return _finish(model, m, tau, n, KodairaType("I", n))

        if valuation(m.a6, p) < 2:
            return _finish(model, m, tau, n, KodairaType("II"))
        if valuation(iv.b8, p) < 3:
            return _finish(model, m, tau, n, KodairaType("III"))
        if valuation(iv.b6, p) < 3:
            return _finish(model, m, tau, n, KodairaType("IV"))

        # Normalize so that p | a1, a2; p^2 | a3, a4; p^3 | a6.
        s0 = -residue(m.a1, p) * pow(2, -1, p) % p
        if s0:
            apply(Transformation(1, 0, s0, 0))
        t0 = -residue(m.a3, p, 2) * pow(2, -1, p * p) % (p * p)
        if t0:
            apply(Transformation(1, 0, 0, t0))
        assert valuation(m.a2, p) >= 1
        assert valuation(m.a4, p) >= 2 and valuation(m.a6, p) >= 3

        # P(T) = T^3 + a2/p T^2 + a4/p^2 T + a6/p^3 over F_p.
        P = ModPoly(
            [residue(m.a6 / p ** 3, p), residue(m.a4 / p ** 2, p),
             residue(m.a2 / p, p), 1],
            p,
        )
        mult, root = _cubic_repeated_root(P)
        if mult == 1:
            return _finish(model, m, tau, n, KodairaType("I*", 0))

        if mult == 2:
            if root:
                apply(Transformation(1, p * root, 0, 0))
            return _instar(model, m, tau, n, p, apply_ref=(apply, lambda: m))

        # Triple root.
        if root:
            apply(Transformation(1, p * root, 0, 0))
        assert valuation(m.a2, p) >= 2
        assert valuation(m.a4, p) >= 3 and valuation(m.a6, p) >= 4

        distinct, y1 = _quad_roots(
            1, residue(m.a3 / p ** 2, p), residue(-m.a6 / p ** 4, p), p
        )
        if distinct:
            return _finish(model, m, tau, n, KodairaType("IV*"))
        if y1:
            apply(Transformation(1, 0, 0, p * p * y1))
        assert valuation(m.a3, p) >= 3 and valuation(m.a6, p) >= 5

        if valuation(m.a4, p) < 4:
            return _finish(model, m, tau, n, KodairaType("III*"))
        if valuation(m.a6, p) < 6:
            return _finish(model, m, tau, n, KodairaType("II*"))

        # Non-minimal: scale by u = p and restart.
        apply(Transformation(Fraction(p)))


def _cubic_repeated_root(P: ModPoly):
    """(max multiplicity, repeated root or None) for a monic cubic over F_p.

    Repeated roots of a cubic with coefficients in F_p always lie in F_p,
    so a direct scan suffices.
    """
    p = P.p
    best_mult, best_root = 1, None
    for r in range(p):
        if P(r) != 0:
            continue
        lin = ModPoly([-r, 1], p)
        q, rem = P.divrem(lin)
        mult = 1
        while not rem and q.degree >= 0:
            q, rem = q.divrem(lin)
            if rem:
                break
            mult += 1
        if mult > best_mult:
            best_mult, best_root = mult, r
    return best_mult, best_root


def _instar(model, m, tau, n, p, apply_ref):
    """Sub-procedure for type I_nu* (P had a double root, shifted to 0)."""
    apply, current = apply_ref
    a21 = residue(m.a2 / p, p)
    assert a21 != 0
    nu = 1
    k = 2
    while True:
        m = current()
        assert valuation(m.a3, p) >= k and valuation(m.a6, p) >= 2 * k
        distinct, y1 = _quad_roots(
            1, residue(m.a3 / p ** k, p), residue(-m.a6 / p ** (2 * k), p), p
        )
        if distinct:
            break
        apply(Transformation(1, 0, 0, p ** k * y1))
        nu += 1

        m = current()
        assert valuation(m.a4, p) >= k + 1 and valuation(m.a6, p) >= 2 * k + 1
        distinct, x1 = _quad_roots(
            a21,
            residue(m.a4 / p ** (k + 1), p),
            residue(m.a6 / p ** (2 * k + 1), p),
            p,
        )
        if distinct:
            break
        apply(Transformation(1, p ** k * x1, 0, 0))
        nu += 1
        k += 1
        if nu > n:
            raise RuntimeError("I_n* procedure failed to terminate")
    return _finish(model, current(), tau, n, KodairaType("I*", nu))


def _finish(original, minimal, tau, v_min, kod):
    m_count = geometric_components(kod)
    cond = conductor_via_ogg(v_min, m_count)
    return LocalData(
        minimal_model=minimal,
        transformation=tau,
        v_min=v_min,
        kodaira=kod,
        m=m_count,
        conductor_exponent=cond,
        reduction="",  # filled by classify_reduction when requested
    )


def minimal_model(m: WeierstrassModel, p: int):
    """A p-minimal model of m and the transformation from m to it.

    Idempotent: an already p-integral model of minimal discriminant
    valuation is returned unchanged with the identity transformation.
    """
    _check_prime(p)
    data = tate_algorithm(m, p)
    if valuation(data.transformation.u, p) == 0 and _integralizing_exponent(m, p) == 0:
        return m, Transformation.identity()
    return data.minimal_model, data.transformation


def hasse_invariant_is_zero(a, b, p):
    """Supersingularity of y^2 = x^3 + a x + b over F_p (p >= 5): the
    coefficient of x^(p-1) in (x^3 + a x + b)^((p-1)/2) vanishes."""
    f = ModPoly([b, a, 0, 1], p)
    g = f ** ((p - 1) // 2)
    return g[p - 1] == 0


def is_supersingular_j(j_res: int, p: int) -> bool:
    """Whether an elliptic curve over F_p with the given j-invariant is
    supersingular, via the Hasse invariant.

    For p = 3 a curve y^2 = x^3 + a2 x^2 + ... is supersingular exactly
    when a2 vanishes, which happens only for j = 0.
    """
    _check_prime(p)
    j = j_res % p
    if p == 3:
        return j == 0
    if j == 0:
        return hasse_invariant_is_zero(0, 1, p)
    if j == 1728 % p:
        return hasse_invariant_is_zero(1, 0, p)
    # y^2 = x^3 + 3kx + 2k with k = j/(1728 - j) has j-invariant j.
    k = j * pow((1728 - j) % p, -1, p) % p
    return hasse_invariant_is_zero(3 * k % p, 2 * k % p, p)


def classify_reduction(m: WeierstrassModel, p: int, data: LocalData = None) -> str:
    """Reduction type at p, including the potential (after base change)
    good-reduction flavor for additive curves."""
    _check_prime(p)
    if data is None:
        data = tate_algorithm(m, p)
    iv = invariants(data.minimal_model)
    if data.v_min == 0:
        jr = residue(iv.j, p)
        return GOOD_SUPERSINGULAR if is_supersingular_j(jr, p) else GOOD_ORDINARY
    if valuation(iv.c4, p) == 0:
        return MULTIPLICATIVE
    if valuation(iv.j, p) < 0:
        return ADDITIVE_POT_MULT
    jr = residue(iv.j, p)
    if is_supersingular_j(jr, p):
        return ADDITIVE_POT_SUPERSINGULAR
    return ADDITIVE_POT_ORDINARY


def local_data(m: WeierstrassModel, p: int) -> LocalData:
    """tate_algorithm plus the reduction classification."""
    data = tate_algorithm(m, p)
    red = classify_reduction(m, p, data)
    return LocalData(
        minimal_model=data.minimal_model,
        transformation=data.transformation,
        v_min=data.v_min,
        kodaira=data.kodaira,
        m=data.m,
        conductor_exponent=data.conductor_exponent,
        reduction=red,
    )


def semistability_defect(v_min: int, p: int) -> int:
    """Minimal ramification degree over which a potentially good curve
    attains good reduction: 12 / gcd(v_min, 12).  Valid for p >= 5 only;
    the wild p = 3 case follows no such formula."""
    if p < 5:
        raise ValueError("semistability defect formula requires p >= 5")
    if v_min < 0:
        raise ValueError("v_min must be nonnegative")
    return 12 // math.gcd(v_min, 12)

from fractions import Fraction

import pytest

from padicisog.exactnum import Polynomial
from padicisog.formalgroup import (
    BiSeries,
    PowerSeries,
    PrecisionError,
    default_order,
    eval_poly,
    eval_rational,
    formal_expansion,
    formal_height,
    formal_log,
    group_law,
    isogeny_series,
    isogeny_series_conjugate_check,
    multiplication_series,
    separability_shadow,
)
from padicisog.isogeny import dual_isogeny, velu
from padicisog.localdata import minimal_model
from padicisog.weierstrass import WeierstrassModel

E_J0 = WeierstrassModel.from_list([0, 0, 0, 0, 1])
HESSIAN = WeierstrassModel.from_list([1, 0, 1, 0, 0])
CURVES = [
    E_J0,
    HESSIAN,
    WeierstrassModel.from_list([1, -1, 0, -2, -1]),
    WeierstrassModel.from_list([0, 0, 1, 0, 0]),
]


def test_power_series_precision_is_tracked():
    a = PowerSeries([1, 1], 2)
    b = PowerSeries([1, 2, 3], 3)
    assert (a * b).prec == 2
    with pytest.raises(PrecisionError):
        (a + b)[2]


@pytest.mark.parametrize("m", CURVES)
def test_expansion_satisfies_curve_equation(m):
    N = 14
    exp = formal_expansion(m, N)
    x, y = exp.x, exp.y
    a1, a2, a3, a4, a6 = m.ainvs()
    lhs = y * y + x * y * a1 + y * a3
    rhs = x * x * x + x * x * a2 + x * a4 + a6
    diff = lhs - rhs
    assert all(
        diff.series[i] == 0 for i in range(diff.series.prec)
    ), (m, diff)


def test_expansion_normalizations():
    exp = formal_expansion(E_J0, 10)
    assert exp.w[0] == exp.w[1] == exp.w[2] == 0
    assert exp.w[3] == 1
    assert exp.omega[0] == 1
    assert exp.x.shift == -2 and exp.x.series[0] == 1
    assert exp.y.shift == -3 and exp.y.series[0] == -1


def _identity_series(N):
    return PowerSeries([Fraction(0), Fraction(1)] + [Fraction(0)] * (N - 2), N)


def _apply_univariate(ps, B):
    """ps(B) for a univariate outer series and a bivariate inner one."""
    out = BiSeries.constant(0, B.prec)
    power = BiSeries.constant(1, B.prec)
    for k in range(ps.prec):
        if k:
            power = power * B
        out = out + power * ps[k]
    return out


@pytest.mark.parametrize("m", CURVES[:2])
def test_group_law_identity_and_commutativity(m):
    N = 9
    F = group_law(m, N)
    # F(z, 0) = z
    one_var = F.set_z2(PowerSeries.zero(N))
    assert one_var[1] == 1
    assert all(one_var[i] == 0 for i in range(2, one_var.prec))
    assert F.swap() == F


def test_homomorphism_law():
    # Phi(F(z1, z2)) = F'(Phi(z1), Phi(z2)) to the truncation order
    N = 8
    iso = velu(E_J0, Polynomial([0, 1]), 3)
    md, _ = minimal_model(iso.domain, 3)
    mc, _ = minimal_model(iso.codomain, 3)
    phi = isogeny_series(iso, N)
    F = group_law(md, N)
    Fp = group_law(mc, N)
    lhs = _apply_univariate(phi.series, F)
    rhs = Fp.substitute(
        BiSeries.from_univariate(phi.series, 1, N),
        BiSeries.from_univariate(phi.series, 2, N),
    )
    assert lhs == rhs


def test_multiplication_series_two_routes():
    # [2] via log/exp must match the direct doubling F(z, z)
    for m in CURVES[:2]:
        N = 10
        mul2 = multiplication_series(m, 2, N)
        F = group_law(m, N)
        doubled = F.set_z2(_identity_series(N))
        for i in range(1, min(mul2.prec, doubled.prec)):
            assert mul2[i] == doubled[i], (m, i)


def test_formal_log_inverts():
    L = formal_log(E_J0, 12)
    z = L.reversion().compose(L)
    assert z[1] == 1
    assert all(z[i] == 0 for i in range(2, z.prec))


def test_isogeny_series_leading_valuations():
    iso = velu(E_J0, Polynomial([0, 1]), 3)
    dual = dual_isogeny(iso)
    phi = isogeny_series(iso, 13)
    phi_dual = isogeny_series(dual, 13)
    assert phi.leading_valuation(3) == 0
    assert phi_dual.leading_valuation(3) == 1


def test_isogeny_series_composition_is_mulp():
    iso = velu(E_J0, Polynomial([0, 1]), 3)
    dual = dual_isogeny(iso)
    ok, detail = isogeny_series_conjugate_check(iso, dual, 3, 10)
    assert ok, detail


def test_formal_height():
    assert formal_height(WeierstrassModel.from_list([0, 0, 0, 1, 0]), 3) == 2
    assert formal_height(HESSIAN, 3) == 1
    assert formal_height(WeierstrassModel.from_list([0, 0, 0, 0, 1]), 5) == 2
    with pytest.raises(ValueError):
        formal_height(WeierstrassModel.from_list([0, 0, 1, 0, 0]), 3)  # additive


def test_separability_shadow():
    iso = velu(HESSIAN, Polynomial([0, 1]), 3)
    dual = dual_isogeny(iso)
    assert separability_shadow(iso, 3) is True
    assert separability_shadow(dual, 3) is False


def test_default_order():
    assert default_order(3) == 13
    assert default_order(7) == 53

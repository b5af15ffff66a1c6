import math
from fractions import Fraction as F

import pytest
from hypothesis import given, strategies as st
from scipy import special

from netmttf.algebra import RatPoly
from netmttf.architectures import Architecture, reliability_polynomial
from netmttf.errors import DivergentMGF, DivergentMoment
from netmttf.moments import (
    Exponential,
    cumulants_from_moments,
    exact_moment,
    exact_moments,
    fan_limit_closed_form,
    fan_limit_moment,
    fan_limit_quadrature,
    kn_cumulant,
    kofn_mgf_closed_form,
    log_moment_integral,
    mgf_value,
    nonexp_moment,
    weibull,
)

p = RatPoly.x("p")


def R(family, n, k=None):
    return reliability_polynomial(Architecture(family, n, k))


def test_exact_moment_examples():
    assert exact_moment(R("series", 4)).value_exact == F(1, 4)
    assert exact_moment(R("parallel", 3)).value_exact == F(11, 6)
    assert exact_moment(R("k4ladder", 1)).value_exact == F(79, 60)


def test_units():
    r = exact_moment(R("parallel", 3), 2, lam=2.0)
    assert r.value == pytest.approx(float(r.value_exact) / 4)


def test_divergent_moment():
    with pytest.raises(DivergentMoment):
        exact_moment(RatPoly([1, 1]))


def test_cumulant_examples():
    lam_mu = [math.factorial(m) for m in range(1, 6)]
    assert cumulants_from_moments(lam_mu) == [math.factorial(m - 1) for m in range(1, 6)]
    assert cumulants_from_moments([0, 0]) == [0, 0]
    for n in (1, 3, 5):
        kap = cumulants_from_moments(exact_moments(R("series", n), 4))
        assert kap == [F(math.factorial(m - 1), n**m) for m in range(1, 5)]


def test_kn_cumulant_examples():
    assert kn_cumulant(2, 3, 2) == F(13, 36)
    assert kn_cumulant(4, 4, 1) == F(1, 4)
    assert kn_cumulant(1, 3, 1) == exact_moment(R("parallel", 3)).value_exact
    for m in (2, 3, 4):
        assert float(kn_cumulant(1, 6, m)) < math.factorial(m - 1) * special.zeta(m)


def test_kofn_cumulants_from_polynomials():
    for n in range(1, 7):
        for k in range(1, n + 1):
            kap = cumulants_from_moments(exact_moments(R("kofn", n, k), 4))
            assert kap == [kn_cumulant(k, n, m) for m in range(1, 5)]


def test_mgf():
    assert mgf_value(R("series", 3), F(1)) == F(3, 2)
    assert mgf_value(R("k4ladder", 2), 0) == 1
    assert mgf_value(R("kofn", 3, 2), 0.5) == pytest.approx(kofn_mgf_closed_form(2, 3, 0.5), rel=1e-13)
    with pytest.raises(DivergentMGF):
        mgf_value(R("series", 3), 3)


@pytest.mark.parametrize("family,n", [("k4ladder", 2), ("doublefan", 3), ("street3xn", 1)])
def test_mgf_derivatives_match_moments(family, n):
    poly = R(family, n)
    h = 1e-4
    f = lambda z: mgf_value(poly, z)  # noqa: E731
    d1 = (f(h) - f(-h)) / (2 * h)
    d2 = (f(h) - 2 * f(0.0) + f(-h)) / h**2
    mu = exact_moments(poly, 2)
    assert d1 == pytest.approx(mu[0].value, rel=1e-5)
    assert d2 == pytest.approx(mu[1].value, rel=1e-5)


def test_termwise_integrals():
    for k in range(1, 9):
        for m in range(1, 7):
            assert log_moment_integral(k, m) == pytest.approx(math.factorial(m - 1) / k**m, rel=1e-10)


def test_fan_limit_values():
    assert fan_limit_quadrature(1) == pytest.approx((9 + 2 * math.pi * math.sqrt(3)) / 27, rel=1e-12)
    m2 = 2 / 9 * special.polygamma(1, 1 / 3) - 4 / 27 * math.pi**2
    assert fan_limit_quadrature(2) == pytest.approx(m2, rel=1e-12)
    assert fan_limit_moment(1).value == pytest.approx(0.736400, abs=1e-6)
    assert fan_limit_moment(2, method="closed_form").value == pytest.approx(0.781302, abs=1e-6)


def test_fan_closed_form_agrees_with_quadrature():
    for m in range(1, 9):
        assert fan_limit_closed_form(m) == pytest.approx(fan_limit_quadrature(m), rel=1e-9)


def test_fan_high_order_trend():
    m = 12
    assert fan_limit_quadrature(m) / (math.factorial(m) / 2**m) == pytest.approx(1.0, abs=0.02)


def test_nonexp_examples():
    w = weibull(1.0, 2.0)
    assert nonexp_moment(p, w).value == pytest.approx(math.gamma(1.5), rel=1e-9)
    assert nonexp_moment(2 * p - p * p, w).value == pytest.approx((2 - 1 / math.sqrt(2)) * math.gamma(1.5), rel=1e-9)
    k4 = R("k4ladder", 2)
    assert nonexp_moment(k4, Exponential(1.0)).value == pytest.approx(float(exact_moment(k4).value_exact), rel=1e-9)
    assert nonexp_moment(k4, weibull(1.0, 1.0)).value == pytest.approx(float(exact_moment(k4).value_exact), rel=1e-9)


def test_weibull_model_parameters():
    w = weibull(2.0, 2.0)
    assert w.beta == -0.5 and w.a_beta == 0.25


@given(st.sampled_from(["series", "parallel", "k4ladder", "fan", "doublefan", "street3xn"]), st.integers(1, 6))
def test_variance_positive(family, n):
    mu = exact_moments(R(family, n), 2)
    assert cumulants_from_moments(mu)[1] > 0


def test_mttf_ordering():
    n = 3
    lo = exact_moment(R("series", n)).value_exact
    hi = exact_moment(R("parallel", n)).value_exact
    for fam in ("k4ladder", "fan", "doublefan", "street3xn"):
        v = exact_moment(R(fam, n)).value_exact
        assert lo <= v <= hi

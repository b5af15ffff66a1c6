import math
from fractions import Fraction as F

import pytest
from scipy import special

from netmttf.architectures import Architecture, eigen_data, reliability_polynomial
from netmttf.asymptotics import (
    EULER_GAMMA,
    GammaCombo,
    ParallelLike,
    SeriesLike,
    coefficient_of_variation_limit,
    doublefan_mttf_expansion,
    moment_expansion_series_like,
    mttf_expansion_parallel_like,
    nonexp_asymptotic_moment,
    nonexp_exponent,
    signature_from_eigen,
    signature_from_polynomials,
    watson_moment_expansion,
    weibull_equivalent,
)
from netmttf.errors import DegenerateRoot, InconsistentSizes, MissingCoefficient, NonzeroFirstCut
from netmttf.moments import Exponential, PowerLawHazard, exact_moment, weibull

G = GammaCombo.gamma


def sig(family, K=8):
    kind = "parallel_like" if family in ("doublefan", "parallel") else "series_like"
    return signature_from_eigen(eigen_data(family), kind, K)


def exact_mttf(family, n):
    return float(exact_moment(reliability_polynomial(Architecture(family, n))).value_exact)


def test_k4_signature():
    s = sig("k4ladder")
    assert s.i == 4
    assert [s.a(j) for j in (4, 5, 6, 7, 8)] == [1, 2, 0, -4, F(9, 2)]
    assert [s.ap(j) for j in range(1, 8)] == [0, 0, -2, 0, 4, -3, 6]


def test_street_signature():
    s = sig("street3xn")
    assert s.i == 3 and [s.a(j) for j in (3, 4, 5)] == [1, 4, 4]
    assert [s.ap(j) for j in range(1, 7)] == [0, -2, -4, 7, 22, 20]
    zeta = (-s.log_zeta).exp()
    assert zeta.coeffs[:7] == (1, 0, 0, -1, -4, -4, 14)


def test_doublefan_signature():
    s = sig("doublefan", 7)
    assert isinstance(s, ParallelLike)
    assert s.i == 2 and s.b(2) == 1 and s.b(3) == 2 and s.bp(1) == 0
    zeta = (-s.log_zeta).exp()
    assert zeta.coeffs[:8] == (1, 0, -1, -2, 2, 4, -8, -4)
    assert s.amplitude.coeffs[:8] == (1, 0, 0, 2, 0, -8, 12, 24)


def test_series_family_signature():
    s = sig("series")
    assert s.i == 1 and all(s.a(j) == F(1, j) for j in range(1, 9))
    assert all(v == 0 for v in s.alpha_prime.values())


@pytest.mark.parametrize("family", ["series", "k4ladder", "street3xn", "parallel", "doublefan"])
def test_polynomial_route_matches_eigen(family):
    kind = "parallel_like" if family in ("doublefan", "parallel") else "series_like"
    ref = sig(family)
    for sizes in ((20, 21), (20, 22), (21, 22)):
        polys = {n: reliability_polynomial(Architecture(family, n)) for n in sizes + (22,)}
        got = signature_from_polynomials(polys, kind, 8)
        assert got == ref


def test_inconsistent_sizes():
    polys = {n: reliability_polynomial(Architecture("k4ladder", n)) for n in (1, 2, 3)}
    with pytest.raises(InconsistentSizes):
        signature_from_polynomials(polys, "series_like", 8)


def test_street_from_low_order_unavailability():
    polys = {n: reliability_polynomial(Architecture("street3xn", n)) for n in (10, 11, 12)}
    s = signature_from_polynomials(polys, "series_like", 4)
    assert (s.i, s.a(3), s.ap(1), s.ap(2), s.ap(3)) == (3, 1, 0, -2, -4)


def test_fan_is_degenerate():
    with pytest.raises(DegenerateRoot):
        signature_from_eigen(eigen_data("fan"), "series_like", 6)


def test_k4_mttf_expansion():
    e = moment_expansion_series_like(sig("k4ladder"), 1)
    assert e.term(F(1, 4)).exact == G(F(5, 4))
    assert e.term(F(1, 2)).exact.is_zero()
    assert e.term(F(3, 4)).exact == G(F(3, 4), F(17, 32))
    assert e.term(F(3, 4)).coeff == pytest.approx(17 / 32 * math.gamma(0.75), rel=1e-12)


def test_k4_second_moment():
    e = moment_expansion_series_like(sig("k4ladder"), 2)
    assert e.term(F(1, 2)).coeff == pytest.approx(math.sqrt(math.pi) / 2, rel=1e-12)
    assert e.term(F(1, 2)).exact == G(F(1, 2), F(1, 2))
    assert e.term(F(3, 4)).exact.is_zero()
    assert e.term(1).coeff == pytest.approx(17 / 12, rel=1e-12)


def test_street_mttf_expansion():
    e = moment_expansion_series_like(sig("street3xn"), 1)
    assert e.term(F(1, 3)).exact == G(F(4, 3))
    assert e.term(F(2, 3)).exact == G(F(2, 3), F(-5, 9))
    assert e.term(1).coeff == pytest.approx(7 / 3, rel=1e-12)


@pytest.mark.parametrize("m", [1, 2, 3])
def test_street_general_m_second_term(m):
    e = moment_expansion_series_like(sig("street3xn"), m)
    want = -(5 * m / 6) * math.gamma(1 + (m + 1) / 3)
    assert e.term(F(m + 1, 3)).coeff == pytest.approx(want, rel=1e-12)


@pytest.mark.parametrize("family", ["series", "k4ladder", "street3xn"])
@pytest.mark.parametrize("m", [1, 2, 3])
def test_bracket_formula_matches_watson_engine(family, m):
    s = sig(family, 10)
    bracket = moment_expansion_series_like(s, m)
    watson = watson_moment_expansion(s.log_zeta, s.amplitude, m)
    for t in bracket.power_terms:
        assert watson.term(t.exponent).exact == t.exact


def test_k4_third_order_term():
    s = sig("k4ladder", 10)
    w = watson_moment_expansion(s.log_zeta, s.amplitude, 1)
    assert w.term(1).exact == G(1, F(-3, 4))


def test_missing_coefficient():
    s = SeriesLike(2, {2: F(1)}, {1: F(0)})
    with pytest.raises(MissingCoefficient):
        moment_expansion_series_like(s, 1, 1)


@pytest.mark.parametrize("family,i", [("series", 1), ("k4ladder", 4), ("street3xn", 3)])
def test_convergence_with_first_omitted_order(family, i):
    e = moment_expansion_series_like(sig(family), 1)
    scaled = [abs(exact_mttf(family, n) - e(n)) * n ** ((1 + 3) / i) for n in (16, 32, 64, 128, 256)]
    assert max(scaled) < 2 * min(scaled) + 1e-12


def test_parallel_like_examples():
    e = mttf_expansion_parallel_like(sig("doublefan"))
    assert e.log_coeff == 0.5
    assert e.const_coeff == pytest.approx(EULER_GAMMA / 2, rel=1e-15)
    assert e.term(F(1, 2)).coeff == pytest.approx(math.sqrt(math.pi) / 2, rel=1e-12)
    par = mttf_expansion_parallel_like(sig("parallel"))
    assert par.log_coeff == 1.0 and par.const_coeff == pytest.approx(EULER_GAMMA)
    for n in (50, 100, 200):
        assert abs(par(n) - exact_mttf("parallel", n)) < 1 / n**2
    double_links = ParallelLike(2, {2: F(1), 3: F(0)}, {1: F(0)})
    e2 = mttf_expansion_parallel_like(double_links)
    assert e2.term(F(1, 2)).coeff == 0.0


def test_exact_harmonic_mode():
    par = sig("parallel")
    for n in (5, 10, 40):
        assert mttf_expansion_parallel_like(par, "exact_harmonic", n) == pytest.approx(exact_mttf("parallel", n), abs=1e-12)


def test_doublefan_error_shrinks():
    e = doublefan_mttf_expansion()
    errs = [abs(exact_mttf("doublefan", n) - e(n)) for n in (8, 16, 32, 64)]
    assert all(b < a for a, b in zip(errs, errs[1:]))


def test_coefficient_of_variation():
    assert coefficient_of_variation_limit(1) == pytest.approx(1.0)
    assert coefficient_of_variation_limit(sig("k4ladder")) == pytest.approx(0.2805, abs=1e-4)
    direct = math.sqrt(math.gamma(5 / 3) / math.gamma(4 / 3) ** 2 - 1)
    assert coefficient_of_variation_limit(sig("street3xn")) == pytest.approx(direct, rel=1e-12)
    assert coefficient_of_variation_limit(3) == pytest.approx(0.3634, abs=1e-4)


def test_weibull_equivalent_parameters():
    assert weibull_equivalent(sig("street3xn"), 1).a_ip1 == F(5, 2)
    k4 = weibull_equivalent(sig("k4ladder"), 1)
    assert (k4.i, k4.a_i, k4.a_ip1) == (4, 1, 0)
    s0 = weibull_equivalent(sig("series"), 0)
    assert s0.a_i == 1 and s0.a_ip1 is None
    with pytest.raises(NonzeroFirstCut):
        weibull_equivalent(SeriesLike(2, {2: F(1), 3: F(0)}, {1: F(1)}), 1)


@pytest.mark.parametrize("m", [1, 2])
def test_weibull_equivalent_moments_match(m):
    s = sig("street3xn")
    W = weibull_equivalent(s, 1)
    eta = moment_expansion_series_like(s, m)
    for wt, et in zip(W.moment_terms(m, 2), eta.power_terms[:2]):
        assert wt.exponent == et.exponent
        assert wt.coeff == pytest.approx(et.coeff, rel=1e-10, abs=1e-12)
    # quadrature of the surrogate tracks the same two terms at large n
    n = 10**6
    assert W.moment(m, n) == pytest.approx(sum(t.coeff * n ** (-float(t.exponent)) for t in W.moment_terms(m, 6)), rel=1e-8)


def test_nonexp_reductions():
    for fam in ("series", "k4ladder", "street3xn"):
        s = sig(fam)
        lam = 2.0
        model = PowerLawHazard(0.0, 1 / lam)
        for m in (1, 2):
            for n in (10, 100):
                want = special.gamma(1 + m / s.i) / (lam**m * (n * float(s.a(s.i))) ** (m / s.i))
                assert nonexp_asymptotic_moment(s, model, m, n) == pytest.approx(want, rel=1e-8)
    assert nonexp_asymptotic_moment(sig("series"), PowerLawHazard(0.0, 1.0), 1, 7) == pytest.approx(1 / 7)


def test_weibull_exponent():
    w = weibull(1.0, 2.0)
    assert (w.beta, w.a_beta) == (-0.5, 0.5)
    assert nonexp_exponent(sig("street3xn"), w, 1) == pytest.approx(1 / 6)

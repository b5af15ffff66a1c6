from fractions import Fraction as F

import pytest
from hypothesis import given, strategies as st

from netmttf.algebra import RatPoly
from netmttf.architectures import (
    DF_DET,
    DF_TRACE,
    K4_TRACE,
    Architecture,
    DenominatorRoot,
    Explicit,
    Family,
    TwoEigen,
    eigen_data,
    graph,
    reliability_polynomial,
    reliability_sequence,
    street_d1,
    street_d2,
)
from netmttf.errors import NoGraphRealization, UnsupportedArchitecture
from netmttf.oracle import brute_force_polynomial

p = RatPoly.x("p")
interior = st.fractions(min_value=F(1, 100), max_value=F(99, 100), max_denominator=100)


def test_series_and_k4_examples():
    assert reliability_polynomial(Architecture("series", 4)) == p**4
    assert reliability_polynomial(Architecture("k4ladder", 1)).coeffs == tuple(F(c) for c in (0, 1, 2, 0, -7, 7, -2))


def test_doublefan_half():
    assert reliability_polynomial(Architecture("doublefan", 2))(F(1, 2)) == F(1, 2)


def test_street_zero():
    assert reliability_polynomial(Architecture("street3xn", 0)) == p * p


def test_kofn_binomial():
    # 2-out-of-3: 3p^2(1-p) + p^3
    assert reliability_polynomial(Architecture("kofn", 3, 2)) == 3 * p**2 * (1 - p) + p**3


@pytest.mark.parametrize(
    "family,n_max",
    [("series", 6), ("parallel", 6), ("k4ladder", 3), ("fan", 4), ("doublefan", 4), ("street3xn", 2)],
)
def test_graphs_match_polynomials(family, n_max):
    for n in range(1, n_max + 1):
        a = Architecture(family, n)
        assert brute_force_polynomial(graph(a)) == reliability_polynomial(a), a


def test_graph_shapes():
    fan = graph(Architecture("fan", 1))
    assert (fan.node_count, fan.edge_count) == (3, 3)
    st1 = graph(Architecture("street3xn", 1))
    assert (st1.node_count, st1.edge_count) == (6, 7)
    s3 = graph(Architecture("series", 3))
    assert (s3.node_count, s3.edge_count) == (4, 3)


def test_fan_triangle_polynomial():
    assert reliability_polynomial(Architecture("fan", 1)) == p + (1 - p) * p * p


def test_invalid_architectures():
    with pytest.raises(UnsupportedArchitecture):
        Architecture("series", 0)
    with pytest.raises(UnsupportedArchitecture):
        Architecture("kofn", 3, 4)
    with pytest.raises(UnsupportedArchitecture):
        Architecture("kofn", 3)
    with pytest.raises(UnsupportedArchitecture):
        Architecture("moebius", 3)
    with pytest.raises(NoGraphRealization):
        graph(Architecture("kofn", 3, 2))


@pytest.mark.parametrize("family", [f.value for f in Family if f is not Family.KOFN])
def test_endpoint_values(family):
    for n in range(1, 7):
        R = reliability_polynomial(Architecture(family, n))
        assert R(0) == 0 and R(1) == 1


@given(interior)
def test_values_are_probabilities(x):
    for fam in ("k4ladder", "fan", "doublefan", "street3xn"):
        for n in (1, 3, 6):
            v = reliability_polynomial(Architecture(fam, n))(x)
            assert 0 <= v <= 1


@given(interior)
def test_doublefan_lower_bound(x):
    for n in range(1, 8):
        assert reliability_polynomial(Architecture("doublefan", n))(x) >= 1 - (1 - x * x) ** n


@given(interior)
def test_k4_ladder_decreasing(x):
    seq = reliability_sequence("k4ladder", 8)
    vals = [r(x) for r in seq[1:]]
    assert all(b <= a for a, b in zip(vals, vals[1:]))


def test_street_recurrence():
    # coefficients of D1 * D2 in z annihilate the sequence beyond the numerator degree
    d1, d2 = street_d1(), street_d2()
    char = [RatPoly([], "p")] * (len(d1) + len(d2) - 1)
    for i, a in enumerate(d1):
        for j, b in enumerate(d2):
            char[i + j] = char[i + j] + a * b
    seq = reliability_sequence("street3xn", 14)
    L = len(char) - 1
    for n in range(L + 2, len(seq)):
        total = sum((char[j] * seq[n - j] for j in range(L + 1)), RatPoly([], "p"))
        assert total.is_zero()


def test_two_eigen_recursions():
    for fam, quantity in (("k4ladder", "reliability"), ("doublefan", "unavailability")):
        ed = eigen_data(fam)
        assert isinstance(ed, TwoEigen) and ed.quantity == quantity
        seq = reliability_sequence(fam, 8)
        xs = seq if quantity == "reliability" else [1 - r for r in seq]
        xs = xs[1:]
        for a, b, c in zip(xs, xs[1:], xs[2:]):
            assert c == ed.trace * b - ed.det * a


def test_eigen_data_examples():
    assert eigen_data("k4ladder").trace == K4_TRACE == p * RatPoly([2, 4, -14, 13, -4])
    df = eigen_data("doublefan")
    assert df.trace == DF_TRACE and df.det == DF_DET == p * (1 - p) ** 3
    s = eigen_data("series")
    assert isinstance(s, Explicit) and s.zeta_plus == p and s.alpha_plus == 1
    assert isinstance(eigen_data("street3xn"), DenominatorRoot)

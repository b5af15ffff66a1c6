"""Moments, cumulants and MGF values of the system lifetime.

All exact results are returned in the dimensionless form lambda^m <t^m>
(time measured in units of 1/lambda). ``MomentResult.value`` restores units.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Sequence

import numpy as np
from scipy import integrate, special

from .algebra import RatPoly, as_fraction
from .errors import DivergentMGF, DivergentMoment, QuadratureError

__all__ = [
    "Exponential",
    "PowerLawHazard",
    "weibull",
    "MomentResult",
    "exact_moment",
    "exact_moments",
    "cumulants_from_moments",
    "kn_cumulant",
    "mgf_value",
    "kofn_mgf_closed_form",
    "fan_limit_moment",
    "fan_limit_closed_form",
    "fan_limit_quadrature",
    "nonexp_moment",
    "log_moment_integral",
]


# -- failure models ------------------------------------------------------------------


@dataclass(frozen=True)
class Exponential:
    lam: float = 1.0

    def __post_init__(self):
        if not self.lam > 0:
            raise ValueError("lambda must be > 0")

    def chi(self, p):
        return -np.log(p) / self.lam

    def neg_dchi(self, p):
        return 1.0 / (self.lam * p)

    def survival(self, t):
        return np.exp(-self.lam * t)

    def sample(self, rng: np.random.Generator, size) -> np.ndarray:
        return rng.exponential(1.0 / self.lam, size=size)


@dataclass(frozen=True)
class PowerLawHazard:
    """Component model with -chi'(p) ~ a_beta (1-p)^beta as p -> 1.

    ``chi`` is the inverse of the component reliability p(t); ``neg_dchi`` is
    -chi'(p); ``survival`` is p(t) itself. All are optional and only needed
    for quadrature or sampling.
    """

    beta: float
    a_beta: float
    chi: Callable[[float], float] | None = None
    neg_dchi: Callable[[float], float] | None = None
    sampler: Callable[[np.random.Generator, tuple], np.ndarray] | None = None
    survival: Callable[[float], float] | None = None

    def __post_init__(self):
        if not self.beta > -1:
            raise ValueError("beta must be > -1")
        if not self.a_beta > 0:
            raise ValueError("a_beta must be > 0")

    def sample(self, rng: np.random.Generator, size) -> np.ndarray:
        if self.sampler is None:
            raise ValueError("model has no sampler")
        return self.sampler(rng, size)


def weibull(lam: float, kappa: float) -> PowerLawHazard:
    """Component reliability p(t) = exp(-(lam t)^kappa).

    chi(p) = (-ln p)^(1/kappa) / lam, hence beta = 1/kappa - 1 and
    a_beta = 1/(kappa lam).
    """

    def chi(p):
        return (-np.log(p)) ** (1.0 / kappa) / lam

    def neg_dchi(p):
        u = -np.log(p)
        return u ** (1.0 / kappa - 1.0) / (kappa * lam * p)

    def sampler(rng, size):
        return rng.weibull(kappa, size=size) / lam

    def survival(t):
        return np.exp(-((lam * t) ** kappa))

    return PowerLawHazard(1.0 / kappa - 1.0, 1.0 / (kappa * lam), chi, neg_dchi, sampler, survival)


@dataclass(frozen=True)
class MomentResult:
    m: int
    value_exact: Fraction | None  # lambda^m <t^m>
    value_float: float  # lambda^m <t^m>
    lam: float = 1.0

    @property
    def value(self) -> float:
        """<t^m> in time^m units."""
        return self.value_float / self.lam**self.m

    def to_dict(self) -> dict:
        return {
            "m": self.m,
            "scaled_exact": None if self.value_exact is None else _fmt(self.value_exact),
            "scaled": self.value_float,
            "value": self.value,
            "lambda": self.lam,
        }


def _fmt(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}" if x.denominator != 1 else str(x.numerator)


# -- exact moments -------------------------------------------------------------------


def _inverse_power_sum(R: RatPoly, m: int) -> Fraction:
    """sum_k c_k / k^m over the polynomial's coefficients (k >= 1)."""
    num, den = R.numerators()
    if num and num[0]:
        raise DivergentMoment("reliability polynomial has a nonzero constant term")
    ks = [k for k, c in enumerate(num) if c]
    if not ks:
        return Fraction(0)
    L = 1
    for k in ks:
        L = math.lcm(L, k**m)
    total = sum(num[k] * (L // k**m) for k in ks)
    return Fraction(total, L * den)


def exact_moment(R: RatPoly, m: int = 1, lam: float = 1.0) -> MomentResult:
    """lambda^m <t^m> = m! sum_k c_k / k^m for exponential components."""
    if m < 1:
        raise ValueError("moment order must be >= 1")
    value = math.factorial(m) * _inverse_power_sum(R, m)
    return MomentResult(m, value, float(value), lam)


def exact_moments(R: RatPoly, m_max: int, lam: float = 1.0) -> list[MomentResult]:
    return [exact_moment(R, m, lam) for m in range(1, m_max + 1)]


def cumulants_from_moments(mu: Sequence) -> list:
    """kappa_1..kappa_M from raw moments mu_1..mu_M.

    Accepts MomentResult (exact values used when available) or plain numbers;
    kappa_m = mu_m - sum_{j=1}^{m-1} C(m-1, j-1) kappa_j mu_{m-j}.
    """
    vals = []
    for x in mu:
        if isinstance(x, MomentResult):
            vals.append(x.value_exact if x.value_exact is not None else x.value_float)
        else:
            vals.append(x)
    kappa: list = []
    for m in range(1, len(vals) + 1):
        k = vals[m - 1]
        for j in range(1, m):
            k -= math.comb(m - 1, j - 1) * kappa[j - 1] * vals[m - j - 1]
        kappa.append(k)
    return kappa


def kn_cumulant(k: int, n: int, m: int, lam: float = 1.0) -> Fraction:
    """lambda^m kappa_m for a k-out-of-n:G system: (m-1)! sum_{i=k}^n i^-m."""
    if not 1 <= k <= n or m < 1:
        raise ValueError("need 1 <= k <= n and m >= 1")
    return math.factorial(m - 1) * sum((Fraction(1, i**m) for i in range(k, n + 1)), Fraction(0))


def mgf_value(R: RatPoly, z, lam=1):
    """<exp(z t)> = 1 + s sum_k c_k / (k - s), s = z / lambda.

    Exact when z and lambda are rationals, float otherwise.
    """
    exact = not isinstance(z, float) and not isinstance(lam, float)
    s = as_fraction(z) / as_fraction(lam) if exact else float(z) / float(lam)
    k_min = R.valuation()
    if k_min <= 0:
        raise DivergentMoment("reliability polynomial has a nonzero constant term")
    if s >= k_min:
        raise DivergentMGF(f"z/lambda = {float(s)} >= {k_min}")
    total = sum(c / (k - s) for k, c in enumerate(R.coeffs) if c)
    out = 1 + s * total
    return out if exact else float(out)


def kofn_mgf_closed_form(k: int, n: int, s: float) -> float:
    """Gamma(k - s) Gamma(n + 1) / (Gamma(k) Gamma(n + 1 - s)), s = z / lambda."""
    return float(np.exp(special.gammaln(k - s) + special.gammaln(n + 1) - special.gammaln(k) - special.gammaln(n + 1 - s)))


# -- quadrature helpers --------------------------------------------------------------


def _quad(f, a, b, epsrel=1e-12, points=None) -> float:
    val, err, *rest = integrate.quad(f, a, b, epsabs=0.0, epsrel=epsrel, limit=400, points=points, full_output=1)
    if len(rest) > 1 and abs(err) > 1e-8 * max(abs(val), 1e-300):
        raise QuadratureError(f"quad did not converge on [{a}, {b}]: {rest[1]}")
    return val


def log_moment_integral(k: int, m: int) -> float:
    """Quadrature of int_0^1 p^(k-1) (-ln p)^(m-1) dp (equals (m-1)!/k^m)."""
    # substitute p = exp(-u)
    return _quad(lambda u: u ** (m - 1) * math.exp(-k * u), 0.0, math.inf)


# -- generalized fan limit --------------------------------------------------------


def fan_limit_quadrature(m: int) -> float:
    """m int_0^1 (-ln p)^(m-1) p / (1 - p(1-p))^2 dp, with p = exp(-u)."""

    def f(u):
        p = math.exp(-u)
        return u ** (m - 1) * p * p / (1.0 - p + p * p) ** 2

    return m * _quad(f, 0.0, math.inf)


def fan_limit_closed_form(m: int) -> float:
    """Polygamma/zeta closed form for lambda^m <t^m> of the infinite fan.

    The zeta term is a 0 * 0 * inf form at m = 2 and is taken as 0 there.
    """
    first = (
        (-1) ** m
        * m
        / 3 ** (m + 1)
        * (1 + 2.0 ** (1 - m))
        * (float(special.polygamma(m - 1, 1 / 3)) - float(special.polygamma(m - 1, 2 / 3)))
    )
    if m == 2:
        return first
    zeta_m1 = -0.5 if m == 1 else float(special.zeta(m - 1))
    second = math.factorial(m) / 3 ** (m - 1) * (1 - 2.0 ** (2 - m)) * (3.0 ** (m - 2) - 1) * zeta_m1
    return first - second


def fan_limit_moment(m: int, lam: float = 1.0, method: str = "quadrature") -> MomentResult:
    if m < 1:
        raise ValueError("moment order must be >= 1")
    if method == "quadrature":
        v = fan_limit_quadrature(m)
    elif method == "closed_form":
        v = fan_limit_closed_form(m)
    else:
        raise ValueError(f"unknown method {method!r}")
    return MomentResult(m, None, v, lam)


# -- non-exponential components ---------------------------------------------------


def nonexp_moment(R: RatPoly, model, m: int = 1) -> MomentResult:
    """<t^m> = m int_0^1 chi(p)^(m-1) R(p) (-chi'(p)) dp by adaptive quadrature.

    When the model also provides p(t) the same integral is taken in the time
    variable, m int_0^inf t^(m-1) R(p(t)) dt, which avoids evaluating -chi'
    where p rounds to 1. Otherwise it is integrated over u = -ln p. The
    returned value is in time^m units (``lam`` = 1 in the result).
    """
    if m < 1:
        raise ValueError("moment order must be >= 1")
    chi = getattr(model, "chi", None)
    neg_dchi = getattr(model, "neg_dchi", None)
    survival = getattr(model, "survival", None)
    if chi is None or (neg_dchi is None and survival is None):
        raise ValueError("model needs chi and neg_dchi (or survival) for quadrature")

    if survival is not None:
        t_half = float(chi(0.5))

        def g(t):
            return t ** (m - 1) * R.evalf(float(survival(t)))

        v = m * (_quad(g, 0.0, t_half, epsrel=1e-10) + _quad(g, t_half, math.inf, epsrel=1e-10))
        return MomentResult(m, None, v, 1.0)

    def f(u):
        p = math.exp(-u)
        return (float(chi(p)) ** (m - 1) if m > 1 else 1.0) * R.evalf(p) * float(neg_dchi(p)) * p

    v = m * (_quad(f, 0.0, 1.0, epsrel=1e-10) + _quad(f, 1.0, math.inf, epsrel=1e-10))
    return MomentResult(m, None, v, 1.0)

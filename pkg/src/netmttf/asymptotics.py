"""Cut signatures and large-n expansions of moments for recursive families.

Series-like families (R_n -> 0) are expanded around p = 1 in q = 1 - p,
parallel-like ones (R_n -> 1) around p = 0. In both cases the family is
summarized by the dominant eigenvalue zeta_+ and amplitude alpha_+ of its
transfer recursion, through the leading coefficients of -ln zeta_+ and
alpha_+ (the "cut signature").
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Sequence, Union

import numpy as np
from scipy import integrate, special

from .algebra import RatPoly, SeriesPoly, TruncSeries, series_root_solve
from .architectures import DenominatorRoot, EigenData, Explicit, Saturating, TwoEigen
from .errors import (
    DegenerateRoot,
    InconsistentSizes,
    MissingCoefficient,
    NonzeroFirstCut,
    QuadratureError,
)

__all__ = [
    "EULER_GAMMA",
    "GammaCombo",
    "PowerTerm",
    "AsymptoticExpansion",
    "SeriesLike",
    "ParallelLike",
    "CutSignature",
    "WeibullEquivalent",
    "eigen_series",
    "signature_from_eigen",
    "signature_from_polynomials",
    "moment_expansion_series_like",
    "watson_moment_expansion",
    "mttf_expansion_parallel_like",
    "doublefan_mttf_expansion",
    "coefficient_of_variation_limit",
    "weibull_equivalent",
    "nonexp_asymptotic_moment",
    "nonexp_exponent",
    "nonexp_effective_reliability",
]

EULER_GAMMA = float(np.euler_gamma)


# -- exact Gamma combinations ----------------------------------------------------------


class GammaCombo:
    """Finite sum  sum_a c_a Gamma(a)  with rational c_a and rational a.

    Arguments are reduced into (0, 1] with Gamma(a + 1) = a Gamma(a), so two
    combos are equal exactly when their reduced coefficient maps are.
    """

    def __init__(self, terms: Mapping | Iterable = ()):
        acc: dict[Fraction, Fraction] = {}
        items = terms.items() if isinstance(terms, Mapping) else terms
        for arg, c in items:
            arg, c = Fraction(arg), Fraction(c)
            if arg <= 0:
                raise ValueError("Gamma arguments must be positive")
            while arg > 1:
                arg -= 1
                c *= arg
            acc[arg] = acc.get(arg, Fraction(0)) + c
        self.terms = {a: c for a, c in sorted(acc.items()) if c}

    @classmethod
    def gamma(cls, arg, coeff=1) -> "GammaCombo":
        return cls([(arg, coeff)])

    def __add__(self, other: "GammaCombo") -> "GammaCombo":
        return GammaCombo(list(self.terms.items()) + list(other.terms.items()))

    def __sub__(self, other: "GammaCombo") -> "GammaCombo":
        return self + other * -1

    def __mul__(self, c) -> "GammaCombo":
        return GammaCombo([(a, v * Fraction(c)) for a, v in self.terms.items()])

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        if isinstance(other, GammaCombo):
            return self.terms == other.terms
        if other == 0:
            return not self.terms
        return NotImplemented

    def is_zero(self) -> bool:
        return not self.terms

    def __float__(self) -> float:
        return float(sum(float(c) * special.gamma(float(a)) for a, c in self.terms.items()))

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        return " + ".join(f"({c})*Gamma({a})" for a, c in self.terms.items())


@dataclass(frozen=True)
class PowerTerm:
    """coeff * n^(-exponent); ``exact`` is the coefficient before the alpha_i scaling."""

    coeff: float
    exponent: Fraction
    exact: GammaCombo | None = None


@dataclass(frozen=True)
class AsymptoticExpansion:
    """log_coeff * ln n + const_coeff + sum_k coeff_k n^(-e_k)."""

    log_coeff: float = 0.0
    const_coeff: float = 0.0
    power_terms: tuple[PowerTerm, ...] = ()
    scale: float = 1.0  # the exact parts are multiplied by scale**(-exponent)

    def __post_init__(self):
        exps = [t.exponent for t in self.power_terms]
        if any(b <= a for a, b in zip(exps, exps[1:])):
            raise ValueError("exponents must be strictly increasing")

    @property
    def valid_order(self) -> Fraction | None:
        return self.power_terms[-1].exponent if self.power_terms else None

    def __call__(self, n, n_terms: int | None = None):
        n = np.asarray(n, dtype=float)
        terms = self.power_terms if n_terms is None else self.nonzero_terms()[:n_terms]
        out = self.log_coeff * np.log(n) + self.const_coeff
        for t in terms:
            out = out + t.coeff * n ** (-float(t.exponent))
        return out if out.ndim else float(out)

    def nonzero_terms(self) -> tuple[PowerTerm, ...]:
        return tuple(t for t in self.power_terms if t.coeff != 0.0)

    def term(self, exponent) -> PowerTerm:
        e = Fraction(exponent)
        for t in self.power_terms:
            if t.exponent == e:
                return t
        raise KeyError(e)

    def to_dict(self) -> dict:
        return {
            "log_coeff": self.log_coeff,
            "const_coeff": self.const_coeff,
            "terms": [
                {"coeff": t.coeff, "exponent": f"{t.exponent}", "exact": repr(t.exact) if t.exact else None}
                for t in self.power_terms
            ],
        }


# -- signatures ----------------------------------------------------------------------


@dataclass(frozen=True)
class SeriesLike:
    """-ln zeta_+(1-q) = sum_{j>=i} alpha_j q^j ;  alpha_+(1-q) = 1 + sum_j alpha'_j q^j."""

    i: int
    alpha: dict[int, Fraction]
    alpha_prime: dict[int, Fraction]
    log_zeta: TruncSeries | None = field(default=None, compare=False, repr=False)
    amplitude: TruncSeries | None = field(default=None, compare=False, repr=False)

    kind = "series_like"

    def a(self, j: int) -> Fraction:
        if j not in self.alpha:
            raise MissingCoefficient(f"alpha_{j} not available")
        return self.alpha[j]

    def ap(self, j: int) -> Fraction:
        if j not in self.alpha_prime:
            raise MissingCoefficient(f"alpha'_{j} not available")
        return self.alpha_prime[j]

    def to_dict(self) -> dict:
        return {
            "kind": self.kind,
            "i": self.i,
            "alpha": {str(k): _fmt(v) for k, v in self.alpha.items()},
            "alpha_prime": {str(k): _fmt(v) for k, v in self.alpha_prime.items()},
        }


@dataclass(frozen=True)
class ParallelLike:
    """-ln zeta_+(p) = sum_{j>=i} beta_j p^j ;  alpha_+(p) = 1 + sum_j beta'_j p^j."""

    i: int
    beta: dict[int, Fraction]
    beta_prime: dict[int, Fraction]
    log_zeta: TruncSeries | None = field(default=None, compare=False, repr=False)
    amplitude: TruncSeries | None = field(default=None, compare=False, repr=False)

    kind = "parallel_like"

    def b(self, j: int) -> Fraction:
        if j not in self.beta:
            raise MissingCoefficient(f"beta_{j} not available")
        return self.beta[j]

    def bp(self, j: int) -> Fraction:
        if j not in self.beta_prime:
            raise MissingCoefficient(f"beta'_{j} not available")
        return self.beta_prime[j]

    def to_dict(self) -> dict:
        return {
            "kind": self.kind,
            "i": self.i,
            "beta": {str(k): _fmt(v) for k, v in self.beta.items()},
            "beta_prime": {str(k): _fmt(v) for k, v in self.beta_prime.items()},
        }


CutSignature = Union[SeriesLike, ParallelLike]


def _fmt(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}" if x.denominator != 1 else str(x.numerator)


def _var_for(kind: str) -> str:
    if kind == "series_like":
        return "q"
    if kind == "parallel_like":
        return "p"
    raise ValueError(f"unknown kind {kind!r}")


def _expand(poly: RatPoly, kind: str, K: int) -> TruncSeries:
    return poly.shift_series(K) if kind == "series_like" else poly.to_series(K)


def eigen_series(ed: EigenData, kind: str, K: int = 8) -> tuple[TruncSeries, TruncSeries]:
    """Truncated series of (zeta_+, alpha_+) at the endpoint relevant to ``kind``."""
    _var_for(kind)
    if isinstance(ed, Saturating):
        raise DegenerateRoot("saturating family: the subdominant eigenvalue is repeated")
    want = "reliability" if kind == "series_like" else "unavailability"
    if ed.quantity != want:
        raise ValueError(f"{kind} expansion needs eigen data of the {want}, got {ed.quantity}")
    if isinstance(ed, Explicit):
        return _expand(ed.zeta_plus, kind, K), _expand(ed.alpha_plus, kind, K)
    if isinstance(ed, TwoEigen):
        T, D = _expand(ed.trace, kind, K), _expand(ed.det, kind, K)
        one = TruncSeries.one(K, T.var)
        zeta = series_root_solve(SeriesPoly([D, -T, one]), K)
        zeta_minus = T - zeta
        x1, x2 = _expand(ed.x1, kind, K), _expand(ed.x2, kind, K)
        alpha = (x2 - zeta_minus * x1) / (zeta * (zeta - zeta_minus))
        return zeta, alpha
    if isinstance(ed, DenominatorRoot):
        d2 = [_expand(c, kind, K) for c in ed.d2]
        # zeta^deg * D2(1/zeta) = sum_j d2_j zeta^(deg - j)
        zeta = series_root_solve(SeriesPoly(d2[::-1]), K)
        w = zeta.inverse()
        num = [_expand(c, kind, K) for c in ed.numerator]
        den = [_expand(c, kind, K) for c in ed.denominator]
        n_at = SeriesPoly(num)(w)
        dden_at = SeriesPoly([c * j for j, c in enumerate(den)][1:])(w)
        alpha = -(zeta * n_at) / dden_at
        return zeta, alpha
    raise TypeError(f"unsupported eigen data {type(ed).__name__}")


def _signature(kind: str, log_zeta: TruncSeries, amplitude: TruncSeries) -> CutSignature:
    i = log_zeta.valuation()
    if i is None:
        raise DegenerateRoot("-ln zeta_+ vanishes to the requested order")
    K = log_zeta.order
    main = {j: log_zeta[j] for j in range(i, K + 1)}
    prime = {j: amplitude[j] for j in range(1, amplitude.order + 1)}
    if amplitude[0] != 1:
        raise ArithmeticError(f"alpha_+ does not start at 1 (got {amplitude[0]})")
    if kind == "series_like":
        return SeriesLike(i, main, prime, log_zeta, amplitude)
    return ParallelLike(i, main, prime, log_zeta, amplitude)


def signature_from_eigen(ed: EigenData, kind: str = "series_like", K: int = 8) -> CutSignature:
    zeta, alpha = eigen_series(ed, kind, K)
    return _signature(kind, -zeta.log(), alpha)


def signature_from_polynomials(
    polys: Sequence[tuple[int, RatPoly]] | Mapping[int, RatPoly],
    kind: str = "series_like",
    K: int = 8,
    quantity: str = "reliability",
) -> CutSignature:
    """Signature from exact polynomials at two or more sizes.

    ``polys`` maps n to R_n (``quantity="reliability"``) or to U_n = 1 - R_n.
    With the dominant term X_n = alpha_+ zeta_+^n (X = R near p = 1, X = U
    near p = 0), ln zeta_+ is the slope of ln X_n in n and ln alpha_+ the
    intercept. Every size beyond the first two must reproduce the same line.
    """
    items = sorted(polys.items() if isinstance(polys, Mapping) else polys)
    if len(items) < 2:
        raise ValueError("need at least two sizes")
    target = "reliability" if kind == "series_like" else "unavailability"
    var = _var_for(kind)
    logs = []
    for n, poly in items:
        x = poly if quantity == target else 1 - poly
        if poly.var == var:
            s = x.to_series(K)
        elif poly.var == "p" and var == "q":
            s = x.shift_series(K)
        else:
            raise ValueError(f"cannot expand a polynomial in {poly.var} for {kind}")
        logs.append((n, s.log()))
    (n1, l1), (n2, l2) = logs[0], logs[1]
    log_zeta = (l2 - l1) * Fraction(1, n2 - n1)
    log_alpha = l1 - log_zeta * n1
    for n, ln in logs[2:]:
        if ln != log_alpha + log_zeta * n:
            raise InconsistentSizes(f"size {n} disagrees with the line through n = {n1}, {n2}")
    return _signature(kind, -log_zeta, log_alpha.exp())


# -- series-like moment expansions -----------------------------------------------------


def moment_expansion_series_like(sig: SeriesLike, m: int = 1, max_eta_order: int = 2) -> AsymptoticExpansion:
    """lambda^m <t^m>_n in powers of eta = (n alpha_i)^(-1/i), up to eta^(m + max_eta_order)."""
    if not 0 <= max_eta_order <= 2:
        raise ValueError("max_eta_order must be 0, 1 or 2")
    i = sig.i
    ai = sig.a(i)
    mi = Fraction(m, i)
    g = GammaCombo.gamma
    brackets = [g(1 + mi)]
    if max_eta_order >= 1:
        r1, a1 = sig.a(i + 1) / ai, sig.ap(1)
        b1 = g(Fraction(1 + m, i), Fraction(1 + m + 2 * a1, 2)) - g(1 + Fraction(1 + m, i), r1)
        brackets.append(b1 * mi)
    if max_eta_order >= 2:
        r2, a2 = sig.a(i + 2) / ai, sig.ap(2)
        c0 = Fraction(10 + 11 * m + 3 * m * m + 12 * (1 + m) * a1 + 24 * a2, 24)
        e2 = Fraction(2 + m, i)
        b2 = g(e2, c0) - g(1 + e2, r2 + r1 * Fraction(1 + m + 2 * a1, 2)) + g(2 + e2, r1 * r1 / 2)
        brackets.append(b2 * mi)
    return _eta_expansion(brackets, m, i, ai)


def _eta_expansion(brackets: Sequence[GammaCombo], m: int, i: int, ai: Fraction) -> AsymptoticExpansion:
    terms = []
    for j, combo in enumerate(brackets):
        e = Fraction(m + j, i)
        terms.append(PowerTerm(float(combo) * float(ai) ** (-float(e)), e, combo))
    return AsymptoticExpansion(0.0, 0.0, tuple(terms), float(ai))


def _shift_down(s: TruncSeries, k: int) -> TruncSeries:
    return TruncSeries(s.coeffs[k:], s.order - k, s.var)


def watson_moment_expansion(
    log_zeta: TruncSeries,
    prefactor: TruncSeries,
    m: int = 1,
    n_terms: int | None = None,
    jacobian_one_minus_q: bool = True,
) -> AsymptoticExpansion:
    """All-order expansion of  m int_0 dq w(q) (-ln(1-q))^(m-1) A(q) exp(-n L(q)).

    ``log_zeta`` is L = -ln zeta_+(1-q) = alpha_i q^i (1 + ...), ``prefactor``
    is A = alpha_+(1-q) and w = 1/(1-q) (set ``jacobian_one_minus_q=False``
    for w = 1 and a plain power q^(m-1) in place of the logarithm: this
    is the form of a moment of exp(-n L(x)) in the time variable x = lambda t).

    The substitution L(q) = alpha_i u^i is inverted as a power series
    (series reversion) and every term of the resulting integrand in u is
    integrated against exp(-n alpha_i u^i) (Watson's lemma).
    """
    i = log_zeta.valuation()
    if i is None:
        raise DegenerateRoot("-ln zeta_+ vanishes identically")
    ai = log_zeta[i]
    h = _shift_down(log_zeta, i) * (1 / ai)  # 1 + O(q)
    K = min(h.order, prefactor.order)
    q = TruncSeries.variable(K + 1, "q")
    U = q * TruncSeries(h.rpow(Fraction(1, i)).coeffs, K + 1, "q")
    Qu = U.reversion()
    if jacobian_one_minus_q:
        w = (1 - q).inverse()
        base = -(1 - q).log()
    else:
        w = TruncSeries.one(K + 1, "q")
        base = q
    F = TruncSeries(prefactor.coeffs, K + 1, "q") * w * base ** (m - 1)
    G = F.compose(Qu).truncate(K) * Qu.derivative()
    G = G.truncate(min(G.order, K))
    terms = []
    for k in range(m - 1, G.order + 1):
        e = Fraction(k + 1, i)
        combo = GammaCombo.gamma(e, Fraction(m, i) * G[k])
        terms.append(PowerTerm(float(combo) * float(ai) ** (-float(e)), e, combo))
        if n_terms is not None and len(terms) == n_terms:
            break
    return AsymptoticExpansion(0.0, 0.0, tuple(terms), float(ai))


# -- parallel-like MTTF ------------------------------------------------------------------


def mttf_expansion_parallel_like(sig: ParallelLike, mode: str = "asymptotic", n: float | None = None):
    """Large-n lambda * MTTF of a parallel-like family.

    ``asymptotic`` returns an AsymptoticExpansion
    (1/i)(ln(beta_i n) + C) + (beta_{i+1}/(i beta_i) - beta'_1) Gamma(1+1/i) (n beta_i)^(-1/i),
    with the separate 1/n terms of the i = 1 case. ``exact_harmonic`` returns a
    number at ``n`` in which the logarithmic head is replaced by the harmonic
    sum H_N / i, N = round(beta_i n).
    """
    i = sig.i
    bi = sig.b(i)
    bi1 = sig.b(i + 1)
    bp1 = sig.bp(1)
    if i == 1:
        # A: 1/(2 beta_1 n); B: (beta_2 - beta_1/2)/(beta_1^2 n); C: -beta'_1 Gamma(2)/(n beta_1)
        combo = GammaCombo.gamma(1, Fraction(1, 2) / bi + (bi1 - bi / 2) / (bi * bi) - bp1 / bi)
        terms = (PowerTerm(float(combo), Fraction(1), combo),)
        harmonic_tail = Fraction(1, 2) / bi
    else:
        e = Fraction(1, i)
        combo = GammaCombo.gamma(1 + e, bi1 / (i * bi) - bp1)
        terms = (PowerTerm(float(combo) * float(bi) ** (-float(e)), e, combo),)
        harmonic_tail = Fraction(0)
    expansion = AsymptoticExpansion(
        1.0 / i, (math.log(float(bi)) + EULER_GAMMA) / i, terms, float(bi)
    )
    if mode == "asymptotic":
        return expansion
    if mode != "exact_harmonic":
        raise ValueError(f"unknown mode {mode!r}")
    if n is None:
        raise ValueError("exact_harmonic needs n")
    N = max(int(round(float(bi) * n)), 1)
    head = float(sum(Fraction(1, k) for k in range(1, N + 1))) / i
    # the harmonic sum already contains the 1/(2 beta_1 n) part of the i = 1 term
    tail = sum(t.coeff * n ** (-float(t.exponent)) for t in terms) - float(harmonic_tail) / n
    return head + tail


DOUBLEFAN_INV_N = Fraction(-11, 4)


def doublefan_mttf_expansion(sig: ParallelLike | None = None) -> AsymptoticExpansion:
    """(ln n + C)/2 + sqrt(pi)/(2 sqrt(n)) - 11/(4n) for the double fan.

    The general parallel-like expansion stops at n^(-1/i); the 1/n term is
    specific to this family and is appended as a known coefficient.
    """
    if sig is None:
        from .architectures import eigen_data

        sig = signature_from_eigen(eigen_data("doublefan"), "parallel_like", 4)
    base = mttf_expansion_parallel_like(sig)
    extra = PowerTerm(float(DOUBLEFAN_INV_N), Fraction(1), GammaCombo.gamma(1, DOUBLEFAN_INV_N))
    return AsymptoticExpansion(base.log_coeff, base.const_coeff, base.power_terms + (extra,), base.scale)


def coefficient_of_variation_limit(sig_or_i) -> float:
    """Limit of sigma/<t> for a series-like family; depends only on i."""
    i = sig_or_i.i if hasattr(sig_or_i, "i") else int(sig_or_i)
    g1 = special.gamma(1 + 1 / i)
    return float(math.sqrt(special.gamma(1 + 2 / i) / g1**2 - 1))


# -- Weibull-equivalent reliabilities --------------------------------------------------


@dataclass(frozen=True)
class WeibullEquivalent:
    """R(t) = exp[-n (a_i (lam t)^i + a_ip1 (lam t)^(i+1))] (a_ip1 = 0 at order 0)."""

    i: int
    a_i: Fraction
    a_ip1: Fraction | None
    order: int

    def reliability(self, t, n: int, lam: float = 1.0):
        x = lam * np.asarray(t, dtype=float)
        expo = float(self.a_i) * x**self.i
        if self.order == 1:
            expo = expo + float(self.a_ip1) * x ** (self.i + 1)
        return np.exp(-n * expo)

    def moment_terms(self, m: int, n_terms: int = 2) -> list[PowerTerm]:
        """Leading terms of lambda^m <t^m> for the surrogate.

        Expanding exp(-n a_ip1 x^(i+1)) under the integral gives the
        asymptotic series over k of
        (-a_ip1)^k / k! (m/i) Gamma((m + k(i+1))/i) a_i^(-(m + k(i+1))/i) n^(-(m+k)/i).
        ``exact`` follows the convention of :class:`AsymptoticExpansion`: it
        is the coefficient of (n a_i)^(-(m+k)/i).
        """
        b = self.a_ip1 if self.order == 1 else Fraction(0)
        out = []
        for k in range(n_terms):
            arg = Fraction(m + k * (self.i + 1), self.i)
            e = Fraction(m + k, self.i)
            exact = GammaCombo.gamma(arg, Fraction(m, self.i) * (-b) ** k / math.factorial(k) / self.a_i**k)
            out.append(PowerTerm(float(exact) * float(self.a_i) ** (-float(e)), e, exact))
        return out

    def moment(self, m: int, n: int, lam: float = 1.0) -> float:
        """<t^m> of the surrogate by quadrature, in time^m units."""
        scale = float(n * self.a_i) ** (-1.0 / self.i)

        def f(u):
            x = u * scale
            return m * x ** (m - 1) * float(self.reliability(x, n)) * scale

        val, _ = integrate.quad(f, 0.0, math.inf, epsabs=0.0, epsrel=1e-12, limit=400)
        if not np.isfinite(val):
            raise QuadratureError("Weibull-equivalent moment quadrature failed")
        return val / lam**m


def weibull_equivalent(sig: SeriesLike, order: int = 1) -> WeibullEquivalent:
    i = sig.i
    ai = sig.a(i)
    if order == 0:
        return WeibullEquivalent(i, ai, None, 0)
    if order != 1:
        raise ValueError("order must be 0 or 1")
    if sig.ap(1) != 0:
        raise NonzeroFirstCut(f"alpha'_1 = {sig.ap(1)} != 0: a single-edge cut must be factored out first")
    return WeibullEquivalent(i, ai, sig.a(i + 1) - Fraction(i, 2) * ai, 1)


# -- non-exponential components ----------------------------------------------------------


def nonexp_exponent(sig: SeriesLike, model, m: int = 1) -> float:
    """Power-law exponent (beta + 1) m / i of <t^m>_n in n."""
    return (model.beta + 1) * m / sig.i


def nonexp_asymptotic_moment(sig: SeriesLike, model, m: int = 1, n: float = 1) -> float:
    """Leading-order <t^m>_n for components with -chi'(p) ~ a_beta (1-p)^beta."""
    b1 = model.beta + 1
    ai = float(sig.a(sig.i))
    return (model.a_beta / b1) ** m * special.gamma(1 + b1 * m / sig.i) / (n * ai) ** (b1 * m / sig.i)


def nonexp_effective_reliability(sig: SeriesLike, model, t, n: float):
    """exp[-n alpha_i ((beta + 1) t / a_beta)^(i/(beta + 1))]."""
    b1 = model.beta + 1
    t = np.asarray(t, dtype=float)
    return np.exp(-n * float(sig.a(sig.i)) * (b1 * t / model.a_beta) ** (sig.i / b1))

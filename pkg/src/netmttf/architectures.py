"""Recursive network families: exact reliability polynomials, eigen-data, graphs.

Supported families and the terminal pair used for each:

* ``series``: path of n edges.
* ``parallel``: two nodes joined by n parallel edges.
* ``kofn``: k-out-of-n:G structure function (no graph realization).
* ``k4ladder``: chain of K4 cells on nodes a_i, b_i; cell i is the complete
  graph on {a_{i-1}, b_{i-1}, a_i, b_i}; terminals a_0 and a_n.
* ``fan``: generalized fan, path S_0 ... S_n plus a hub T adjacent to every
  S_i; terminals S_0 and S_n.
* ``doublefan``: terminals S and T both adjacent to every V_1 ... V_n, plus
  the chain V_1 V_2 ... V_n.
* ``street3xn``: 3 x (n+1) grid with rows S, T, U; terminals S_0 and U_n.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Union

from .algebra import RatPoly
from .errors import NoGraphRealization, UnsupportedArchitecture

__all__ = [
    "Family",
    "Architecture",
    "Graph",
    "TwoEigen",
    "DenominatorRoot",
    "Explicit",
    "Saturating",
    "EigenData",
    "reliability_polynomial",
    "reliability_sequence",
    "graph",
    "eigen_data",
    "street_numerator",
    "street_d1",
    "street_d2",
    "fan_r_infinity",
]


class Family(str, enum.Enum):
    SERIES = "series"
    PARALLEL = "parallel"
    KOFN = "kofn"
    K4LADDER = "k4ladder"
    FAN = "fan"
    DOUBLEFAN = "doublefan"
    STREET = "street3xn"


_ALIASES = {
    "generalizedfan": Family.FAN,
    "generalized_fan": Family.FAN,
    "k4": Family.K4LADDER,
    "double_fan": Family.DOUBLEFAN,
    "street": Family.STREET,
    "street3x": Family.STREET,
    "k-out-of-n": Family.KOFN,
}


def _family(name) -> Family:
    if isinstance(name, Family):
        return name
    key = str(name).lower().replace(" ", "")
    if key in _ALIASES:
        return _ALIASES[key]
    try:
        return Family(key)
    except ValueError:
        raise UnsupportedArchitecture(f"unknown family {name!r}") from None


@dataclass(frozen=True)
class Architecture:
    family: Family
    n: int
    k: int | None = None

    def __post_init__(self):
        object.__setattr__(self, "family", _family(self.family))
        n_min = 0 if self.family in (Family.K4LADDER, Family.STREET) else 1
        if not isinstance(self.n, int) or self.n < n_min:
            raise UnsupportedArchitecture(f"{self.family.value} needs n >= {n_min}, got {self.n!r}")
        if self.family is Family.KOFN:
            if self.k is None or not 1 <= self.k <= self.n:
                raise UnsupportedArchitecture(f"k-out-of-n needs 1 <= k <= n, got k={self.k}, n={self.n}")
        elif self.k is not None:
            raise UnsupportedArchitecture(f"k is only meaningful for kofn, not {self.family.value}")

    def with_n(self, n: int) -> "Architecture":
        return Architecture(self.family, n, self.k)

    def __str__(self) -> str:
        if self.family is Family.KOFN:
            return f"kofn(k={self.k}, n={self.n})"
        return f"{self.family.value}(n={self.n})"


@dataclass(frozen=True)
class Graph:
    node_count: int
    edges: tuple[tuple[int, int], ...]
    source: int
    target: int
    labels: tuple[str, ...] = field(default=(), compare=False)

    def __post_init__(self):
        object.__setattr__(self, "edges", tuple(tuple(e) for e in self.edges))
        for u, v in self.edges:
            if u == v:
                raise ValueError(f"self-loop at node {u}")
            if not (0 <= u < self.node_count and 0 <= v < self.node_count):
                raise ValueError(f"edge ({u}, {v}) outside 0..{self.node_count - 1}")
        if self.source == self.target:
            raise ValueError("source and target coincide")

    @property
    def edge_count(self) -> int:
        return len(self.edges)


# -- eigen data ------------------------------------------------------------------


@dataclass(frozen=True)
class TwoEigen:
    """x_n = trace * x_{n-1} - det * x_{n-2}; x is R_n or U_n = 1 - R_n."""

    trace: RatPoly
    det: RatPoly
    x1: RatPoly
    x2: RatPoly
    quantity: str  # "reliability" or "unavailability"


@dataclass(frozen=True)
class DenominatorRoot:
    """Generating function N / (D1 * D2) in z; the dominant eigenvalue solves D2(1/zeta) = 0.

    Each of ``numerator``, ``d1``, ``d2`` is a tuple of RatPoly in p indexed by
    the power of z.
    """

    numerator: tuple[RatPoly, ...]
    d1: tuple[RatPoly, ...]
    d2: tuple[RatPoly, ...]
    quantity: str = "reliability"

    @property
    def denominator(self) -> tuple[RatPoly, ...]:
        return _zpoly_mul(self.d1, self.d2)


@dataclass(frozen=True)
class Explicit:
    """x_n = alpha_plus * zeta_plus**n exactly."""

    zeta_plus: RatPoly
    alpha_plus: RatPoly
    quantity: str


@dataclass(frozen=True)
class Saturating:
    """R_n -> r_num / r_den with a repeated subdominant eigenvalue (no simple root)."""

    r_num: RatPoly
    r_den: RatPoly
    repeated_eigenvalue: RatPoly


EigenData = Union[TwoEigen, DenominatorRoot, Explicit, Saturating]


# -- recursion polynomials -------------------------------------------------------------

P = RatPoly.x("p")
ONE = RatPoly.constant(1)
Q = ONE - P


def _poly(*coeffs) -> RatPoly:
    return RatPoly(coeffs, "p")


K4_TRACE = P * _poly(2, 4, -14, 13, -4)
K4_DET = P**3 * _poly(4, -18, 36, -42, 30, -12, 2)
K4_R1 = P * _poly(1, 2, 0, -7, 7, -2)
K4_X0 = (1 + P) * Fraction(1, 2)

DF_TRACE = Q * (1 + 2 * P * Q)
DF_DET = P * Q**3


def street_numerator() -> tuple[RatPoly, ...]:
    return (
        P**2,
        -(Q * P**4 * _poly(3, 3, -4)),
        Q**3 * P**6 * _poly(2, 11, -3, -2),
        Q**3 * P**8 * _poly(2, -4, 3, 11, -13, 3),
        -(Q**4 * P**10 * _poly(3, 6, -12, 10, -10, 4)),
        Q**6 * P**12 * _poly(1, 8, -1, -5, -1, 1),
        -(Q**8 * P**15 * _poly(2, 5, -4)),
        Q**10 * P**18,
    )


def street_d1() -> tuple[RatPoly, ...]:
    return (
        ONE,
        -((1 - P**2) * P * _poly(1, 1, -1)),
        Q**2 * P**3 * _poly(1, 1, 1, -2),
        -(Q**4 * P**6),
    )


def street_d2() -> tuple[RatPoly, ...]:
    return (
        ONE,
        -(P * _poly(2, 2, 1, -9, 5)),
        Q * P**2 * _poly(1, 5, 5, -6, -15, 13, 1, -2),
        -(Q**2 * P**4 * _poly(2, 6, 6, -26, 17, -18, 27, -16, 3)),
        Q**4 * P**6 * _poly(1, 6, 4, -1, -17, 9, 3, -2),
        -(Q**6 * P**9 * _poly(2, 4, 1, -7, 3)),
        Q**8 * P**12,
    )


def _zpoly_mul(a, b) -> tuple[RatPoly, ...]:
    out = [RatPoly([], "p")] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        for j, bj in enumerate(b):
            out[i + j] = out[i + j] + ai * bj
    return tuple(out)


FAN_DEN = 1 - P * Q  # 1 - p(1-p)


def fan_r_infinity() -> tuple[RatPoly, RatPoly]:
    """Numerator and denominator of the generalized fan's limiting reliability."""
    return P**2, FAN_DEN**2


# -- reliability polynomials ----------------------------------------------------------


def _two_term(trace: RatPoly, det: RatPoly, x0: RatPoly, x1: RatPoly, n: int) -> list[RatPoly]:
    xs = [x0, x1]
    for _ in range(2, n + 1):
        xs.append(trace * xs[-1] - det * xs[-2])
    return xs[: n + 1]


@lru_cache(maxsize=None)
def _k4_sequence(n: int) -> tuple[RatPoly, ...]:
    # The closed form alpha+ zeta+^n + alpha- zeta-^n holds for n >= 1 and gives
    # alpha+ + alpha- = (1 + p)/2 at n = 0; that, not R_0 = 1, seeds the recursion.
    xs = _two_term(K4_TRACE, K4_DET, K4_X0, K4_R1, max(n, 1))
    return (ONE,) + tuple(xs[1:])


@lru_cache(maxsize=None)
def _doublefan_unavailability(n: int) -> tuple[RatPoly, ...]:
    return tuple(_two_term(DF_TRACE, DF_DET, ONE, 1 - P**2, max(n, 1)))


@lru_cache(maxsize=None)
def _street_sequence(n: int) -> tuple[RatPoly, ...]:
    """z-series coefficients of N / (D1 D2) up to z^n (the z^0 coefficient is R_0)."""
    num = street_numerator()
    den = _zpoly_mul(street_d1(), street_d2())
    zero = RatPoly([], "p")
    out: list[RatPoly] = []
    for k in range(n + 1):
        acc = num[k] if k < len(num) else zero
        for j in range(1, min(k, len(den) - 1) + 1):
            acc = acc - den[j] * out[k - j]
        out.append(acc)  # den[0] == 1
    return tuple(out)


def _fan(n: int) -> RatPoly:
    # p^2 + p^n (1-p)^(n+2) [n p (1 - p + p^2) + 1 + p^2], all over (1 - p + p^2)^2
    num = P**2 + P**n * Q ** (n + 2) * (n * P * FAN_DEN + 1 + P**2)
    return num.exact_div(FAN_DEN**2)


def _kofn(k: int, n: int) -> RatPoly:
    total = RatPoly([], "p")
    for i in range(k, n + 1):
        total = total + math.comb(n, i) * P**i * Q ** (n - i)
    return total


def reliability_polynomial(arch: Architecture) -> RatPoly:
    """Exact two-terminal reliability R_n(p)."""
    f, n = arch.family, arch.n
    if f is Family.SERIES:
        return P**n
    if f is Family.PARALLEL:
        return 1 - Q**n
    if f is Family.KOFN:
        return _kofn(arch.k, n)
    if f is Family.K4LADDER:
        return _k4_sequence(n)[n]
    if f is Family.DOUBLEFAN:
        return 1 - _doublefan_unavailability(n)[n]
    if f is Family.STREET:
        return _street_sequence(n)[n]
    if f is Family.FAN:
        return _fan(n)
    raise UnsupportedArchitecture(str(arch))


def reliability_sequence(family, n_max: int) -> list[RatPoly]:
    """R_1 .. R_{n_max} (R_0 first for the families that define it)."""
    fam = _family(family)
    if fam is Family.K4LADDER:
        return list(_k4_sequence(n_max))
    if fam is Family.STREET:
        return list(_street_sequence(n_max))
    if fam is Family.DOUBLEFAN:
        return [1 - u for u in _doublefan_unavailability(n_max)][1:]
    return [reliability_polynomial(Architecture(fam, n)) for n in range(1, n_max + 1)]


# -- graphs ---------------------------------------------------------------------------


def graph(arch: Architecture) -> Graph:
    """Explicit node/edge realization with designated terminals."""
    f, n = arch.family, arch.n
    if f is Family.KOFN:
        raise NoGraphRealization("k-out-of-n is a structure function, not a two-terminal graph")
    if f is Family.SERIES:
        return Graph(n + 1, [(i, i + 1) for i in range(n)], 0, n, tuple(f"v{i}" for i in range(n + 1)))
    if f is Family.PARALLEL:
        return Graph(2, [(0, 1)] * n, 0, 1, ("s", "t"))
    if f is Family.K4LADDER:
        if n < 1:
            raise NoGraphRealization("K4 ladder with n = 0 has source = target")
        a = lambda i: 2 * i  # noqa: E731
        b = lambda i: 2 * i + 1  # noqa: E731
        edges = [(a(0), b(0))]
        for i in range(1, n + 1):
            edges += [(a(i - 1), a(i)), (a(i - 1), b(i)), (b(i - 1), a(i)), (b(i - 1), b(i)), (a(i), b(i))]
        labels = tuple(x for i in range(n + 1) for x in (f"a{i}", f"b{i}"))
        return Graph(2 * n + 2, edges, a(0), a(n), labels)
    if f is Family.FAN:
        hub = n + 1
        edges = [(i, i + 1) for i in range(n)] + [(hub, i) for i in range(n + 1)]
        return Graph(n + 2, edges, 0, n, tuple(f"S{i}" for i in range(n + 1)) + ("T",))
    if f is Family.DOUBLEFAN:
        s, t = 0, 1
        vs = list(range(2, n + 2))
        edges = [(s, v) for v in vs] + [(t, v) for v in vs] + list(zip(vs, vs[1:]))
        return Graph(n + 2, edges, s, t, ("S", "T") + tuple(f"V{i}" for i in range(1, n + 1)))
    if f is Family.STREET:
        # node index: 3 * column + row, rows 0 = S, 1 = T, 2 = U
        node = lambda row, col: 3 * col + row  # noqa: E731
        edges = []
        for col in range(n + 1):
            edges += [(node(0, col), node(1, col)), (node(1, col), node(2, col))]
            if col < n:
                edges += [(node(r, col), node(r, col + 1)) for r in range(3)]
        labels = tuple(f"{'STU'[r]}{c}" for c in range(n + 1) for r in range(3))
        return Graph(3 * (n + 1), edges, node(0, 0), node(2, n), labels)
    raise UnsupportedArchitecture(str(arch))


# -- eigen data --------------------------------------------------------------------------


def eigen_data(arch_or_family) -> EigenData:
    """Recursion data from which the dominant eigenvalue and amplitude are built."""
    fam = arch_or_family.family if isinstance(arch_or_family, Architecture) else _family(arch_or_family)
    if fam is Family.K4LADDER:
        r2 = K4_TRACE * K4_R1 - K4_DET * K4_X0
        return TwoEigen(K4_TRACE, K4_DET, K4_R1, r2, "reliability")
    if fam is Family.DOUBLEFAN:
        u = _doublefan_unavailability(2)
        return TwoEigen(DF_TRACE, DF_DET, u[1], u[2], "unavailability")
    if fam is Family.STREET:
        return DenominatorRoot(street_numerator(), street_d1(), street_d2())
    if fam is Family.SERIES:
        return Explicit(P, ONE, "reliability")
    if fam is Family.PARALLEL:
        return Explicit(Q, ONE, "unavailability")
    if fam is Family.FAN:
        num, den = fan_r_infinity()
        return Saturating(num, den, P * Q)
    raise UnsupportedArchitecture(f"no eigen data for {fam.value}")

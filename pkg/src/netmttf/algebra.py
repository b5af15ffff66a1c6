"""Exact rational polynomials and truncated power series.

Coefficients are :class:`fractions.Fraction`. ``RatPoly`` keeps its
coefficients as integer numerators over one common denominator so that the
long products met in transfer-matrix recursions (degrees in the thousands,
coefficients with thousands of bits) stay cheap: they are multiplied by
Kronecker substitution on Python integers.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import cached_property
from numbers import Rational
from typing import Iterable, Sequence, Union

from .errors import DegenerateRoot, NonzeroRemainder, SeriesPrecondition, VariableMismatch

__all__ = [
    "RatPoly",
    "TruncSeries",
    "SeriesPoly",
    "as_fraction",
    "poly_arith",
    "poly_exact_div",
    "series_op",
    "series_root_solve",
]

VARIABLES = ("p", "q", "z", "u", "x")

Scalar = Union[int, Fraction]


def as_fraction(x) -> Fraction:
    """Convert ints, Fractions, floats (exactly) and ``"a/b"`` / decimal strings."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, Rational)):
        return Fraction(x)
    if isinstance(x, float):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x.strip())
    raise TypeError(f"cannot interpret {x!r} as a rational number")


# -- integer polynomial kernels ---------------------------------------------


def _school_mul(a: Sequence[int], b: Sequence[int]) -> list[int]:
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] += ai * bj
    return out


def _pack(coeffs: Sequence[int], nbytes: int) -> int:
    pos = b"".join(c.to_bytes(nbytes, "little") if c > 0 else bytes(nbytes) for c in coeffs)
    neg = b"".join((-c).to_bytes(nbytes, "little") if c < 0 else bytes(nbytes) for c in coeffs)
    return int.from_bytes(pos, "little") - int.from_bytes(neg, "little")


def _kron_mul(a: Sequence[int], b: Sequence[int]) -> list[int]:
    bound = max(map(abs, a)) * max(map(abs, b)) * min(len(a), len(b))
    nbytes = (bound.bit_length() + 2) // 8 + 1
    nout = len(a) + len(b) - 1
    half = 1 << (8 * nbytes - 1)
    bias = int.from_bytes(half.to_bytes(nbytes, "little") * nout, "little")
    raw = (_pack(a, nbytes) * _pack(b, nbytes) + bias).to_bytes(nbytes * nout, "little")
    return [
        int.from_bytes(raw[k * nbytes : (k + 1) * nbytes], "little") - half for k in range(nout)
    ]


def _int_mul(a: Sequence[int], b: Sequence[int]) -> list[int]:
    if not a or not b:
        return []
    if min(len(a), len(b)) <= 8:
        return _school_mul(a, b)
    return _kron_mul(a, b)


def _trim(coeffs: list) -> list:
    while coeffs and not coeffs[-1]:
        coeffs.pop()
    return coeffs


# -- RatPoly ------------------------------------------------------------------


class RatPoly:
    """Dense univariate polynomial with exact rational coefficients.

    ``RatPoly([0, 1, 2], "p")`` is ``p + 2 p**2``. Instances are immutable and
    hashable; trailing zeros are trimmed, so the zero polynomial has degree -1.
    """

    __slots__ = ("_num", "_den", "var", "__dict__")

    def __init__(self, coeffs: Iterable = (), var: str = "p"):
        if var not in VARIABLES:
            raise ValueError(f"unknown variable tag {var!r}")
        fr = [as_fraction(c) for c in coeffs]
        den = 1
        for c in fr:
            den = den * c.denominator // math.gcd(den, c.denominator)
        self._set(_trim([c.numerator * (den // c.denominator) for c in fr]), den, var)

    def _set(self, num: list[int], den: int, var: str) -> None:
        g = den
        for c in num:
            if g == 1:
                break
            g = math.gcd(g, c)
        if g != 1:
            num = [c // g for c in num]
            den //= g
        self._num = tuple(num)
        self._den = den
        self.var = var

    @classmethod
    def _raw(cls, num: list[int], den: int, var: str) -> "RatPoly":
        obj = cls.__new__(cls)
        if den < 0:
            num, den = [-c for c in num], -den
        obj._set(_trim(list(num)), den, var)
        return obj

    @classmethod
    def monomial(cls, k: int, coeff: Scalar = 1, var: str = "p") -> "RatPoly":
        return cls([0] * k + [coeff], var)

    @classmethod
    def constant(cls, c: Scalar, var: str = "p") -> "RatPoly":
        return cls([c], var)

    @classmethod
    def x(cls, var: str = "p") -> "RatPoly":
        return cls([0, 1], var)

    # basic properties
    @cached_property
    def coeffs(self) -> tuple[Fraction, ...]:
        return tuple(Fraction(c, self._den) for c in self._num)

    @property
    def degree(self) -> int:
        return len(self._num) - 1

    def is_zero(self) -> bool:
        return not self._num

    def is_integral(self) -> bool:
        return self._den == 1

    def coeff(self, k: int) -> Fraction:
        if 0 <= k < len(self._num):
            return Fraction(self._num[k], self._den)
        return Fraction(0)

    def valuation(self) -> int:
        """Index of the lowest nonzero coefficient (-1 for the zero polynomial)."""
        for k, c in enumerate(self._num):
            if c:
                return k
        return -1

    def __len__(self) -> int:
        return len(self._num)

    def __iter__(self):
        return iter(self.coeffs)

    def __eq__(self, other) -> bool:
        if isinstance(other, RatPoly):
            return (self._num, self._den, self.var) == (other._num, other._den, other.var)
        if isinstance(other, (int, Fraction)):
            return self == RatPoly([other], self.var)
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self._num, self._den, self.var))

    def __repr__(self) -> str:
        return f"RatPoly({[str(c) for c in self.coeffs]}, {self.var!r})"

    def __str__(self) -> str:
        if self.is_zero():
            return "0"
        parts = []
        for k, c in enumerate(self.coeffs):
            if not c:
                continue
            mono = "" if k == 0 else (self.var if k == 1 else f"{self.var}^{k}")
            mag = abs(c)
            if mono and mag == 1:
                body = mono
            elif mono:
                body = f"{mag}*{mono}"
            else:
                body = str(mag)
            parts.append(("-" if c < 0 else "+", body))
        head = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        return head + "".join(f" {s} {b}" for s, b in parts[1:])

    # arithmetic
    def _coerce(self, other) -> "RatPoly":
        if isinstance(other, RatPoly):
            if other.var != self.var:
                raise VariableMismatch(f"variable {self.var!r} vs {other.var!r}")
            return other
        if isinstance(other, (int, Fraction)):
            return RatPoly([other], self.var)
        return NotImplemented

    def _addsub(self, other, sign: int) -> "RatPoly":
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        den = self._den * o._den // math.gcd(self._den, o._den)
        fa, fb = den // self._den, den // o._den
        n = max(len(self._num), len(o._num))
        a = list(self._num) + [0] * (n - len(self._num))
        b = list(o._num) + [0] * (n - len(o._num))
        return RatPoly._raw([x * fa + sign * y * fb for x, y in zip(a, b)], den, self.var)

    def __add__(self, other):
        return self._addsub(other, 1)

    def __radd__(self, other):
        return self._addsub(other, 1)

    def __sub__(self, other):
        return self._addsub(other, -1)

    def __rsub__(self, other):
        return (-self)._addsub(other, 1)

    def __neg__(self) -> "RatPoly":
        return RatPoly._raw([-c for c in self._num], self._den, self.var)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            f = Fraction(other)
            return RatPoly._raw([c * f.numerator for c in self._num], self._den * f.denominator, self.var)
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return RatPoly._raw(_int_mul(self._num, o._num), self._den * o._den, self.var)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self * (1 / Fraction(other))
        if isinstance(other, RatPoly):
            return self.exact_div(other)
        return NotImplemented

    def __pow__(self, k: int) -> "RatPoly":
        if k < 0:
            raise ValueError("negative power of a polynomial")
        result = RatPoly([1], self.var)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def divmod(self, den: "RatPoly") -> tuple["RatPoly", "RatPoly"]:
        d = self._coerce(den)
        if d.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dc = d.coeffs
        lead = dc[-1]
        quot = [Fraction(0)] * max(len(rem) - len(dc) + 1, 0)
        for k in range(len(quot) - 1, -1, -1):
            c = rem[k + len(dc) - 1] / lead
            quot[k] = c
            if c:
                for j, dj in enumerate(dc):
                    rem[k + j] -= c * dj
        return RatPoly(quot, self.var), RatPoly(rem[: len(dc) - 1], self.var)

    def exact_div(self, den: "RatPoly") -> "RatPoly":
        q, r = self.divmod(den)
        if not r.is_zero():
            raise NonzeroRemainder(f"remainder {r} when dividing by {den}")
        return q

    def derivative(self) -> "RatPoly":
        return RatPoly._raw([k * c for k, c in enumerate(self._num)][1:], self._den, self.var)

    # evaluation
    def __call__(self, x):
        """Evaluate exactly at an int/Fraction, or at another polynomial/series."""
        if isinstance(x, (RatPoly, TruncSeries)):
            acc = x * 0
            for c in reversed(self.coeffs):
                acc = acc * x + c
            return acc
        if isinstance(x, float):
            return self.evalf(x)
        x = as_fraction(x)
        a, b = x.numerator, x.denominator
        # Horner on numerators: sum c_k a^k b^(d-k), then divide by b^d
        acc = 0
        bpow = 1
        for c in reversed(self._num):
            acc = acc * a + c * bpow
            bpow *= b
        return Fraction(acc, self._den * b ** max(self.degree, 0))

    def evalf(self, x: float) -> float:
        """Float value at ``x`` computed through exact arithmetic.

        Power-basis evaluation in floats loses everything for the high-degree
        alternating polynomials produced here, so ``x`` is converted to its
        exact dyadic value first.
        """
        return float(self(Fraction(x)))

    # change of variable
    def shift_to_q(self) -> "RatPoly":
        """Rewrite P(p) as a polynomial in q = 1 - p (exact, full degree)."""
        if self.var != "p":
            raise VariableMismatch("shift_to_q expects a polynomial in p")
        d = self.degree
        out = [0] * (d + 1)
        # P(1-q) = sum_k c_k sum_j C(k, j) (-q)^j
        for k, c in enumerate(self._num):
            if c:
                for j in range(k + 1):
                    out[j] += c * math.comb(k, j) * (-1 if j & 1 else 1)
        return RatPoly._raw(out, self._den, "q")

    def to_series(self, order: int, var: str | None = None) -> "TruncSeries":
        return TruncSeries(self.coeffs[: order + 1], order, var or self.var)

    def shift_series(self, order: int) -> "TruncSeries":
        """Truncated series of P(1 - q) in q up to ``order``."""
        out = [0] * (order + 1)
        for k, c in enumerate(self._num):
            if c:
                for j in range(min(k, order) + 1):
                    out[j] += c * math.comb(k, j) * (-1 if j & 1 else 1)
        return TruncSeries([Fraction(c, self._den) for c in out], order, "q")

    def with_var(self, var: str) -> "RatPoly":
        return RatPoly._raw(list(self._num), self._den, var)

    def numerators(self) -> tuple[tuple[int, ...], int]:
        """Integer numerators and the common denominator."""
        return self._num, self._den


# -- truncated power series -----------------------------------------------------


class TruncSeries:
    """Power series truncated at a declared order ``K`` (coefficients 0..K)."""

    __slots__ = ("coeffs", "order", "var")

    def __init__(self, coeffs: Iterable = (), order: int = 0, var: str = "q"):
        if order < 0:
            raise ValueError("truncation order must be >= 0")
        if var not in VARIABLES:
            raise ValueError(f"unknown variable tag {var!r}")
        c = [as_fraction(x) for x in coeffs][: order + 1]
        c += [Fraction(0)] * (order + 1 - len(c))
        self.coeffs: tuple[Fraction, ...] = tuple(c)
        self.order = order
        self.var = var

    @classmethod
    def variable(cls, order: int, var: str = "q") -> "TruncSeries":
        return cls([0, 1], order, var)

    @classmethod
    def one(cls, order: int, var: str = "q") -> "TruncSeries":
        return cls([1], order, var)

    def __getitem__(self, k: int) -> Fraction:
        return self.coeffs[k] if 0 <= k <= self.order else Fraction(0)

    def __iter__(self):
        return iter(self.coeffs)

    def __len__(self) -> int:
        return self.order + 1

    def __eq__(self, other) -> bool:
        if isinstance(other, TruncSeries):
            return (self.coeffs, self.order, self.var) == (other.coeffs, other.order, other.var)
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.coeffs, self.order, self.var))

    def __repr__(self) -> str:
        return f"TruncSeries({[str(c) for c in self.coeffs]}, order={self.order}, var={self.var!r})"

    def __str__(self) -> str:
        body = RatPoly(self.coeffs, self.var) if self.var in VARIABLES else None
        return f"{body} + O({self.var}^{self.order + 1})"

    def valuation(self) -> int | None:
        for k, c in enumerate(self.coeffs):
            if c:
                return k
        return None

    def truncate(self, order: int) -> "TruncSeries":
        return TruncSeries(self.coeffs, order, self.var)

    def _coerce(self, other) -> "TruncSeries":
        if isinstance(other, TruncSeries):
            if other.var != self.var:
                raise VariableMismatch(f"variable {self.var!r} vs {other.var!r}")
            return other
        if isinstance(other, RatPoly):
            if other.var != self.var:
                raise VariableMismatch(f"variable {self.var!r} vs {other.var!r}")
            return other.to_series(self.order)
        if isinstance(other, (int, Fraction)):
            return TruncSeries([other], self.order, self.var)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        k = min(self.order, o.order)
        return TruncSeries([a + b for a, b in zip(self.coeffs, o.coeffs)], k, self.var)

    __radd__ = __add__

    def __neg__(self) -> "TruncSeries":
        return TruncSeries([-c for c in self.coeffs], self.order, self.var)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return TruncSeries([c * other for c in self.coeffs], self.order, self.var)
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        k = min(self.order, o.order)
        a, b = self.coeffs, o.coeffs
        out = []
        for n in range(k + 1):
            s = Fraction(0)
            for j in range(n + 1):
                if a[j] and b[n - j]:
                    s += a[j] * b[n - j]
            out.append(s)
        return TruncSeries(out, k, self.var)

    __rmul__ = __mul__

    def inverse(self) -> "TruncSeries":
        a = self.coeffs
        if not a[0]:
            raise SeriesPrecondition("series inverse needs a nonzero constant term")
        inv0 = 1 / a[0]
        out = [inv0]
        for n in range(1, self.order + 1):
            s = sum((a[j] * out[n - j] for j in range(1, n + 1)), Fraction(0))
            out.append(-s * inv0)
        return TruncSeries(out, self.order, self.var)

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self * (1 / Fraction(other))
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        k = min(self.order, o.order)
        return self.truncate(k) * o.truncate(k).inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, k: int) -> "TruncSeries":
        if k < 0:
            return self.inverse() ** (-k)
        result = TruncSeries.one(self.order, self.var)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def derivative(self) -> "TruncSeries":
        """Formal derivative; the result loses one order of precision."""
        d = [k * c for k, c in enumerate(self.coeffs)][1:]
        return TruncSeries(d, max(self.order - 1, 0), self.var)

    def integral(self) -> "TruncSeries":
        """Antiderivative with zero constant term (gains one order)."""
        return TruncSeries([0] + [c / (k + 1) for k, c in enumerate(self.coeffs)], self.order + 1, self.var)

    def log(self) -> "TruncSeries":
        if self.coeffs[0] != 1:
            raise SeriesPrecondition("log needs constant term 1")
        if self.order == 0:
            return TruncSeries([], 0, self.var)
        return (self.derivative() / self.truncate(self.order - 1)).integral()

    def exp(self) -> "TruncSeries":
        if self.coeffs[0]:
            raise SeriesPrecondition("exp needs constant term 0")
        a = self.coeffs
        out = [Fraction(1)]
        for n in range(1, self.order + 1):
            s = sum((j * a[j] * out[n - j] for j in range(1, n + 1)), Fraction(0))
            out.append(s / n)
        return TruncSeries(out, self.order, self.var)

    def rpow(self, r) -> "TruncSeries":
        """S**r for rational r, defined through exp(r log S) (constant term 1)."""
        return (self.log() * as_fraction(r)).exp()

    def compose(self, inner: "TruncSeries") -> "TruncSeries":
        """self(inner(v)); the inner series must vanish at 0."""
        if inner.coeffs[0]:
            raise SeriesPrecondition("compose needs an inner series with zero constant term")
        k = min(self.order, inner.order)
        inner = inner.truncate(k)
        acc = TruncSeries([], k, inner.var)
        for c in reversed(self.coeffs[: k + 1]):
            acc = acc * inner + c
        return acc

    def reversion(self) -> "TruncSeries":
        """Compositional inverse g with self(g(v)) = v; needs s0 = 0, s1 != 0."""
        if self.coeffs[0] or not self[1]:
            raise SeriesPrecondition("reversion needs s0 = 0 and s1 != 0")
        v = TruncSeries.variable(self.order, self.var)
        g = v * (1 / self[1])
        dself = self.derivative()
        # Newton on F(g) = self(g) - v; each step doubles the number of correct terms
        for _ in range(self.order.bit_length() + 2):
            residual = self.compose(g) - v
            if residual.valuation() is None:
                break
            slope = TruncSeries(dself.coeffs, self.order, self.var).compose(g)
            g = g - residual / slope
        return g

    def __call__(self, x):
        """Evaluate the truncated polynomial at a number."""
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def to_poly(self) -> RatPoly:
        return RatPoly(self.coeffs, self.var)


# -- polynomials in y with series coefficients ------------------------------


class SeriesPoly:
    """Polynomial in an unknown ``y`` whose coefficients are TruncSeries.

    Used for bivariate constraints W(y, v) = sum_j w_j(v) y^j; ``coeffs[j]``
    multiplies ``y**j``.
    """

    def __init__(self, coeffs: Sequence[TruncSeries]):
        if not coeffs:
            raise ValueError("empty polynomial")
        vars_ = {c.var for c in coeffs}
        if len(vars_) != 1:
            raise VariableMismatch(f"mixed variables {sorted(vars_)}")
        self.order = min(c.order for c in coeffs)
        self.var = coeffs[0].var
        self.coeffs = tuple(c.truncate(self.order) for c in coeffs)

    @classmethod
    def from_ratpolys(cls, coeffs: Sequence[RatPoly], order: int, shift: bool = False) -> "SeriesPoly":
        """Coefficients given as polynomials in p; ``shift`` expands them at p = 1 in q."""
        if shift:
            return cls([c.shift_series(order) for c in coeffs])
        return cls([c.to_series(order) for c in coeffs])

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __call__(self, y: TruncSeries) -> TruncSeries:
        acc = TruncSeries([], self.order, self.var)
        for c in reversed(self.coeffs):
            acc = acc * y + c
        return acc

    def derivative(self) -> "SeriesPoly":
        if len(self.coeffs) == 1:
            return SeriesPoly([self.coeffs[0] * 0])
        return SeriesPoly([c * j for j, c in enumerate(self.coeffs)][1:])

    def at_origin(self, y0: Fraction) -> Fraction:
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * y0 + c[0]
        return acc


def series_root_solve(W: SeriesPoly, order: int | None = None, seed: Scalar = 1) -> TruncSeries:
    """Series root y(v) of W(y, v) = 0 with y(0) = ``seed``.

    Newton iteration on truncated series, doubling the working order at each
    step. The seed must be a simple root of W(y, 0).
    """
    K = W.order if order is None else order
    if K > W.order:
        raise SeriesPrecondition(f"requested order {K} exceeds coefficient order {W.order}")
    seed = Fraction(seed)
    if W.at_origin(seed) != 0:
        raise SeriesPrecondition(f"W({seed}, 0) != 0")
    dW = W.derivative()
    if dW.at_origin(seed) == 0:
        raise DegenerateRoot(f"dW/dy vanishes at ({seed}, 0): repeated root")
    y = TruncSeries([seed], 0, W.var)
    prec = 1
    while prec < K + 1:
        prec = min(2 * prec, K + 1)
        y = y.truncate(prec - 1)
        Wk = SeriesPoly([c.truncate(prec - 1) for c in W.coeffs])
        dWk = SeriesPoly([c.truncate(prec - 1) for c in dW.coeffs])
        y = y - Wk(y) / dWk(y)
    if SeriesPoly([c.truncate(K) for c in W.coeffs])(y).valuation() is not None:
        raise ArithmeticError("Newton iteration failed to annihilate W")
    return y


# -- functional wrappers ----------------------------------------------------------


def poly_arith(a: RatPoly, b: RatPoly, op: str) -> RatPoly:
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    raise ValueError(f"unknown op {op!r}")


def poly_exact_div(num: RatPoly, den: RatPoly) -> RatPoly:
    return num.exact_div(den)


def series_op(a, op: str, b: TruncSeries | None = None, order: int | None = None) -> TruncSeries:
    """Dispatch for the series operations by name.

    ``shift_var`` maps a RatPoly in p (or a series in p) to its expansion in
    q = 1 - p, truncated at ``order``.
    """
    if op == "shift_var":
        if isinstance(a, TruncSeries):
            a = a.to_poly()
        return a.shift_series(a.degree if order is None else order)
    if op == "add":
        return a + b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    if op == "log":
        return a.log()
    if op == "exp":
        return a.exp()
    if op == "compose":
        return a.compose(b)
    raise ValueError(f"unknown op {op!r}")

"""Route a family to its large-n regime: series-like, parallel-like or saturating."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

from .algebra import as_fraction
from .architectures import Architecture, Family, _family, fan_r_infinity, reliability_polynomial
from .errors import Inconclusive

__all__ = ["RegimeLabel", "classify", "expected_label", "SAMPLE_SIZES", "SAMPLE_P"]

SERIES_LIKE = "SeriesLike"
PARALLEL_LIKE = "ParallelLike"
SATURATING = "Saturating"

SAMPLE_SIZES = (4, 8, 16)
SAMPLE_P = Fraction(1, 2)
# distance from 0 or 1 below which a converged limit counts as an endpoint
ENDPOINT_TOL = Fraction(1, 100)

_EXPECTED = {
    Family.SERIES: SERIES_LIKE,
    Family.PARALLEL: PARALLEL_LIKE,
    Family.KOFN: PARALLEL_LIKE,
    Family.K4LADDER: SERIES_LIKE,
    Family.FAN: SATURATING,
    Family.DOUBLEFAN: PARALLEL_LIKE,
    Family.STREET: SERIES_LIKE,
}


def _fan_limit(p) -> Fraction:
    num, den = fan_r_infinity()
    p = as_fraction(p)
    return num(p) / den(p)


@dataclass(frozen=True)
class RegimeLabel:
    kind: str
    samples: tuple[Fraction, ...] = ()
    limit_estimate: Fraction | None = None
    r_infinity: Callable | None = field(default=None, compare=False)

    def to_dict(self) -> dict:
        out = {
            "kind": self.kind,
            "p": str(SAMPLE_P),
            "sizes": list(SAMPLE_SIZES),
            "samples": [float(x) for x in self.samples],
            "limit_estimate": None if self.limit_estimate is None else float(self.limit_estimate),
        }
        if self.r_infinity is not None:
            out["r_infinity_at_p"] = str(self.r_infinity(SAMPLE_P))
        return out


def expected_label(family) -> str:
    return _EXPECTED[_family(family)]


def _aitken(r0: Fraction, r1: Fraction, r2: Fraction) -> Fraction:
    d1, d2 = r1 - r0, r2 - r1
    if d2 == d1:
        return r2
    return r2 - d2 * d2 / (d2 - d1)


def _numeric_label(samples: tuple[Fraction, ...]) -> tuple[str, Fraction | None]:
    r4, r8, r16 = samples
    if r4 == r8 == r16:
        # constant in n: an interior constant or an endpoint
        if r16 == 0:
            return SERIES_LIKE, r16
        if r16 == 1:
            return PARALLEL_LIKE, r16
        return SATURATING, r16
    increasing = r4 < r8 < r16
    decreasing = r4 > r8 > r16
    if not (increasing or decreasing):
        raise Inconclusive(f"R_n(1/2) not monotone over n = {SAMPLE_SIZES}: {[float(x) for x in samples]}")
    n = SAMPLE_SIZES[1]
    converged = abs(r16 - r8) < r8 * Fraction(1, 2 ** (n // 4))
    if not converged:
        return (SERIES_LIKE if decreasing else PARALLEL_LIKE), None
    limit = min(max(_aitken(r4, r8, r16), Fraction(0)), Fraction(1))
    if limit < ENDPOINT_TOL:
        return SERIES_LIKE, limit
    if 1 - limit < ENDPOINT_TOL:
        return PARALLEL_LIKE, limit
    return SATURATING, limit


def classify(family, k: int | None = None, check_expected: bool = True) -> RegimeLabel:
    """Classify a family from exact R_n(1/2), n = 4, 8, 16.

    A monotone sequence whose last step is still large is taken to run off
    to 0 (decreasing) or 1 (increasing). Once successive values agree to
    |R_16 - R_8| < R_8 2^(-8/4), the limit is estimated by Aitken's delta-squared
    and compared with the endpoints. The numeric result is checked against
    the family's known regime unless ``check_expected`` is false.
    """
    if isinstance(family, Architecture):
        k = family.k if k is None else k
        family = family.family
    fam = _family(family)
    if fam is Family.KOFN and k is None:
        k = 1
    samples = tuple(reliability_polynomial(Architecture(fam, n, k))(SAMPLE_P) for n in SAMPLE_SIZES)
    kind, limit = _numeric_label(samples)
    if check_expected and kind != _EXPECTED[fam]:
        raise Inconclusive(f"{fam.value}: numeric regime {kind} disagrees with expected {_EXPECTED[fam]}")
    r_inf = _fan_limit if kind == SATURATING and fam is Family.FAN else None
    return RegimeLabel(kind, samples, limit, r_inf)

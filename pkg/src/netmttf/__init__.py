"""Exact reliability polynomials, lifetime moments and large-n expansions of recursive networks."""

from .algebra import RatPoly, SeriesPoly, TruncSeries, series_root_solve
from .architectures import Architecture, Family, Graph, eigen_data, graph, reliability_polynomial, reliability_sequence
from .asymptotics import (
    AsymptoticExpansion,
    ParallelLike,
    SeriesLike,
    WeibullEquivalent,
    coefficient_of_variation_limit,
    doublefan_mttf_expansion,
    moment_expansion_series_like,
    mttf_expansion_parallel_like,
    nonexp_asymptotic_moment,
    signature_from_eigen,
    signature_from_polynomials,
    watson_moment_expansion,
    weibull_equivalent,
)
from .classify import RegimeLabel, classify
from .errors import NetMTTFError
from .moments import (
    Exponential,
    MomentResult,
    PowerLawHazard,
    cumulants_from_moments,
    exact_moment,
    exact_moments,
    fan_limit_moment,
    kn_cumulant,
    mgf_value,
    nonexp_moment,
    weibull,
)
from .oracle import McEstimate, brute_force_polynomial, lifetime_sample, mc_moments

__version__ = "0.1.0"

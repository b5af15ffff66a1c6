"""
Non-exponential components
==========================

If each edge fails as exp(-(lambda t)^kappa), the hazard near p = 1 behaves
like a power law and the moments scale as n^(-m/(kappa i)). The leading
formula is compared here with direct quadrature of the exact polynomial.
"""

from netmttf import Architecture, eigen_data, nonexp_asymptotic_moment, nonexp_moment, reliability_polynomial
from netmttf import signature_from_eigen, weibull

w = weibull(1.0, 2.0)
for fam in ("series", "k4ladder", "street3xn"):
    sig = signature_from_eigen(eigen_data(fam), "series_like", 6)
    print(f"{fam}: exponent {(w.beta + 1) / sig.i:.4f}")
    for n in (10, 20, 40):
        quad = nonexp_moment(reliability_polynomial(Architecture(fam, n)), w).value
        lead = nonexp_asymptotic_moment(sig, w, 1, n)
        print(f"   n={n:3d}  quadrature {quad:.6f}  leading order {lead:.6f}  rel diff {(lead - quad) / quad:+.3f}")

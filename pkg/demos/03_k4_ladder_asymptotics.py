"""
K4 ladder: large-n MTTF
=======================

The K4 ladder is series-like: R_n -> 0. Its dominant transfer eigenvalue
near p = 1 gives -ln zeta_+ = q^4 + 2q^5 - 4q^7 + ..., and the MTTF expands
in powers of n^(-1/4). The table compares the exact MTTF with one, two and
three terms of that expansion.
"""

from netmttf import Architecture, eigen_data, exact_moment, reliability_polynomial
from netmttf import moment_expansion_series_like, signature_from_eigen, watson_moment_expansion

sig = signature_from_eigen(eigen_data("k4ladder"), "series_like", 10)
print("i =", sig.i, " alpha:", {k: str(v) for k, v in sig.alpha.items()})

bracket = moment_expansion_series_like(sig, 1)
for t in bracket.power_terms:
    print(f"  n^-{t.exponent}: {t.exact!r} = {t.coeff:.6f}")

full = watson_moment_expansion(sig.log_zeta, sig.amplitude, 1)
terms = full.nonzero_terms()
print(f"next term: {terms[2].exact!r} n^-{terms[2].exponent}")

print(f"{'n':>5} {'exact':>10} {'1 term':>10} {'2 terms':>10} {'3 terms':>10}")
for n in (4, 8, 16, 32, 64, 128):
    exact = float(exact_moment(reliability_polynomial(Architecture("k4ladder", n))).value_exact)
    approx = [full(n, k) for k in (1, 2, 3)]
    print(f"{n:5d} {exact:10.6f} " + " ".join(f"{a:10.6f}" for a in approx))

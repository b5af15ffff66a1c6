"""
Double fan: a parallel-like family
==================================

Here R_n -> 1 and the MTTF grows like (ln n)/2. The expansion is built from
the unavailability U_n = alpha_+ zeta_+^n near p = 0.
"""

from netmttf import Architecture, doublefan_mttf_expansion, eigen_data, exact_moment, reliability_polynomial
from netmttf import signature_from_eigen

sig = signature_from_eigen(eigen_data("doublefan"), "parallel_like", 6)
print("i =", sig.i, " beta:", {k: str(v) for k, v in sig.beta.items()})

e = doublefan_mttf_expansion(sig)
print(f"{'n':>5} {'exact':>10} {'expansion':>10} {'abs err':>10}")
for n in (4, 8, 16, 32, 64, 128):
    exact = float(exact_moment(reliability_polynomial(Architecture("doublefan", n))).value_exact)
    print(f"{n:5d} {exact:10.6f} {e(n):10.6f} {abs(exact - e(n)):10.2e}")

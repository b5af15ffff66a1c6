"""
Moments and cumulants
=====================

With exponential components p = exp(-lambda t) the m-th moment of the
system lifetime is m! sum_k c_k / k^m in units of 1/lambda, an exact
rational. Cumulants follow from the usual moment recursion.
"""

from netmttf import Architecture, cumulants_from_moments, exact_moments, kn_cumulant, mgf_value, reliability_polynomial

R = reliability_polynomial(Architecture("parallel", 3))
mu = exact_moments(R, 4)
print("parallel n=3 moments:", [str(x.value_exact) for x in mu])
print("           cumulants:", [str(k) for k in cumulants_from_moments(mu)])

# for a k-out-of-n:G system the cumulants are partial zeta sums
for k in (1, 2, 3):
    R = reliability_polynomial(Architecture("kofn", 3, k))
    kap = cumulants_from_moments(exact_moments(R, 3))
    print(f"2..3 k={k}:", [str(x) for x in kap], "closed form:", [str(kn_cumulant(k, 3, m)) for m in (1, 2, 3)])

# the moment generating function, exact at rational z
R = reliability_polynomial(Architecture("k4ladder", 2))
print("K4 n=2 MGF at z = 1/2:", mgf_value(R, "1/2"))

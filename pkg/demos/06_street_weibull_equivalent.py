"""
Street 3xn and its Weibull-equivalent reliability
=================================================

The cut signature can be read off exact polynomials at two sizes by
differencing ln R_n in n. For the street grid it gives i = 3, so the system
lifetime is close to a Weibull law of shape 3, refined by a t^4 correction.
"""

import math

import numpy as np

from netmttf import Architecture, reliability_polynomial, signature_from_polynomials, weibull_equivalent

polys = {n: reliability_polynomial(Architecture("street3xn", n)) for n in (20, 21, 22)}
sig = signature_from_polynomials(polys, "series_like", 6)
print(sig.to_dict())

n = 30
R = reliability_polynomial(Architecture("street3xn", n))
t = np.linspace(0, 1.2, 13)
for order in (0, 1):
    W = weibull_equivalent(sig, order)
    dev = max(abs(R.evalf(math.exp(-x)) - float(W.reliability(x, n))) for x in np.linspace(0, 3, 3001))
    print(f"order {order}: a_i = {W.a_i}, a_(i+1) = {W.a_ip1}, sup deviation at n=30: {dev:.4f}")

W = weibull_equivalent(sig, 1)
print(f"{'lambda t':>9} {'exact':>9} {'R1':>9}")
for x in t:
    print(f"{x:9.2f} {R.evalf(math.exp(-x)):9.5f} {float(W.reliability(x, n)):9.5f}")

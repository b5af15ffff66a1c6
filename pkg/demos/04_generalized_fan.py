"""
Generalized fan: a saturating family
====================================

Because the hub T keeps a short path to the target, R_n(p) tends to
p^2/(1-p(1-p))^2 rather than to 0 or 1, and the moments approach finite
limits. They are available both by quadrature and by a polygamma closed form.
"""

from fractions import Fraction

from netmttf import Architecture, classify, exact_moment, fan_limit_moment, reliability_polynomial

label = classify("fan")
print("regime:", label.kind, " R_inf(1/2) =", label.r_infinity(Fraction(1, 2)))

for m in (1, 2, 3):
    q = fan_limit_moment(m, method="quadrature").value
    c = fan_limit_moment(m, method="closed_form").value
    print(f"m={m}: quadrature {q:.9f}  closed form {c:.9f}")

for n in (5, 10, 20, 30):
    v = float(exact_moment(reliability_polynomial(Architecture("fan", n))).value_exact)
    print(f"n={n:2d}: <t> = {v:.9f}")

"""
Exact reliability polynomials
=============================

Every built-in family produces its two-terminal reliability R_n(p) as an
exact polynomial with rational coefficients. For small sizes the same
polynomial is recovered by enumerating all 2**E edge states of an explicit
graph, which is how the recursions are checked.
"""

from fractions import Fraction

from netmttf import Architecture, brute_force_polynomial, graph, reliability_polynomial

# the first K4 ladder cell
R1 = reliability_polynomial(Architecture("k4ladder", 1))
print("K4 ladder R_1(p) =", R1)

# the same thing from a 6-edge graph, by brute force
print("brute force agrees:", brute_force_polynomial(graph(Architecture("k4ladder", 1))) == R1)

# a small tour of the families at n = 3
for fam in ("series", "parallel", "k4ladder", "fan", "doublefan", "street3xn"):
    a = Architecture(fam, 3)
    R = reliability_polynomial(a)
    g = graph(a)
    print(f"{fam:10s} degree {R.degree:3d}  edges {g.edge_count:3d}  R(1/2) = {R(Fraction(1, 2))}")

# Street 3xn is built from a rational generating function N(z)/(D1(z) D2(z));
# its first coefficients, checked against a 3x2 grid with 7 edges
for n in range(3):
    a = Architecture("street3xn", n)
    ok = brute_force_polynomial(graph(a)) == reliability_polynomial(a)
    print(f"street3xn n={n}: {reliability_polynomial(a).degree}-degree polynomial, brute force agrees: {ok}")

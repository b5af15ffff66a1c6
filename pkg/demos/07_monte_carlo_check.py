"""
Monte Carlo check of the exact moments
======================================

Edge lifetimes are sampled, and the system dies when the widest source-target
path does. The sample mean should sit within a few standard errors of the
exact MTTF. The seed fixes the result regardless of thread count.
"""

from netmttf import Architecture, exact_moment, graph, mc_moments, reliability_polynomial

for fam, n in (("parallel", 3), ("k4ladder", 4), ("doublefan", 6), ("street3xn", 2)):
    a = Architecture(fam, n)
    est = mc_moments(graph(a), 1.0, m_max=2, n_samples=200_000, seed=1)
    exact = [exact_moment(reliability_polynomial(a), m).value for m in (1, 2)]
    for e, x in zip(est, exact):
        print(f"{fam:10s} n={n} m={e.m}: {e.mean:.5f} +- {e.std_error:.5f}   exact {x:.5f}   z = {(e.mean - x) / e.std_error:+.2f}")

"""The archimedean identity battery.

The rank-2 archimedean computation rests on a chain of special-function
identities: a rational x-integral in closed form, an exact combinatorial
collapse to a terminating 2F1, a telescoping K-Bessel sum for the rank-1
coefficient, and the exact vanishing that kills the degenerate orbit's
contribution to the constant term.  Each is replayed here.
"""

from qeis import (arch_constant, bessel_k, bessel_sum_check,
                  comb_identity_check, f0_closed, gamma_integral_check,
                  rank1_vanishing_check, whittaker_at)
from qeis.archimedean import f0_double_sum
from qeis.hermitian import FieldE, global_vector

print("rational integral vs quadrature (three instances):")
for C, Dv, m, nn in ((2.0, 2.0, 0, 1), (1.0, 2.0, 1, 3), (0.5, 1.5, 2, 7)):
    print(f"  int (x^2+{C})^{m}/(x^2+{Dv})^{nn} dx: {gamma_integral_check(C, Dv, m, nn)}")

print("\nexact combinatorial collapse (polynomial identity in z), l <= 12:")
print(" ", all(comb_identity_check(ell)[0] for ell in range(13)))

print("\nradial profile, double sum vs hypergeometric closed form:")
for ell, A, B in ((1, 0.5, 0.5), (4, 1.3, 0.2), (8, 0.1, 2.0)):
    a, b = f0_double_sum(A, B, ell), f0_closed(A, B, ell)
    print(f"  l = {ell}: {a:.15e} vs {b:.15e}")

print("\ntelescoping K-Bessel sum, l <= 6, C in {0.5, 1, 2}:")
print(" ", all(bessel_sum_check(ell, C) for ell in range(7) for C in (0.5, 1.0, 2.0)))

print("\ndegenerate-orbit vanishing (quadrature + exact alternating sum), l <= 10:")
print(" ", all(rank1_vanishing_check(ell, 0) for ell in range(1, 11)))

c = arch_constant(2, 3)
w = whittaker_at(global_vector(1, 0, 1, 0), 3, FieldE(3))
print(f"\narchimedean constant (n=2, l=3): {c.rational} * pi^{c.pi_power}")
print(f"Whittaker datum at T = (1,1): |beta| = 8 pi, K_0(8 pi) = {bessel_k(0, w.beta_abs):.6e}")

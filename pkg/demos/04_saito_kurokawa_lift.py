"""Candidate Saito-Kurokawa type lift from the discriminant form Delta.

Substituting the Satake parameters alpha_p of a weight 2l-n+2 eigenform into
the palindromic Laurent polynomials Qtilde_{T,p}(X) = X^-k Q_{T,p}(X) yields
candidate Fourier coefficients A_h(T); the half powers of p cancel exactly
against the sqrt(p) grading, so every value is a rational polynomial in the
Hecke eigenvalues.  With weight 12 this pairs Delta with l = 6, n = 2.
"""

from qeis import (FieldE, Params, delta_eigenvalues, global_vector,
                  lift_coefficient, norm, standard_L_factors)

F = FieldE(3)
P = Params(n=2, ell=6)
h = delta_eigenvalues(50)
print("Delta eigenvalues:", {p: h.ap[p] for p in (2, 3, 5, 7, 11)})

print("\ncandidate lift coefficients A_Delta(T):")
for coords in ((1, 0, 1, 0), (1, 0, 1, 1), (1, 0, 2, 0), (1, 0, 3, 0),
               (2, 0, 2, 0), (1, 0, 4, 1), (1, 1, 2, 1)):
    T = global_vector(*coords)
    m = norm(T, F)
    if m <= 0:
        continue
    print(f"  <T,T> = {m:3d}  T = {T.as_list()}:  A(T) = {lift_coefficient(T, h, P, F)}")

print("\npredicted standard L-function local data (inverse Euler factors):")
for p in (2, 3, 7):
    desc = standard_L_factors(p, h, P, F)
    print(f"  p = {p} ({desc.splitting}): degree {desc.degree} in p^-s")

"""The Fourier expansion of the weight-3 series for D = 3 at small norms.

The expansion at the identity finite part reads

    E_{l,0}(g) + C_l sum_{<T,T>=0} sigma_{E,l}(T) W_T
              + D_{n,l} sum_{<T,T>>0} (prod_p Q_{T,p}(p^(l-(n-1)/2))) W_T,

with C_3 = -32/9 and D_{2,3} = 432 for D = 3.  Isotropic vectors form an
infinite family, so the table below only covers a declared coordinate box.
"""

from collections import Counter

from qeis import (FieldE, Params, bernoulli, c_ell, d_nl,
                  denominator_bound_check, full_expansion, norm)
from qeis.arith import sigma_k

F = FieldE(3)
P = Params(n=2, ell=3)

table = full_expansion(P, F, bound=6)
print(f"constants: C_3 = {c_ell(P.ell)}, D_{{2,3}} = {d_nl(P, F)}")
ct = table.constant
print(f"constant term: {ct.rational} * zetaE(4)/pi^7 = {ct.numeric:.12e}")
print(f"region: N(a), N(b) <= {table.region_norm_cap};  {len(table.entries)} entries\n")

print("smallest positive-norm coefficients (one representative per norm):")
seen = set()
for e in table.entries:
    m = norm(e.T, F)
    if e.rank != 2 or m in seen:
        continue
    seen.add(m)
    qs = {p: list(q.d) for p, q in e.local_q.items()}
    print(f"  <T,T> = {m}:  a_T = {e.rational}   T = {e.T.as_list()}   Q = {qs}")

ranks = Counter(e.rank for e in table.entries)
print(f"\nrank profile: {dict(ranks)}")

# the uniform denominator bound of the rank-2 family
mult = 36 * abs(bernoulli(2 * P.ell - P.n + 2)) * sigma_k(F.D, P.ell + 1 - P.n // 2)
ok, _ = denominator_bound_check(table)
print(f"denominator multiplier (l!)^2 |B_6| sigma_3(3) = {mult};  all integral: {ok}")

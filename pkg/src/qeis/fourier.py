"""Assembly of the full Fourier expansion at g_f = 1.

Rank-1 coefficients are C_l * sigma_{E,l}(T) with
C_l = (-1)^l 2^(2l+1) / (l!)^2; rank-2 coefficients are
D_{n,l} * prod_{p | <T,T>} Q_{T,p}(p^(l-(n-1)/2)) with

    D_{n,l} = 2^(2n+2) (2l-n+2) D^(l+1-n/2)
              / ((l!)^2 |B_{2l-n+2}| sigma_{l+1-n/2}(D)),

and the constant term is the section value zeta_E(l+1)/pi^(2l+1) itself.
Isotropic vectors form an infinite family, so an expansion table only ever
covers a declared coordinate region; completeness within the region and
determinism of the listing are the contracts.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from .arith import (Splitting, bernoulli, kronecker_symbol, prime_factors,
                    sigma_k, sqrtp_eval_halfint, vp)
from .errors import ResourceBudgetError, ValidationError
from .hermitian import (FieldE, GlobalVector, Params, QuadInt,
                        local_quadratic_data, norm, prime_ideal_valuation)
from .siegel import q_poly
from .archimedean import WhittakerEval, whittaker_at

REGION_SCALE = 2  # coordinate box: N(a), N(b) <= REGION_SCALE * (bound + 1)


# ---------------------------------------------------------------------------
# Rank-1: the ideal divisor sum
# ---------------------------------------------------------------------------

def sigma_E(T: GlobalVector, ell: int, F: FieldE) -> int:
    """prod over prime ideals of sum_{i=0}^{v_p(T)} q^(i l), q the residue size."""
    if not T:
        raise ValidationError("sigma_E of the zero vector")
    na = T.a.norm(F) if T.a else 0
    nb = T.b.norm(F) if T.b else 0
    content = math.gcd(na, nb)
    total = 1
    for p in prime_factors(content):
        cls = F.splitting(p)
        vals = prime_ideal_valuation(T, F, p)
        if cls is Splitting.SPLIT:
            v1, v2 = vals
            total *= sum(p ** (i * ell) for i in range(v1 + 1))
            total *= sum(p ** (i * ell) for i in range(v2 + 1))
        elif cls is Splitting.INERT:
            total *= sum(p ** (2 * i * ell) for i in range(vals + 1))
        else:
            total *= sum(p ** (i * ell) for i in range(vals + 1))
    return total


def c_ell(ell: int) -> Fraction:
    return Fraction((-1) ** ell * 2 ** (2 * ell + 1), math.factorial(ell) ** 2)


def d_nl(P: Params, F: FieldE) -> Fraction:
    """The rank-2 normalizing constant D_{n,l}."""
    n, ell = P.n, P.ell
    w = 2 * ell - n + 2
    half = ell + 1 - n // 2
    num = Fraction(2 ** (2 * n + 2) * w * F.D ** half)
    den = Fraction(math.factorial(ell) ** 2) * abs(bernoulli(w)) * sigma_k(F.D, half)
    return num / den


# ---------------------------------------------------------------------------
# Fourier coefficients
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class FourierCoefficient:
    T: GlobalVector
    rank: int
    rational: Fraction
    sigma: int | None = None
    local_q: dict = field(default_factory=dict)
    whittaker: WhittakerEval | None = None


def rank1_coefficient(T: GlobalVector, P: Params, F: FieldE,
                      with_whittaker: bool = False) -> FourierCoefficient:
    """Coefficient of an isotropic nonzero T: C_l * sigma_{E,l}(T)."""
    if norm(T, F) != 0 or not T:
        raise ValidationError("rank-1 coefficients need <T, T> = 0, T != 0")
    sigma = sigma_E(T, P.ell, F)
    w = whittaker_at(T, P.ell, F) if with_whittaker else None
    return FourierCoefficient(T=T, rank=1, rational=c_ell(P.ell) * sigma,
                              sigma=sigma, whittaker=w)


def rank2_coefficient(T: GlobalVector, P: Params, F: FieldE,
                      nu_scale: Fraction = Fraction(1),
                      with_whittaker: bool = False) -> FourierCoefficient:
    """Coefficient of an anisotropic T with positive norm.

    rational = D_{n,l} * prod_{p | <T,T>} Q_{T,p}(p^(l-(n-1)/2)), scaled by
    |nu(m)|^(n-l) when a finite M-translation with |nu(m)| = nu_scale is
    applied.  Zero when some local polynomial is the zero marker.
    """
    nrm = norm(T, F)
    if nrm <= 0:
        raise ValidationError("rank-2 coefficients need <T, T> > 0")
    two_e = 2 * P.ell - P.n + 1
    local = {}
    prod = Fraction(1)
    for p in prime_factors(nrm):
        if vp(nrm, p) == 0:
            continue
        q = q_poly(local_quadratic_data(T, F, p, P), P)
        if q is None:
            prod = Fraction(0)
            break
        local[p] = q
        prod *= sqrtp_eval_halfint(q, two_e)
    rational = d_nl(P, F) * prod * Fraction(nu_scale) ** (P.n - P.ell)
    w = whittaker_at(T, P.ell, F) if with_whittaker else None
    return FourierCoefficient(T=T, rank=2, rational=rational, local_q=local, whittaker=w)


def coefficient(T: GlobalVector, P: Params, F: FieldE, **kw) -> FourierCoefficient:
    """Dispatch on the sign of the norm (negative norms have zero coefficient)."""
    nrm = norm(T, F)
    if nrm < 0:
        return FourierCoefficient(T=T, rank=2, rational=Fraction(0))
    if nrm == 0:
        return rank1_coefficient(T, P, F, **kw)
    return rank2_coefficient(T, P, F, **kw)


# ---------------------------------------------------------------------------
# Constant term
# ---------------------------------------------------------------------------

def _zeta(s: int, tol: float = 1e-13) -> float:
    n_top = max(int((1.0 / (tol * (s - 1))) ** (1.0 / (s - 1))) + 1, 10)
    total = sum(n ** (-float(s)) for n in range(1, n_top + 1))
    # integral bound on the dropped tail
    return total + n_top ** (1 - s) / (s - 1)


def _l_chi(s: int, D: int, tol: float = 1e-13) -> float:
    n_top = max(int((1.0 / (tol * (s - 1))) ** (1.0 / (s - 1))) + 1, 10)
    return sum(kronecker_symbol(-D, n) * n ** (-float(s)) for n in range(1, n_top + 1))


@dataclass(frozen=True)
class ConstantTerm:
    rational: Fraction
    symbolic: str
    zeta_E: float
    numeric: float


def constant_term(P: Params, F: FieldE) -> ConstantTerm:
    """The section value: rational multiplier 1 times zeta_E(l+1)/pi^(2l+1).

    zeta_E(s) = zeta(s) L(s, chi_{-D}) summed with explicit tail bounds; the
    competing degenerate orbit contributions vanish identically at s = l+1.
    """
    s = P.ell + 1
    zeta_e = _zeta(s) * _l_chi(s, F.D)
    return ConstantTerm(rational=Fraction(1),
                        symbolic="zetaE(l+1)/pi^(2l+1)",
                        zeta_E=zeta_e,
                        numeric=zeta_e / math.pi ** (2 * P.ell + 1))


# ---------------------------------------------------------------------------
# Expansion tables
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ExpansionTable:
    D: int
    params: Params
    bound: int
    region_norm_cap: int
    constant: ConstantTerm
    entries: tuple


def _coords_in_disc(F: FieldE, cap: int):
    """All x + y omega with N <= cap, lexicographic in (x, y)."""
    out = []
    if cap < 0:
        return out
    ymax = int(math.isqrt(4 * cap // F.D)) + 1
    for x in range(-cap - 1, cap + 2):
        for y in range(-ymax, ymax + 1):
            z = QuadInt(x, y)
            if z.norm(F) <= cap:
                out.append(z)
    return out


def _entry_key(T: GlobalVector, F: FieldE):
    return (norm(T, F), T.a.x, T.a.y, T.b.x, T.b.y)


def _table_worker(args):
    T, P, F = args
    return coefficient(T, P, F)


def full_expansion(P: Params, F: FieldE, bound: int, workers: int = 1,
                   max_vectors: int = 200000) -> ExpansionTable:
    """Expansion table over the coordinate region N(a), N(b) <= 2 (bound+1).

    Keeps every enumerated T with 0 <= <T,T> <= bound; the isotropic family
    is infinite, so the table is complete only within the declared region.
    Entries are sorted by (norm, coordinates) and the build is deterministic
    for any worker count.
    """
    if P.n != 2:
        raise ValidationError("expansion tables exist only for the n = 2 model")
    if bound < 0:
        raise ValidationError("bound must be >= 0")
    cap = REGION_SCALE * (bound + 1)
    disc = _coords_in_disc(F, cap)
    vectors = []
    for a in disc:
        for b in disc:
            T = GlobalVector(a, b)
            if not T:
                continue
            if 0 <= norm(T, F) <= bound:
                vectors.append(T)
    if len(vectors) > max_vectors:
        raise ResourceBudgetError(f"{len(vectors)} vectors exceed the table budget")
    vectors.sort(key=lambda T: _entry_key(T, F))
    if workers > 1:
        from multiprocessing import Pool

        with Pool(workers) as pool:
            entries = pool.map(_table_worker, [(T, P, F) for T in vectors])
    else:
        entries = [coefficient(T, P, F) for T in vectors]
    return ExpansionTable(D=F.D, params=P, bound=bound, region_norm_cap=cap,
                          constant=constant_term(P, F), entries=tuple(entries))


def denominator_bound_check(table: ExpansionTable):
    """Every rank-2 rational times (l!)^2 |B_{2l-n+2}| sigma_{l+1-n/2}(D) is integral.

    Returns (True, None) or (False, offending coefficient).
    """
    P = table.params
    w = 2 * P.ell - P.n + 2
    mult = (Fraction(math.factorial(P.ell) ** 2) * abs(bernoulli(w))
            * sigma_k(table.D, P.ell + 1 - P.n // 2))
    for entry in table.entries:
        if entry.rank != 2:
            continue
        if (entry.rational * mult).denominator != 1:
            return False, entry
    return True, None

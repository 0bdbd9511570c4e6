"""Archimedean component: the generalized Whittaker template and checkers.

The Whittaker function at the identity is a vector of 2l+1 K-Bessel values
with a unit-modulus phase; everything exact lives in :func:`arch_constant`
and the identity checkers, which replay in exact rational arithmetic (or
controlled quadrature) every special-function identity consumed by the
Fourier-coefficient computation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from scipy import integrate

from .arith import hyp2f1_terminating
from .bessel import bessel_k
from .errors import NumericError, ValidationError
from .hermitian import FieldE, GlobalVector

TWO_PI = 2.0 * math.pi


# ---------------------------------------------------------------------------
# Whittaker evaluation
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class WhittakerEval:
    """The 2l+1 components of W_T at the identity group element.

    components[v + ell] = phase^v * K_v(beta_abs) for v = -ell..ell.
    """

    ell: int
    beta_abs: float
    phase: complex
    components: tuple


@dataclass(frozen=True)
class PiRational:
    """Exact representation of rational * pi^pi_power."""

    rational: Fraction
    pi_power: int

    def value(self) -> float:
        return float(self.rational) * math.pi ** self.pi_power


def whittaker_at(T: GlobalVector, ell: int, F: FieldE) -> WhittakerEval:
    """W_T(1) component data; beta_T(1) = 4 sqrt(2) pi <u_2, T>.

    In the n = 2 model <u_2, T> = (conj(a) + conj(b))/sqrt(2), so
    |beta| = 4 pi |a + b| and the phase is (a + b)/|a + b|.
    """
    s = T.a.add(T.b).complex_embed(F)
    if s == 0:
        raise ValidationError("degenerate Whittaker datum: <u_2, T> = 0")
    beta_abs = 4.0 * math.pi * abs(s)
    phase = s / abs(s)
    comps = []
    for v in range(-ell, ell + 1):
        comps.append(phase ** v * bessel_k(abs(v), beta_abs))
    return WhittakerEval(ell=ell, beta_abs=beta_abs, phase=phase, components=tuple(comps))


def arch_constant(n: int, ell: int) -> PiRational:
    """T-independent archimedean factor 2^(2l+n+3) / ((l!)^2 (2l-n+1)!) * pi^(2l-n+2)."""
    if ell <= n:
        raise ValidationError("arch_constant needs ell > n")
    rat = Fraction(2 ** (2 * ell + n + 3),
                   math.factorial(ell) ** 2 * math.factorial(2 * ell - n + 1))
    return PiRational(rational=rat, pi_power=2 * ell - n + 2)


# ---------------------------------------------------------------------------
# Identity checkers
# ---------------------------------------------------------------------------

def _quad(f, a, b, **kw):
    val, err = integrate.quad(f, a, b, limit=400, epsabs=1e-14, epsrel=1e-12, **kw)
    if not math.isfinite(val) or err > 1e-9 * max(abs(val), 1e-30) + 1e-14:
        raise NumericError(f"quadrature failed: value {val}, error estimate {err}")
    return val


def gamma_integral_closed(C: float, Dv: float, m: int, nn: int) -> float:
    """Closed form of int_R (x^2+C)^m / (x^2+Dv)^nn dx for m < nn, Dv > 0."""
    total = 0.0
    for k in range(m + 1):
        total += (math.comb(m, k) * (C / Dv) ** (m - k)
                  * math.gamma(k + 0.5) * math.gamma(nn - k - 0.5))
    return Dv ** (m - nn + 0.5) / math.factorial(nn - 1) * total


def gamma_integral_check(C: float, Dv: float, m: int, nn: int,
                         rel_tol: float = 1e-9) -> bool:
    """Adaptive quadrature of the rational integral against its closed form."""
    if Dv <= 0 or not m < nn:
        raise ValidationError("need Dv > 0 and m < nn")
    closed = gamma_integral_closed(C, Dv, m, nn)
    num = 2.0 * _quad(lambda x: (x * x + C) ** m / (x * x + Dv) ** nn, 0.0, math.inf)
    return abs(num - closed) <= rel_tol * abs(closed)


def _cjk(ell: int, j: int, k: int) -> int:
    return (math.comb(ell, k) ** 2 * math.comb(k, j)
            * math.factorial(2 * j) * math.factorial(4 * ell - 2 * j)
            // (math.factorial(j) * math.factorial(2 * ell - j)))


def comb_identity_check(ell: int):
    """Exact polynomial identity behind the hypergeometric collapse.

    Expands sum_{k,j} c_{j,k} (-z)^(l-k) (1-z)^(k-j) and compares with
    sum_r (-1)^r 2^(2l-2r) (2l)!(2l+2r)! / ((r!)^2 (l+r)!(l-r)!) z^r
    coefficientwise over Q, plus the two combinatorial lemmas feeding it.
    Returns (True, None) or (False, first mismatching power).
    """
    lhs = [Fraction(0)] * (ell + 1)
    for k in range(ell + 1):
        for j in range(k + 1):
            c = _cjk(ell, j, k)
            # (-z)^(l-k) (1-z)^(k-j) accumulated exactly
            for i in range(k - j + 1):
                power = (ell - k) + i
                sign = (-1) ** (ell - k) * (-1) ** i
                lhs[power] += c * sign * math.comb(k - j, i)
    for r in range(ell + 1):
        rhs = (Fraction((-1) ** r * 2 ** (2 * ell - 2 * r))
               * math.factorial(2 * ell) * math.factorial(2 * ell + 2 * r)
               / (math.factorial(r) ** 2 * math.factorial(ell + r)
                  * math.factorial(ell - r)))
        if lhs[r] != rhs:
            return False, r
    # binomial convolution lemma: sum_i C(b,i) C(b-a, b-i) = C(2b-a, b)
    for a in range(ell + 1):
        b = ell
        if sum(math.comb(b, i) * math.comb(b - a, b - i) for i in range(a, b + 1)) \
                != math.comb(2 * b - a, b):
            return False, -1
    # Chu-Vandermonde collapse: 2F1(-(l-r), 1/2; -2l+1/2; 1)
    for r in range(ell + 1):
        lhs2 = sum(Fraction(math.comb(2 * ell, i) * math.comb(ell - r, i),
                            math.comb(4 * ell, 2 * i)) for i in range(ell - r + 1))
        rhs2 = Fraction(2 ** (2 * ell - 2 * r) * math.comb(2 * ell + 2 * r, ell + r),
                        math.comb(4 * ell, 2 * ell))
        if lhs2 != rhs2:
            return False, -2
    return True, None


def f0_closed(Av: float, Bv: float, ell: int) -> float:
    """Hypergeometric closed form of the radial profile F_{0,l}.

    2^(-2l) (2l)! pi^(-2l) / ((l!)^2 (A+B)^(l+1/2)) * 2F1(-l, l+1/2; 1; B/(A+B)).
    """
    if Av + Bv <= 0:
        raise ValidationError("need A + B > 0")
    hyp = float(hyp2f1_terminating(ell, Fraction(2 * ell + 1, 2), Fraction(1),
                                   Fraction(Bv) / (Fraction(Av) + Fraction(Bv))))
    pref = (2.0 ** (-2 * ell) * math.factorial(2 * ell) * math.pi ** (-2 * ell)
            / (math.factorial(ell) ** 2 * (Av + Bv) ** (ell + 0.5)))
    return pref * hyp


def f0_double_sum(Av: float, Bv: float, ell: int) -> float:
    """Pre-hypergeometric double-sum form of F_{0,l}, for cross-checking."""
    total = 0.0
    for k in range(ell + 1):
        inner = 0.0
        for j in range(k + 1):
            inner += (math.comb(k, j) * (Av / (Av + Bv)) ** (k - j)
                      * math.factorial(2 * j) * math.factorial(4 * ell - 2 * j)
                      / (2.0 ** (4 * ell) * math.factorial(j) * math.factorial(2 * ell - j)))
        total += ((-Bv) ** (ell - k) * math.comb(ell, k) ** 2
                  * (Av + Bv) ** (k - 2 * ell - 0.5) / math.factorial(2 * ell) * inner)
    return math.pi ** (-2 * ell) * total


def bessel_sum_check(ell: int, C: float, rel_tol: float = 1e-10) -> bool:
    """Telescoping K-Bessel sum: S_l = (-1)^l C^(2l)/(l!)^2 K_0(2C).

    The alternating sum cancels about 2l log10(1/C) + log10(K_2l/K_0) digits
    (15 at l = 6, C = 0.5), so meeting the stated relative tolerance needs
    working precision well past binary64; the sum is therefore evaluated at
    50 digits with an independent arbitrary-precision Bessel.
    """
    import mpmath as mp

    if not 0.1 <= C <= 10:
        raise ValidationError("C outside the checked window [0.1, 10]")
    with mp.workdps(50):
        Cm = mp.mpf(C)
        lhs = mp.fsum((-1) ** k * Cm ** (ell + k) * mp.besselk(ell + k, 2 * Cm)
                      / (mp.factorial(k) ** 2 * mp.factorial(ell - k))
                      for k in range(ell + 1))
        rhs = (-1) ** ell * Cm ** (2 * ell) / mp.factorial(ell) ** 2 \
            * mp.besselk(0, 2 * Cm)
        ok = abs(lhs - rhs) <= rel_tol * abs(rhs)
    # anchor the binary64 Bessel to the same identity where it can resolve it
    if ell <= 1:
        lhs64 = sum((-1) ** k * C ** (ell + k) * bessel_k(ell + k, 2 * C)
                    / (math.factorial(k) ** 2 * math.factorial(ell - k))
                    for k in range(ell + 1))
        rhs64 = ((-1) ** ell * C ** (2 * ell) / math.factorial(ell) ** 2
                 * bessel_k(0, 2 * C))
        ok = ok and abs(lhs64 - rhs64) <= 1e-9 * abs(rhs64)
    return ok


def rank1_vanishing_check(ell: int, j: int, rel_tol: float = 1e-9) -> bool:
    """Planar integral value and the alternating factorial sum that kills it.

    (a) 2 pi int_0^inf rho^(2l-2j+1) / (1+rho^2)^(2l+1) drho equals
        pi (l-j)! (l+j-1)! / (2l)! to rel_tol;
    (b) sum_j (-1)^j C(l,j)^2 (l-j)! (l+j-1)! = 0 exactly (l >= 1).
    """
    if not (ell >= 1 and 0 <= j <= ell):
        raise ValidationError("need l >= 1 and 0 <= j <= l")
    num = TWO_PI * _quad(
        lambda r: r ** (2 * ell - 2 * j + 1) / (1 + r * r) ** (2 * ell + 1),
        0.0, math.inf)
    closed = (math.pi * math.factorial(ell - j) * math.factorial(ell + j - 1)
              / math.factorial(2 * ell))
    if abs(num - closed) > rel_tol * abs(closed):
        return False
    alt = sum((-1) ** i * math.comb(ell, i) ** 2
              * math.factorial(ell - i) * math.factorial(ell + i - 1)
              for i in range(ell + 1))
    if alt != 0:
        return False
    # same vanishing through the hypergeometric lens: 2F1(l, -l; 1; 1) = 0
    return hyp2f1_terminating(ell, Fraction(ell), Fraction(1), Fraction(1)) == 0


# ---------------------------------------------------------------------------
# Flagged slow check of the rank-2 archimedean constant
# ---------------------------------------------------------------------------

def fourier_constant_quadrature(ell: int = 3, r_cut: float = 30.0,
                                rho_cut: float = 30.0) -> tuple:
    """Direct quadrature of the rank-2 archimedean integral at T = (1, 1), n = 2.

    The 4+1 dimensional integral defining the u1^l u2^l coefficient collapses
    to two radial variables: with w = z1 + z2, d = z1 - z2, Lebesgue measure
    on the complex coordinates, and the character e^(-2 pi i tr<T, v>)
    (tr<T, v> = 2 Re(w), matching the 4 sqrt(2) pi normalization of beta),

        I_0 = pi^(1-2l) int_0^inf int_0^inf J_0(4 pi R) R rho G(A, B) dR drho,

    where B = R^2, A = (1 - (R^2 - rho^2)/4)^2 and G is the x-integrated
    kernel in closed form.  Returns (numeric, expected) with expected =
    2^(2l+n+3) pi^(2l-n+2) <T,T>^(2l-n+1) / ((l!)^2 (2l-n+1)!) * K_0(8 pi).
    """
    from scipy.special import j0

    n = 2

    def kernel(R: float, rho: float) -> float:
        B = R * R
        A = (1.0 - (R * R - rho * rho) / 4.0) ** 2
        total = 0.0
        for k in range(ell + 1):
            total += (math.comb(ell, k) ** 2 * (-B) ** (ell - k)
                      * gamma_integral_closed(A, A + B, k, 2 * ell + 1))
        return total

    inner = lambda rho, R: kernel(R, rho) * rho

    def outer(R: float) -> float:
        val, _ = integrate.quad(inner, 0.0, rho_cut, args=(R,), limit=300,
                                epsabs=1e-15, epsrel=1e-13)
        return val * j0(2 * TWO_PI * R) * R

    num, _ = integrate.quad(outer, 0.0, r_cut, limit=2000,
                            epsabs=1e-13, epsrel=1e-10)
    num *= math.pi ** (1 - 2 * ell)
    norm_T = 2
    expected = (2 ** (2 * ell + n + 3) * math.pi ** (2 * ell - n + 2)
                * norm_T ** (2 * ell - n + 1)
                / (math.factorial(ell) ** 2 * math.factorial(2 * ell - n + 1))
                * bessel_k(0, 8 * math.pi))
    return num, expected

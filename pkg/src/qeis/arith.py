"""Exact arithmetic substrate.

Everything in this module is pure and exact: big rationals are
``fractions.Fraction``, polynomials are coefficient lists of Python ints or
Fractions, and no floating point ever enters.  The slightly unusual citizen
is :class:`SqrtPPoly`, a polynomial whose even-degree coefficients are
integers and whose odd-degree coefficients are integer multiples of p^(1/2);
it is stored as the integer vector d with coefficient(X^i) = d[i] * p^((i%2)/2),
so the irrationality never materialises.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from functools import lru_cache

from .errors import InternalConsistencyError, ValidationError

Rational = Fraction


# ---------------------------------------------------------------------------
# Bernoulli numbers
# ---------------------------------------------------------------------------

@lru_cache(maxsize=None)
def bernoulli(k: int) -> Fraction:
    """k-th Bernoulli number, convention B_1 = -1/2.

    Computed from the defining recurrence sum_{j=0}^{k} C(k+1, j) B_j = 0.
    Only |B_{2m}| is consumed downstream, so the B_1 sign convention is
    inert there.
    """
    if k < 0:
        raise ValidationError("bernoulli index must be >= 0")
    if k == 0:
        return Fraction(1)
    if k == 1:
        return Fraction(-1, 2)
    if k % 2 == 1:
        return Fraction(0)
    acc = Fraction(0)
    for j in range(k):
        acc += math.comb(k + 1, j) * bernoulli(j)
    return -acc / (k + 1)


# ---------------------------------------------------------------------------
# Ramanujan sums
# ---------------------------------------------------------------------------

def vp(x: int, p: int) -> int | float:
    """p-adic valuation of an integer, with vp(0) = +inf."""
    if x == 0:
        return math.inf
    v = 0
    while x % p == 0:
        x //= p
        v += 1
    return v


def ramanujan_sum(p: int, s: int, t: int) -> int:
    """Sum of e^(2 pi i c t / p^s) over units c mod p^s.

    Evaluated by the closed three-case formula, never by summing roots of
    unity, so the result stays an exact integer:

        p^s - p^(s-1)   if p^s  | t,
        -p^(s-1)        if p^(s-1) exactly divides t,
        0               otherwise.
    """
    if s < 0:
        raise ValidationError("ramanujan_sum needs s >= 0")
    if s == 0:
        return 1
    v = vp(t, p)
    if v >= s:
        return p ** s - p ** (s - 1)
    if v == s - 1:
        return -(p ** (s - 1))
    return 0


# ---------------------------------------------------------------------------
# Prime splitting in Q(sqrt(-D))
# ---------------------------------------------------------------------------

class Splitting(Enum):
    SPLIT = "split"
    INERT = "inert"
    RAMIFIED = "ramified"


def is_squarefree(n: int) -> bool:
    if n <= 0:
        return False
    d = 2
    while d * d <= n:
        if n % (d * d) == 0:
            return False
        d += 1
    return True


def validate_D(D: int) -> None:
    """D must be squarefree and congruent to 3 mod 4 (so 2 is unramified)."""
    if D <= 0 or D % 4 != 3 or not is_squarefree(D):
        raise ValidationError(f"D = {D} is not a squarefree positive integer = 3 mod 4")


def splitting_class(D: int, p: int) -> Splitting:
    """How the rational prime p decomposes in Q(sqrt(-D)).

    Ramified iff p | D; otherwise split or inert according to whether -D is
    a square mod p (odd p) or to -D mod 8 (p = 2).  D = 3 mod 4 guarantees
    p = 2 is never ramified.
    """
    validate_D(D)
    if D % p == 0:
        return Splitting.RAMIFIED
    if p == 2:
        return Splitting.SPLIT if (-D) % 8 == 1 else Splitting.INERT
    ls = pow(-D % p, (p - 1) // 2, p)
    return Splitting.SPLIT if ls == 1 else Splitting.INERT


# ---------------------------------------------------------------------------
# Terminating 2F1
# ---------------------------------------------------------------------------

def hyp2f1_terminating(neg_a: int, b: Fraction, c: Fraction, z: Fraction) -> Fraction:
    """Exact value of 2F1(-neg_a, b; c; z), a terminating series.

    Returns sum_{j=0}^{neg_a} ((-neg_a)_j (b)_j / (c)_j) z^j / j! in exact
    rational arithmetic.  Raises if a Pochhammer denominator (c)_j hits zero
    before the series terminates.
    """
    if neg_a < 0:
        raise ValidationError("termination index must be >= 0")
    b = Fraction(b)
    c = Fraction(c)
    z = Fraction(z)
    total = Fraction(1)
    term = Fraction(1)
    for j in range(neg_a):
        cj = c + j
        if cj == 0:
            raise ValidationError(f"2F1 pole: (c)_j vanishes at j = {j + 1}")
        term *= Fraction(-(neg_a - j)) * (b + j) / cj * z / (j + 1)
        total += term
    return total


def pochhammer(a: Fraction, n: int) -> Fraction:
    """Rising factorial (a)_n."""
    out = Fraction(1)
    for i in range(n):
        out *= a + i
    return out


# ---------------------------------------------------------------------------
# Integer polynomials
# ---------------------------------------------------------------------------

def _strip(coeffs):
    coeffs = list(coeffs)
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    return coeffs


@dataclass(frozen=True)
class IntPoly:
    """Dense integer polynomial, index = degree, trailing coefficient nonzero."""

    coeffs: tuple

    def __init__(self, coeffs):
        object.__setattr__(self, "coeffs", tuple(_strip(coeffs)))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1 if self.coeffs else -1

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == 1

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __eq__(self, other):
        return isinstance(other, IntPoly) and self.coeffs == other.coeffs

    def is_palindromic(self) -> bool:
        """X^deg P(1/X) == P(X)."""
        return self.coeffs == self.coeffs[::-1]


# ---------------------------------------------------------------------------
# Truncated series in t = p^{-s}
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SeriesPoly:
    """Finite series in an abstract variable t, rational coefficients."""

    coeffs: tuple

    def __init__(self, coeffs):
        object.__setattr__(self, "coeffs", tuple(_strip([Fraction(c) for c in coeffs])))

    def __getitem__(self, i: int) -> Fraction:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else Fraction(0)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1 if self.coeffs else -1

    def __eq__(self, other):
        return isinstance(other, SeriesPoly) and self.coeffs == other.coeffs

    def __add__(self, other: "SeriesPoly") -> "SeriesPoly":
        n = max(len(self.coeffs), len(other.coeffs))
        return SeriesPoly([self[i] + other[i] for i in range(n)])

    def __sub__(self, other: "SeriesPoly") -> "SeriesPoly":
        n = max(len(self.coeffs), len(other.coeffs))
        return SeriesPoly([self[i] - other[i] for i in range(n)])

    def scaled(self, c) -> "SeriesPoly":
        return SeriesPoly([Fraction(c) * x for x in self.coeffs])

    def divide_exact(self, root: Fraction, shift: int) -> "SeriesPoly":
        """Exact quotient by (1 - root * t^shift); nonzero remainder is an error."""
        root = Fraction(root)
        n = self.degree
        if n < 0:
            return SeriesPoly([])
        quot = [Fraction(0)] * max(n + 1 - shift, 0)
        for i in range(n + 1):
            prev = quot[i - shift] if i >= shift else Fraction(0)
            val = self[i] + root * prev
            if i < len(quot):
                quot[i] = val
            elif val != 0:
                raise InternalConsistencyError(
                    f"series not divisible by (1 - {root} t^{shift}); residue at t^{i}"
                )
        return SeriesPoly(quot)


# ---------------------------------------------------------------------------
# sqrt(p)-graded polynomials
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SqrtPPoly:
    """Polynomial in Z[X^2] + p^(1/2) X Z[X^2], stored as the integer vector d.

    The true coefficient of X^i is d[i] * p^((i % 2)/2), so even-degree
    coefficients are integers and odd-degree ones integer multiples of
    sqrt(p).
    """

    p: int
    d: tuple

    def __init__(self, p: int, d):
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "d", tuple(_strip(d)))

    @property
    def degree(self) -> int:
        return len(self.d) - 1 if self.d else -1

    def is_zero(self) -> bool:
        return not self.d

    def is_monic(self) -> bool:
        return bool(self.d) and self.d[-1] == 1 and self.degree % 2 == 0

    def is_palindromic(self) -> bool:
        """X^deg Q(1/X) == Q(X), coefficientwise on the d vector."""
        return self.d == self.d[::-1]

    def __eq__(self, other):
        return isinstance(other, SqrtPPoly) and self.p == other.p and self.d == other.d


def _sqrtp_eval_frac(q: SqrtPPoly, two_e: int) -> Fraction:
    """Value of q at X = p^(two_e / 2) as an exact rational.

    Each monomial contributes d_i * p^((i*two_e + (i % 2))/2); the exponent
    is an integer whenever two_e is odd, which is the only parity accepted.
    """
    if two_e % 2 == 0:
        raise ValidationError("evaluation point exponent 2e must be odd")
    total = Fraction(0)
    for i, di in enumerate(q.d):
        if di == 0:
            continue
        num = i * two_e + (i % 2)
        if num % 2 != 0:
            raise InternalConsistencyError("parity pattern broken in SqrtPPoly")
        e = num // 2
        total += di * (Fraction(q.p) ** e)
    return total


def sqrtp_eval_halfint(q: SqrtPPoly, two_e: int) -> int:
    """Exact integer value of q at X = p^(two_e/2) for odd two_e > 0.

    Integrality is guaranteed by the parity grading and is asserted; a
    fractional result signals a corrupted polynomial.
    """
    if two_e <= 0:
        raise ValidationError("two_e must be a positive odd integer")
    val = _sqrtp_eval_frac(q, two_e)
    if val.denominator != 1:
        raise InternalConsistencyError(f"non-integral value {val} for {q}")
    return val.numerator


# ---------------------------------------------------------------------------
# Misc small number theory helpers
# ---------------------------------------------------------------------------

def prime_factors(n: int) -> list:
    """Sorted distinct prime factors of |n|, by trial division."""
    n = abs(n)
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        out.append(n)
    return out


def sigma_k(n: int, k: int) -> int:
    """Divisor power sum sigma_k(n) = sum_{d | n} d^k for n >= 1."""
    if n < 1:
        raise ValidationError("sigma_k needs n >= 1")
    total = 0
    for d in range(1, n + 1):
        if n % d == 0:
            total += d ** k
    return total


def kronecker_symbol(a: int, n: int) -> int:
    """Kronecker symbol (a/n) for n >= 1."""
    if n <= 0:
        raise ValidationError("kronecker_symbol implemented for n >= 1 only")
    if n == 1:
        return 1
    result = 1
    # factor out 2s from n
    while n % 2 == 0:
        n //= 2
        if a % 2 == 0:
            return 0
        if a % 8 in (3, 5):
            result = -result
    if n == 1:
        return result
    # Jacobi symbol for odd n > 1
    a %= n
    while a != 0:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                result = -result
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            result = -result
        a %= n
    return result if n == 1 else 0

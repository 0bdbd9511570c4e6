import math
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from qeis.arith import (IntPoly, SeriesPoly, Splitting, SqrtPPoly,
                        _sqrtp_eval_frac, bernoulli, hyp2f1_terminating,
                        kronecker_symbol, pochhammer, ramanujan_sum,
                        splitting_class, sqrtp_eval_halfint, vp)
from qeis.errors import InternalConsistencyError, ValidationError


# ---------------------------------------------------------------------------
# Bernoulli numbers
# ---------------------------------------------------------------------------

def test_bernoulli_values():
    assert bernoulli(0) == 1
    assert bernoulli(1) == Fraction(-1, 2)
    assert bernoulli(2) == Fraction(1, 6)
    assert bernoulli(6) == Fraction(1, 42)
    assert bernoulli(7) == 0


def test_bernoulli_recurrence():
    # sum_{j=0}^{k} C(k+1, j) B_j = 0 for all k >= 1
    for k in range(1, 41):
        total = sum(math.comb(k + 1, j) * bernoulli(j) for j in range(k + 1))
        assert total == 0, k


def test_bernoulli_rejects_negative():
    with pytest.raises(ValidationError):
        bernoulli(-1)


# ---------------------------------------------------------------------------
# Ramanujan sums
# ---------------------------------------------------------------------------

def _unit_sum_oracle(p, s, t):
    """Exact unit character sum by residue grouping.

    Groups c*t by the valuation of the residue; each level carries primitive
    roots of unity of one order, whose full sum is 1 (order 1), -1 (order p),
    or 0, by the geometric-series identity alone.
    """
    if s == 0:
        return 1
    m = p ** s
    per_level = {}
    for c in range(1, m):
        if c % p == 0:
            continue
        r = (c * t) % m
        j = s if r == 0 else vp(r, p)
        per_level[j] = per_level.get(j, 0) + 1
    total = 0
    for j, cnt in per_level.items():
        order = p ** (s - j)
        n_prim = 1 if order == 1 else order - order // p
        assert cnt % n_prim == 0
        prim_sum = 1 if order == 1 else (-1 if order == p else 0)
        total += (cnt // n_prim) * prim_sum
    return total


def test_ramanujan_examples():
    assert ramanujan_sum(3, 0, 5) == 1
    assert ramanujan_sum(3, 1, 1) == -1
    assert ramanujan_sum(3, 2, 3) == -3


def test_ramanujan_against_unit_sum():
    for p in (2, 3, 5):
        for s in range(0, 5):
            for t in range(-p ** 5, p ** 5 + 1):
                assert ramanujan_sum(p, s, t) == _unit_sum_oracle(p, s, t), (p, s, t)


# ---------------------------------------------------------------------------
# Splitting classification
# ---------------------------------------------------------------------------

def test_splitting_examples():
    assert splitting_class(3, 3) is Splitting.RAMIFIED
    assert splitting_class(3, 7) is Splitting.SPLIT
    assert splitting_class(3, 2) is Splitting.INERT


def test_splitting_matches_kronecker():
    primes = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31]
    for D in (3, 7, 11, 15, 19, 23):
        for p in primes:
            chi = kronecker_symbol(-D, p)
            cls = splitting_class(D, p)
            expect = {1: Splitting.SPLIT, -1: Splitting.INERT, 0: Splitting.RAMIFIED}[chi]
            assert cls is expect, (D, p)


def test_splitting_rejects_bad_D():
    for D in (4, 5, 12, -3, 27):
        with pytest.raises(ValidationError):
            splitting_class(D, 5)


# ---------------------------------------------------------------------------
# Terminating hypergeometric series
# ---------------------------------------------------------------------------

def test_hyp2f1_examples():
    # two-term series, generic
    b, c, z = Fraction(2, 3), Fraction(5, 7), Fraction(1, 2)
    assert hyp2f1_terminating(1, b, c, z) == 1 - b * z / c
    assert hyp2f1_terminating(1, Fraction(1, 2), Fraction(-3, 2), 1) == Fraction(4, 3)
    # 2F1(-1, 2; 1; 1) with ell = 1: value 1 - 2 = -1... the rank-1 instance:
    assert hyp2f1_terminating(1, Fraction(1), Fraction(1), Fraction(1)) == 0


def test_hyp2f1_chu_vandermonde_family():
    # 2F1(-(l-r), 1/2; -2l+1/2; 1) = (-2l)_{l-r} / (-2l+1/2)_{l-r}
    for ell in range(0, 11):
        for r in range(0, ell + 1):
            lhs = hyp2f1_terminating(ell - r, Fraction(1, 2),
                                     Fraction(-4 * ell + 1, 2), 1)
            rhs = pochhammer(Fraction(-2 * ell), ell - r) \
                / pochhammer(Fraction(-4 * ell + 1, 2), ell - r)
            assert lhs == rhs, (ell, r)


def test_hyp2f1_pole_detection():
    with pytest.raises(ValidationError):
        hyp2f1_terminating(3, Fraction(1), Fraction(-1), Fraction(1, 2))


# ---------------------------------------------------------------------------
# sqrt(p)-graded polynomials
# ---------------------------------------------------------------------------

def test_sqrtp_eval_examples():
    assert sqrtp_eval_halfint(SqrtPPoly(5, [1]), 7) == 1
    assert sqrtp_eval_halfint(SqrtPPoly(2, [1, 0, 1]), 5) == 33
    assert sqrtp_eval_halfint(SqrtPPoly(3, [0, 1]), 3) == 9


def test_sqrtp_eval_rejects_even_exponent():
    with pytest.raises(ValidationError):
        sqrtp_eval_halfint(SqrtPPoly(3, [1]), 4)
    with pytest.raises(ValidationError):
        sqrtp_eval_halfint(SqrtPPoly(3, [1]), -3)


@given(st.integers(0, 3).flatmap(
    lambda k: st.tuples(st.sampled_from([2, 3, 5]),
                        st.lists(st.integers(-9, 9), min_size=k + 1, max_size=k + 1),
                        st.sampled_from([1, 3, 5, 7]))))
def test_sqrtp_functional_equation_evaluation(args):
    # palindromic d-vector: value * p^(-k e) is invariant under e <-> -e
    p, half, two_e = args
    if half[0] == 0:
        half[0] = 1  # keep the reversed tail from being stripped
    d = half + half[-2::-1]   # force d_i = d_{2k-i}
    q = SqrtPPoly(p, d)
    k = len(half) - 1
    assert q.is_palindromic() and q.degree == 2 * k
    # X^(2k) Q(1/X) = Q(X) evaluated at X = p^(two_e/2), denominators cleared:
    # the half powers of p cancel pairwise, so both sides are exact rationals
    assert _sqrtp_eval_frac(q, two_e) == \
        _sqrtp_eval_frac(q, -two_e) * Fraction(p) ** (k * two_e)


# ---------------------------------------------------------------------------
# Polynomial containers
# ---------------------------------------------------------------------------

def test_intpoly_basics():
    poly = IntPoly([1, 2, 1])
    assert poly.degree == 2
    assert poly.is_monic()
    assert poly.is_palindromic()
    assert poly(2) == 9
    assert IntPoly([0, 0]).is_zero()


def test_seriespoly_divide_exact():
    # (1 - 3 t) * (1 + t + t^2) = 1 - 2t - 2t^2 - 3t^3
    s = SeriesPoly([1, -2, -2, -3])
    q = s.divide_exact(Fraction(3), 1)
    assert q == SeriesPoly([1, 1, 1])
    with pytest.raises(InternalConsistencyError):
        SeriesPoly([1, 1]).divide_exact(Fraction(3), 1)


def test_seriespoly_divide_by_t_squared_factor():
    # (1 - 4 t^2) * (1 + t + 8 t^2) = 1 + t + 4t^2 - 4t^3 - 32 t^4
    s = SeriesPoly([1, 1, 4, -4, -32])
    q = s.divide_exact(Fraction(4), 2)
    assert q == SeriesPoly([1, 1, 8])


def test_kronecker_symbol_is_legendre_at_odd_primes():
    for p in (3, 5, 7, 11, 13):
        squares = {(x * x) % p for x in range(1, p)}
        for a in range(1, p):
            expect = 1 if a in squares else -1
            assert kronecker_symbol(a, p) == expect, (a, p)
        assert kronecker_symbol(p, p) == 0

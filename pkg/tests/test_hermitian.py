import random

import pytest
from hypothesis import given, strategies as st

from qeis.arith import Splitting, vp
from qeis.errors import ValidationError
from qeis.hermitian import (FieldE, GlobalVector, Params, QuadInt,
                            global_vector, local_quadratic_data, norm,
                            omega_root_lift, prime_ideal_valuation, quadint,
                            ramified_unit, sqrt_minus_D)

F3 = FieldE(3)
F7 = FieldE(7)
P2 = Params(n=2, ell=3)

qi = st.builds(QuadInt, st.integers(-50, 50), st.integers(-50, 50))


# ---------------------------------------------------------------------------
# Quadratic integer ring
# ---------------------------------------------------------------------------

@given(qi, qi)
def test_conjugation_is_ring_automorphism(a, b):
    lhs = a.mul(b, F3).conj()
    rhs = a.conj().mul(b.conj(), F3)
    assert lhs == rhs
    assert a.conj().conj() == a
    assert a.add(b).conj() == a.conj().add(b.conj())


@given(qi, qi)
def test_norm_is_multiplicative(a, b):
    assert a.mul(b, F7).norm(F7) == a.norm(F7) * b.norm(F7)


@given(qi)
def test_norm_equals_self_times_conjugate(a):
    prod = a.mul(a.conj(), F3)
    assert prod == QuadInt(a.norm(F3), 0)
    assert a.trace() == a.add(a.conj()).x


def test_sqrt_minus_D_square():
    w = sqrt_minus_D()
    assert w.mul(w, F3) == QuadInt(-3, 0)
    assert w.mul(w, F7) == QuadInt(-7, 0)
    assert w.trace() == 0


# ---------------------------------------------------------------------------
# Global vectors and norms
# ---------------------------------------------------------------------------

def test_norm_examples():
    assert norm(global_vector(1, 0, 1, 0), F3) == 2
    # b = sqrt(-3) = -1 + 2 omega gives an isotropic vector
    assert norm(GlobalVector(quadint(1), QuadInt(-1, 2)), F3) == 0
    assert norm(global_vector(0, 0, 0, 0), F3) == 0


def test_params_validation():
    with pytest.raises(ValidationError):
        Params(n=3, ell=5)
    with pytest.raises(ValidationError):
        Params(n=2, ell=2)
    Params(n=6, ell=7)


# ---------------------------------------------------------------------------
# Prime ideal valuations
# ---------------------------------------------------------------------------

def test_prime_ideal_valuation_examples():
    T = GlobalVector(quadint(1), QuadInt(-1, 2))  # (1, sqrt(-3))
    assert prime_ideal_valuation(T, F3, 3) == 0
    T2 = GlobalVector(quadint(2), QuadInt(-2, 4))  # (2, 2 sqrt(-3))
    assert prime_ideal_valuation(T2, F3, 2) == 1
    assert prime_ideal_valuation(global_vector(1, 0, 1, 0), F3, 5) in (0, (0, 0))


def test_prime_ideal_valuation_zero_vector():
    with pytest.raises(ValidationError):
        prime_ideal_valuation(global_vector(0, 0, 0, 0), F3, 2)


def test_split_valuations_sum_to_norm_valuation():
    rng = random.Random(5)
    for _ in range(60):
        z = QuadInt(rng.randint(-40, 40), rng.randint(-40, 40))
        if not z:
            continue
        for D, p in ((3, 7), (3, 13), (7, 11), (7, 2)):
            F = FieldE(D)
            if F.splitting(p) is not Splitting.SPLIT:
                continue
            T = GlobalVector(z, quadint(1))
            v1, v2 = prime_ideal_valuation(GlobalVector(z, z), F, p)
            assert v1 + v2 == vp(z.norm(F), p), (z, D, p)


def test_hensel_root_lift():
    for D, p, prec in ((3, 7, 9), (3, 13, 6), (7, 11, 8), (7, 2, 12)):
        F = FieldE(D)
        r = omega_root_lift(F, p, prec)
        assert (r * r - r + F.omega_norm) % p ** prec == 0


# ---------------------------------------------------------------------------
# Local quadratic data
# ---------------------------------------------------------------------------

def test_local_data_examples():
    T = global_vector(1, 0, 1, 0)
    d7 = local_quadratic_data(T, F3, 7, P2)
    assert (d7.case, d7.k1, d7.k2, d7.k) == (Splitting.SPLIT, 0, 0, 0)
    d2 = local_quadratic_data(T, F3, 2, P2)
    assert (d2.case, d2.k) == (Splitting.INERT, 1)
    d3 = local_quadratic_data(T, F3, 3, P2)
    assert (d3.case, d3.k, d3.k1, d3.k2) == (Splitting.RAMIFIED, 0, 0, 0)


def test_local_data_k_tracks_norm_valuation():
    rng = random.Random(11)
    for _ in range(80):
        T = global_vector(rng.randint(-9, 9), rng.randint(-9, 9),
                          rng.randint(-9, 9), rng.randint(-9, 9))
        if norm(T, F3) == 0:
            continue
        for p in (2, 3, 5, 7):
            d = local_quadratic_data(T, F3, p, P2)
            assert d.k == vp(norm(T, F3), p)
            if d.case is Splitting.RAMIFIED:
                assert d.k2 in (d.k1, d.k1 + 1)
                assert d.k - d.k1 - d.k2 >= 0


def test_split_coords_carry_the_norm():
    rng = random.Random(23)
    for _ in range(40):
        T = global_vector(rng.randint(-9, 9), rng.randint(-9, 9),
                          rng.randint(-9, 9), rng.randint(-9, 9))
        if norm(T, F3) == 0:
            continue
        d = local_quadratic_data(T, F3, 7, P2)
        half = len(d.coords) // 2
        q = sum(d.coords[i] * d.coords[half + i] for i in range(half))
        assert (q - norm(T, F3)) % 7 ** d.prec == 0


def test_inert_coords_carry_the_norm_exactly():
    rng = random.Random(29)
    for _ in range(40):
        T = global_vector(rng.randint(-9, 9), rng.randint(-9, 9),
                          rng.randint(-9, 9), rng.randint(-9, 9))
        if norm(T, F3) == 0:
            continue
        d = local_quadratic_data(T, F3, 2, P2)
        half = len(d.coords) // 2
        q = sum(d.coords[i] * d.coords[half + i] for i in range(half))
        assert q == norm(T, F3)


def test_ramified_normal_form_isometry():
    """Gram comparison of the coordinate map against the normal form."""
    rng = random.Random(31)
    for D, p in ((3, 3), (7, 7), (15, 3), (15, 5)):
        F = FieldE(D)
        u = ramified_unit(F, p)
        # varpi = sqrt(-D): varpi^2 = -D = p u
        assert p * u == -D
        for _ in range(25):
            T = global_vector(rng.randint(-9, 9), rng.randint(-9, 9),
                              rng.randint(-9, 9), rng.randint(-9, 9))
            if norm(T, F) == 0:
                continue
            d = local_quadratic_data(T, F, p, P2)
            X1, X2, Y1, Y2 = d.coords
            assert (X1 * Y1 + p * X2 * Y2 - norm(T, F)) % p ** d.prec == 0


def test_ramified_over_uniformizer_invariants():
    """T/varpi swaps the valuation pattern: (k1', k2', k') = (k2-1, k1, k-1)."""
    from qeis.siegel import ramified_invariants, ramified_shape

    rng = random.Random(37)
    for _ in range(50):
        T = global_vector(rng.randint(-12, 12), rng.randint(-12, 12),
                          rng.randint(-12, 12), rng.randint(-12, 12))
        if norm(T, F3) == 0:
            continue
        d = local_quadratic_data(T, F3, 3, P2)
        sh = ramified_shape(3, 1)
        k1o, k2o, ko = ramified_invariants(d.coords_over_uniformizer, sh)
        assert (k1o, k2o) == (d.k2 - 1, d.k1)
        if ko >= 0:
            assert ko == d.k - 1


def test_local_data_rejects_isotropic():
    with pytest.raises(ValidationError):
        local_quadratic_data(GlobalVector(quadint(1), QuadInt(-1, 2)), F3, 3, P2)


def test_local_data_rejects_other_ranks():
    with pytest.raises(ValidationError):
        local_quadratic_data(global_vector(1, 0, 1, 0), F3, 3, Params(n=6, ell=8))

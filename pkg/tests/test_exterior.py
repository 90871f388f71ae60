import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from genconc.errors import LengthMismatch
from genconc.exterior import Bivector, inner, lagrange_gap, norm_sq, relative_lagrange_gap, wedge
from genconc.selftest import unit_disc_vector

p, q, r, s = 0.3 + 0.1j, -0.2j, 0.7, 0.5 - 0.4j
t, u, v, w = 0.1, 0.2 + 0.2j, -0.6, 0.9j


def test_two_dim_wedge_is_single_minor():
    bv = wedge([p, q], [r, s])
    assert bv.coeffs.shape == (1,)
    assert bv.coeffs[0] == pytest.approx(p * s - q * r)


def test_four_dim_coordinate_order():
    bv = wedge([p, q, r, s], [t, u, v, w])
    expect = [p * u - q * t, p * v - r * t, p * w - s * t, q * v - r * u, q * w - s * u, r * w - s * v]
    assert np.allclose(bv.coeffs, expect, rtol=0, atol=1e-15)
    assert bv.pairs() == [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]


def test_coeff_lookup_matches_definition(rng):
    a = rng.standard_normal(7) + 1j * rng.standard_normal(7)
    b = rng.standard_normal(7) + 1j * rng.standard_normal(7)
    bv = wedge(a, b)
    for i in range(7):
        for j in range(7):
            assert bv.coeff(i, j) == pytest.approx(a[i] * b[j] - a[j] * b[i], abs=1e-14)


def test_self_wedge_vanishes(rng):
    a = rng.standard_normal(9) + 1j * rng.standard_normal(9)
    assert norm_sq(wedge(a, a)) <= 1e-20


def test_length_one_is_empty():
    bv = wedge([2.0], [3.0])
    assert bv.coeffs.shape == (0,)
    assert norm_sq(bv) == 0


def test_length_mismatch():
    with pytest.raises(LengthMismatch):
        wedge([1, 2], [1, 2, 3])
    with pytest.raises(LengthMismatch):
        lagrange_gap([1, 2], [1])
    with pytest.raises(LengthMismatch):
        Bivector(3, np.zeros(2))


def test_norm_sq_examples():
    assert norm_sq(wedge([1, 0, 0], [0, 1, 0])) == 1.0
    assert norm_sq(wedge([p, q], [r, s])) == pytest.approx(abs(p * s - q * r) ** 2)


def test_inner_conjugates_second_argument():
    assert inner([1j], [1j]) == pytest.approx(1)
    assert inner([1], [1j]) == pytest.approx(-1j)


def test_lagrange_orthonormal_exact():
    assert lagrange_gap([1, 0], [0, 1]) == 0.0


def test_lagrange_parallel(rng):
    a = rng.standard_normal(5) + 1j * rng.standard_normal(5)
    lam = 0.3 - 1.7j
    b = lam * a
    scale = np.vdot(a, a).real * np.vdot(b, b).real
    assert abs(lagrange_gap(a, b)) <= 1e-14 * scale
    assert norm_sq(wedge(a, lam * a)) <= 1e-20


def test_antisymmetry(rng):
    for m in (2, 3, 8, 17):
        a = rng.standard_normal(m) + 1j * rng.standard_normal(m)
        b = rng.standard_normal(m) + 1j * rng.standard_normal(m)
        assert np.allclose(wedge(a, b).coeffs, -wedge(b, a).coeffs, rtol=0, atol=1e-15)


def test_bilinearity(rng):
    for m in (2, 5, 12):
        a, a2, b = (rng.standard_normal(m) + 1j * rng.standard_normal(m) for _ in range(3))
        alpha = complex(*rng.standard_normal(2))
        lhs = wedge(alpha * a + a2, b).coeffs
        rhs = alpha * wedge(a, b).coeffs + wedge(a2, b).coeffs
        assert np.max(np.abs(lhs - rhs)) <= 1e-12 * max(1.0, np.max(np.abs(rhs)))


def test_independent_pairs_positive(rng):
    for _ in range(50):
        m = int(rng.integers(2, 20))
        a = rng.standard_normal(m) + 1j * rng.standard_normal(m)
        b = rng.standard_normal(m) + 1j * rng.standard_normal(m)
        assert norm_sq(wedge(a, b)) > 0


def test_lagrange_fuzz_corpus():
    rng = np.random.default_rng(5)
    worst = 0.0
    for _ in range(2000):
        m = int(rng.integers(2, 65))
        a, b = unit_disc_vector(rng, m), unit_disc_vector(rng, m)
        worst = max(worst, relative_lagrange_gap(a, b))
    assert worst <= 1e-10


def test_brute_force_norm_matches_double_sum(rng):
    # half the full double sum over i, j equals the i < j sum
    a = rng.standard_normal(6) + 1j * rng.standard_normal(6)
    b = rng.standard_normal(6) + 1j * rng.standard_normal(6)
    full = sum(abs(a[i] * b[j] - a[j] * b[i]) ** 2 for i in range(6) for j in range(6))
    assert norm_sq(wedge(a, b)) == pytest.approx(full / 2, rel=1e-13)


_cplx = st.complex_numbers(max_magnitude=10.0, allow_nan=False, allow_infinity=False)


@settings(max_examples=300, deadline=None)
@given(st.integers(min_value=1, max_value=12).flatmap(
    lambda m: st.tuples(st.lists(_cplx, min_size=m, max_size=m), st.lists(_cplx, min_size=m, max_size=m))))
def test_lagrange_identity_property(pair):
    a, b = pair
    assert relative_lagrange_gap(a, b) <= 1e-10 * max(1.0, max(abs(x) for x in a + b) ** 4)

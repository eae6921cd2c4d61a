import numpy as np
import pytest
from scipy.linalg import solve_triangular

from ceslab import (
    InvalidDimensionError,
    LambdaInSigmaZeroError,
    UnsupportedParameterError,
    apply,
    cesaro_matrix,
    diagonal_part,
    dominates,
    e_part,
    g_matrix,
    gamma,
    in_sigma_zero,
    resolvent_matrix,
    resolvent_parts,
    residual,
)
from conftest import random_vector, sample_lambda


def dense_section_inverse(lam, n):
    """Oracle: invert the n x n section of (C - lambda I) by triangular solve."""
    A = cesaro_matrix(n).dense()
    A[np.diag_indices(n)] -= lam
    return solve_triangular(A, np.eye(n, dtype=complex), lower=True)


class TestGamma:
    def test_right_of_one(self):
        assert gamma(2.0) == 1.0

    def test_member_is_zero(self):
        assert gamma(1 / 3) == 0.0
        assert gamma(0.0) == 0.0

    def test_between_reciprocals(self):
        # nearest pole of 0.4 is 1/3, not 1/2
        assert gamma(0.4) == pytest.approx(1 / 15, rel=1e-12)

    def test_left_half_plane_distance_to_origin(self):
        assert gamma(-3 + 4j) == 5.0

    def test_membership_at_float_resolution(self):
        assert in_sigma_zero(1 / 7)
        assert in_sigma_zero(0.0)
        assert not in_sigma_zero(1 / 7 + 1e-13)
        assert not in_sigma_zero(1j)
        assert not in_sigma_zero(-0.5)

    def test_alpha_undefined_at_zero(self):
        from ceslab.resolvent import alpha_of

        with pytest.raises(UnsupportedParameterError):
            alpha_of(0.0)
        assert alpha_of(2 + 2j) == pytest.approx(0.25, rel=1e-15)

    def test_matches_brute_force_oracle(self, rng):
        # the two bracketing candidates really do contain the argmin
        for _ in range(200):
            lam = complex(rng.uniform(-3, 3), rng.uniform(-3, 3))
            poles = 1.0 / np.arange(1, 10**5)
            brute = min(abs(lam), np.abs(lam - poles).min())
            assert gamma(lam) == pytest.approx(brute, rel=0, abs=1e-15)


class TestDiagonalPart:
    def test_hand_values(self):
        np.testing.assert_allclose(
            diagonal_part(-1.0, 2), [0.5, 2 / 3], rtol=0, atol=1e-16
        )
        np.testing.assert_array_equal(diagonal_part(2.0, 1), [-1.0])

    def test_refuses_pole_shadow(self):
        with pytest.raises(LambdaInSigmaZeroError):
            diagonal_part(0.5, 4)
        with pytest.raises(LambdaInSigmaZeroError):
            diagonal_part(1 / 3 + 1e-12j, 4)

    def test_gamma_bound_large_truncation(self):
        # |d_kk| <= 1/gamma, scanned at n = 10^4
        lam = 0.4 + 0.0j
        d = diagonal_part(lam, 10**4)
        assert np.abs(d).max() <= 1.0 / gamma(lam) + 1e-12

    def test_invalid_size(self):
        with pytest.raises(InvalidDimensionError):
            diagonal_part(-1.0, 0)


class TestEPart:
    def test_first_entry_at_minus_one(self):
        E = e_part(-1.0, 2)
        assert E.entry(1, 0) == pytest.approx(1 / 6, abs=1e-15)

    def test_first_row_and_diagonal_zero(self, rng):
        for _ in range(5):
            lam = sample_lambda(rng)
            E = e_part(lam, 30)
            assert E.entry(0, 0) == 0
            assert all(E.entry(k, k) == 0 for k in range(30))

    def test_nonnegative_on_real_axis_right_of_one(self):
        # lambda = 1/alpha with 0 < alpha < 1: every factor 1 - alpha/k > 0
        for alpha in (0.1, 0.5, 0.9):
            E = e_part(1.0 / alpha, 60)
            assert E.is_nonnegative()

    def test_dominated_by_cesaro_on_left_region(self, rng):
        # |e_nm| <= 1/n whenever Re(1/lambda) <= 0
        for _ in range(5):
            lam = sample_lambda(rng, predicate=lambda z: (1 / z).real <= 0)
            assert dominates(cesaro_matrix(40), e_part(lam, 40))

    def test_direct_and_log_paths_agree(self):
        for lam in (-1.0 + 0j, 2 + 1j, 0.3 + 0.4j):
            direct = e_part(lam, 120, method="direct")
            logged = e_part(lam, 120, method="log")
            np.testing.assert_allclose(logged.data, direct.data, rtol=1e-11, atol=1e-16)

    def test_auto_switches_to_log_above_threshold(self):
        # same values either side of the switch, up to path rounding
        lam = 1.5 + 0.5j
        auto = e_part(lam, 600)
        direct = e_part(lam, 600, method="direct")
        np.testing.assert_allclose(auto.data, direct.data, rtol=1e-10, atol=1e-300)

    def test_refuses_pole_shadow(self):
        with pytest.raises(LambdaInSigmaZeroError):
            e_part(0.25, 8)

    def test_overflow_reported_with_location(self):
        # Re(1/lambda) = 1500: entries grow past double range around n ~ 4e3
        from ceslab import ProductOverflowError

        lam = 1.0 / complex(1500.0, 1500.0)
        with pytest.raises(ProductOverflowError) as info:
            e_part(lam, 4300)
        assert 1 <= info.value.col < info.value.row <= 4300

    def test_reference_point_identity(self):
        # on the level curve Re(1/lambda) = alpha the comparison matrix at the
        # real point 1/alpha satisfies E = (D - R)/alpha^2 (the resolvent
        # identity rearranged at lambda = 1/alpha)
        alpha = 0.4
        lam = 1.0 / alpha
        n = 30
        E = e_part(lam, n).dense()
        D = np.diag(diagonal_part(lam, n))
        R = resolvent_matrix(lam, n).dense()
        np.testing.assert_allclose((D - R) / alpha**2, E, rtol=0, atol=1e-14)


class TestResolventMatrix:
    def test_hand_inverse_two_by_two(self):
        # oracle: [[2, 0], [1/2, 3/2]]^(-1) = [[1/2, 0], [-1/6, 2/3]]
        R = resolvent_matrix(-1.0, 2)
        expected = np.array([[0.5, 0.0], [-1 / 6, 2 / 3]])
        np.testing.assert_allclose(R.dense(), expected, rtol=0, atol=1e-15)

    def test_size_one(self):
        np.testing.assert_array_equal(resolvent_matrix(2.0, 1).dense(), [[-1.0]])

    def test_assembly_identity_exact(self):
        lam = 1 + 2j
        parts = resolvent_parts(lam, 50)
        manual = parts.e_matrix.data * (-1.0 / lam**2)
        manual[np.cumsum(np.arange(50) + 1) - 1] = parts.d_diag
        np.testing.assert_array_equal(resolvent_matrix(lam, 50).data, manual)

    def test_matches_triangular_solve_oracle(self, rng):
        for _ in range(5):
            lam = sample_lambda(rng)
            R = resolvent_matrix(lam, 128).dense()
            oracle = dense_section_inverse(lam, 128)
            scale = np.abs(R).max()
            assert np.abs(R - oracle).max() <= 1e-9 * scale

    def test_action_decomposes(self, rng):
        # R x = d .* x - (1/lambda^2) E x within 1e-12 relative
        lam = -0.7 + 1.3j
        parts = resolvent_parts(lam, 80)
        x = random_vector(rng, 80)
        direct = apply(parts.assemble(), x)
        pieces = parts.d_diag * x - apply(parts.e_matrix, x) / lam**2
        np.testing.assert_allclose(direct, pieces, rtol=1e-12)


class TestResidual:
    def test_tiny_at_hand_example(self):
        assert residual(-1.0, 2) <= 1e-15

    def test_small_far_from_spectrum(self):
        assert residual(2 + 1j, 100) <= 1e-9

    def test_small_inside_disk(self):
        # resolvent norms grow here, the identity still holds entrywise
        assert residual(0.4 + 0.3j, 256) <= 1e-8

    def test_random_sample(self, rng):
        for _ in range(10):
            lam = sample_lambda(rng)
            assert residual(lam, 128) <= 1e-10


class TestGMatrix:
    def test_alpha_zero_is_cesaro(self):
        G = g_matrix(0.0, 12)
        np.testing.assert_array_equal(G.data, cesaro_matrix(12).data)

    def test_half_power_entry(self):
        assert g_matrix(0.5, 4).entry(3, 0) == pytest.approx(0.5, rel=1e-15)

    def test_rejects_alpha_at_least_one(self):
        with pytest.raises(UnsupportedParameterError):
            g_matrix(1.0, 5)

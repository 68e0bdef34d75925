import math
import warnings

import numpy as np
import pytest
import scipy.integrate
import scipy.special as sp
from hypothesis import given
from hypothesis import strategies as st

from spherekernels.families import Askey, Custom, Exponential, circle_coefficients
from spherekernels.schoenberg import (
    CurvatureWarning,
    LiftConvergenceWarning,
    Method,
    SchoenbergSequence,
    check_sphere_points,
    coeff_fourier_1,
    coeff_lift,
    coeff_quadrature,
    curvature_from_coeffs,
    fibonacci_sphere,
    gram_check,
    gram_matrix,
    lift_sequence,
    pd_verdict,
    quadrature_sequence,
    random_sphere_points,
    reconstruct,
)
from spherekernels.special_fn import gegenbauer_normalized

ONE = Custom(lambda t: np.ones_like(np.asarray(t, dtype=float)), name="one")
COS = Custom(np.cos, name="cos")
EXP1 = Exponential(1.0)


def test_sequence_basics():
    seq = SchoenbergSequence(2, [0.5, 0.25, 0.25])
    assert seq.lam == 0.5 and seq.n_max == 2
    np.testing.assert_allclose(seq.partial_sums(), [0.5, 0.75, 1.0])
    assert seq.method is Method.QUADRATURE
    with pytest.raises(ValueError):
        SchoenbergSequence(0, [1.0])


def test_coeff_quadrature_examples():
    assert coeff_quadrature(ONE, 0, 2) == pytest.approx(1.0, abs=1e-13)
    assert coeff_quadrature(ONE, 3, 2) == pytest.approx(0.0, abs=1e-13)
    assert coeff_quadrature(EXP1, 0, 2) == pytest.approx((1 + math.exp(-math.pi)) / 4, abs=1e-13)
    with pytest.raises(ValueError):
        coeff_quadrature(EXP1, 0, 1)


def test_coeff_quadrature_against_scipy():
    # independent route: scipy quad on the un-normalised Gegenbauer integrand
    for d in (2, 3, 4):
        lam = (d - 1) / 2
        for n in (0, 1, 4, 9):
            pref = (n + lam) * math.gamma(lam) / (math.gamma(lam + 0.5) * math.sqrt(math.pi))
            ref = pref * scipy.integrate.quad(
                lambda t: sp.eval_gegenbauer(n, lam, math.cos(t)) * math.exp(-t) * math.sin(t) ** (2 * lam),
                0, math.pi, epsabs=1e-14)[0]
            assert coeff_quadrature(EXP1, n, d) == pytest.approx(ref, abs=1e-12)


def test_orthogonality():
    for d in (2, 3, 4):
        lam = (d - 1) / 2
        for m in range(21):
            psi = Custom(lambda t, m=m: gegenbauer_normalized(m, lam, np.cos(t)))
            coeffs = quadrature_sequence(psi, d, 20, tol=1e-13).coeffs
            expected = np.zeros(21)
            expected[m] = 1.0
            assert np.max(np.abs(coeffs - expected)) <= 1e-10


def test_fourier_examples():
    assert coeff_fourier_1(ONE, 0) == pytest.approx(1.0, abs=1e-14)
    assert coeff_fourier_1(ONE, 2) == pytest.approx(0.0, abs=1e-14)
    assert coeff_fourier_1(COS, 1) == pytest.approx(1.0, abs=1e-14)


def test_quadrature_sequence_circle_uses_fourier():
    seq = quadrature_sequence(COS, 1, 3)
    np.testing.assert_allclose(seq.coeffs, [0, 1, 0, 0], atol=1e-14)


def test_lift_three_sphere_reduction():
    b1 = circle_coefficients(EXP1)
    for n in range(1, 11):
        reduced = (n + 1) / 2 * (b1(n) - b1(n + 2))
        assert coeff_lift(b1, n, 3) == pytest.approx(reduced, abs=1e-14)
        assert coeff_lift(b1, n, 3) == pytest.approx(coeff_quadrature(EXP1, n, 3), abs=1e-9)


def test_lift_cosine_on_three_sphere():
    b1 = lambda m: np.where(np.asarray(m) == 1, 1.0, 0.0)  # noqa: E731
    assert coeff_lift(b1, 1, 3) == pytest.approx(1.0, abs=1e-15)


def test_lift_even_dimension_reports_truncation():
    res = coeff_lift(circle_coefficients(EXP1), 0, 2, tol=1e-8, full_output=True)
    assert res.mu_max > 0 and res.tail_bound <= 1e-8
    assert res.value == pytest.approx(coeff_quadrature(EXP1, 0, 2), abs=1e-7)


def test_lift_from_table():
    table = circle_coefficients(EXP1)(np.arange(4000))
    assert coeff_lift(table, 2, 5) == pytest.approx(coeff_quadrature(EXP1, 2, 5), abs=1e-12)
    with pytest.raises(ValueError, match="insufficient"):
        coeff_lift(table[:10], 2, 4, tol=1e-12)


def test_lift_warns_when_tail_is_too_large():
    with pytest.warns(LiftConvergenceWarning):
        coeff_lift(circle_coefficients(EXP1), 0, 2, tol=1e-15, max_mu=64)


@pytest.mark.parametrize("kernel", [Exponential(0.5), Exponential(1.0), Exponential(2.0), Exponential(3.0),
                                    Askey(1.0), Askey(2.0), Askey(3.0)])
@pytest.mark.parametrize("d", [2, 3, 4, 5])
def test_lift_matches_quadrature(kernel, d):
    b1 = circle_coefficients(kernel)
    with warnings.catch_warnings():
        warnings.simplefilter("error", LiftConvergenceWarning)
        lifted = lift_sequence(b1, d, 50, tol=1e-8)
    quad = quadrature_sequence(kernel, d, 50, tol=1e-13)
    assert np.max(np.abs(lifted.coeffs - quad.coeffs)) <= (1e-12 if d % 2 else 1e-7)
    assert (lifted.lift_truncation is not None)


def test_workers_do_not_change_results():
    serial = quadrature_sequence(Askey(2.0), 2, 30)
    threaded = quadrature_sequence(Askey(2.0), 2, 30, workers=4)
    np.testing.assert_array_equal(serial.coeffs, threaded.coeffs)
    b1 = circle_coefficients(EXP1)
    np.testing.assert_array_equal(lift_sequence(b1, 4, 20).coeffs, lift_sequence(b1, 4, 20, workers=3).coeffs)


def test_reconstruct_examples():
    theta = np.linspace(0, math.pi, 7)
    np.testing.assert_allclose(reconstruct(SchoenbergSequence(2, [1.0]), theta), 1.0)
    np.testing.assert_allclose(reconstruct(SchoenbergSequence(2, [0.0, 1.0]), theta), np.cos(theta), atol=1e-15)
    seq = quadrature_sequence(EXP1, 2, 200)
    assert abs(reconstruct(seq, 1.0) - math.exp(-1.0)) < 1e-4


def test_reconstruct_clamps_noise_only():
    seq = SchoenbergSequence(2, [1.0, -1e-14], tol=1e-12)
    assert reconstruct(seq, math.pi) == 1.0
    seq = SchoenbergSequence(2, [1.0, -1e-3], tol=1e-12)
    assert reconstruct(seq, math.pi) == pytest.approx(1.0 + 1e-3)


def test_normalization_partial_sums():
    for kernel in (EXP1, Exponential(3.0), Askey(2.0)):
        seq = quadrature_sequence(kernel, 2, 200)
        sums = seq.partial_sums()
        assert np.all(np.diff(sums) >= -1e-12)
        assert sums[-1] <= 1 + 1e-9
        residuals = [1 - reconstruct(SchoenbergSequence(2, seq.coeffs[: n + 1]), 0.0) for n in (25, 50, 100, 200)]
        assert all(b < a for a, b in zip(residuals, residuals[1:]))


def test_reconstruction_error_decreases():
    grid = np.linspace(0, math.pi, 21)
    seq = quadrature_sequence(EXP1, 2, 200)
    errors = [np.max(np.abs(reconstruct(SchoenbergSequence(2, seq.coeffs[: n + 1]), grid) - EXP1(grid)))
              for n in (25, 50, 100, 200)]
    assert all(b < a for a, b in zip(errors, errors[1:]))


def test_pd_verdict():
    seq = quadrature_sequence(EXP1, 2, 100)
    assert pd_verdict(seq).consistent
    bad = SchoenbergSequence(2, [0.5, 0.3, 0.2, -0.1, 0.1])
    v = pd_verdict(bad)
    assert not v.consistent and v.violated_index == 3 and str(v) == "violated(3)"
    assert pd_verdict(SchoenbergSequence(2, [1.0])).consistent
    over = pd_verdict(SchoenbergSequence(2, [0.9, 0.2]))
    assert not over.consistent and over.partial_sum_excess > 0


def test_curvature_examples():
    assert curvature_from_coeffs(SchoenbergSequence(2, [0.0, 1.0])) == pytest.approx(1.0)
    assert curvature_from_coeffs(SchoenbergSequence(2, [0.5, 0.5])) == pytest.approx(0.5)


@given(st.floats(0, 1), st.floats(0, 1), st.floats(0, 1), st.integers(1, 6))
def test_curvature_matches_second_derivative(a, b, c, d):
    coeffs = np.array([a, b, c, 1.0])
    coeffs /= coeffs.sum()
    seq = SchoenbergSequence(d, coeffs)
    lam = (d - 1) / 2
    psi = lambda t: sum(bn * gegenbauer_normalized(n, lam, math.cos(t)) for n, bn in enumerate(coeffs))  # noqa: E731
    h = 1e-3
    # psi is even in theta, so the central difference uses psi(h) twice
    fd = -2 * (psi(h) - psi(0.0)) / h**2
    assert curvature_from_coeffs(seq) == pytest.approx(fd, rel=1e-5, abs=1e-6)


def test_curvature_warns_on_divergence():
    n = np.arange(1, 60)
    coeffs = np.concatenate([[0.0], 1.0 / n**2])  # n^2 b_n does not decay
    with pytest.warns(CurvatureWarning):
        curvature_from_coeffs(SchoenbergSequence(2, coeffs / coeffs.sum()))


def test_curvature_of_smooth_kernel_is_quiet():
    # -psi''(0) of exp(-theta / alpha) does not exist; of a polynomial in cos it does
    seq = SchoenbergSequence(3, [0.25, 0.5, 0.25])
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        value, remainder = curvature_from_coeffs(seq, full_output=True)
    assert remainder == 0.0
    assert value == pytest.approx((1 * 3 * 0.5 + 2 * 4 * 0.25) / 3)


def test_points_and_gram():
    pts = fibonacci_sphere(50)
    np.testing.assert_allclose(np.linalg.norm(pts, axis=1), 1.0, atol=1e-12)
    assert gram_check(EXP1, pts) >= -1e-10
    assert gram_check(ONE, pts[:5]) == pytest.approx(0.0, abs=1e-12)
    rnd = random_sphere_points(30, 4, seed=1)
    assert rnd.shape == (30, 5)
    np.testing.assert_array_equal(rnd, random_sphere_points(30, 4, seed=1))
    g = gram_matrix(EXP1, rnd)
    np.testing.assert_allclose(np.diag(g), 1.0)
    np.testing.assert_allclose(g, g.T)


def test_gram_detects_cos3():
    psi = Custom(lambda t: np.cos(3 * t))
    assert gram_check(psi, fibonacci_sphere(100)) < -1e-6


def test_point_validation():
    with pytest.raises(ValueError):
        check_sphere_points([[1.0, 0.0, 0.1]])
    with pytest.raises(ValueError):
        gram_check(EXP1, random_sphere_points(501, 2))

import math

import numpy as np
import pytest
import scipy.integrate
from hypothesis import given
from hypothesis import strategies as st

from spherekernels.families import Askey
from spherekernels.quadrature import (
    QuadratureError,
    integrate,
    integrate_piecewise,
    integrate_with_breakpoint,
)

PI = math.pi

# integrands with known antiderivatives on [0, pi]
BATTERY = [
    (np.sin, 2.0),
    (lambda t: np.ones_like(t), PI),
    (lambda t: np.exp(-t) * np.sin(t), (1 + math.exp(-PI)) / 2),
    (lambda t: t**3 * np.cos(t), 12 - 3 * PI**2),
    (lambda t: t * np.sin(5 * t), PI / 5),
    (lambda t: np.exp(-t / 2) * np.cos(t) * np.sin(t), 2 * (1 - math.exp(-PI / 2)) / 17 * 2),
    (lambda t: np.cos(40 * t) ** 2, PI / 2),
    (lambda t: (1 - t / PI) ** 2 * np.sin(t), 1 - 4 / PI**2),
]


def test_battery_within_ten_tol():
    for f, truth in BATTERY:
        r = integrate(f, 0.0, PI, tol=1e-12, min_panels=96)
        assert abs(r.value - truth) <= 1e-11, (r.value, truth)
        assert r.error_estimate >= 0 and r.subdivisions >= 1 and r.converged


def test_battery_against_scipy():
    for f, _ in BATTERY:
        ref, _err = scipy.integrate.quad(f, 0.0, PI, epsabs=1e-13, limit=500)
        assert integrate(f, 0.0, PI, min_panels=96).value == pytest.approx(ref, abs=1e-11)


def test_examples():
    assert integrate(np.sin, 0, PI, tol=1e-12).value == pytest.approx(2.0, abs=1e-12)
    assert integrate(lambda t: 1.0 + 0 * t, 0, PI).value == pytest.approx(PI, abs=1e-13)
    assert integrate(lambda t: np.exp(-t) * np.sin(t), 0, PI).value == pytest.approx(0.5216069591318861, abs=1e-12)


def test_scalar_integrand_is_vectorized():
    r = integrate(lambda t: math.sin(t), 0.0, PI)
    assert r.value == pytest.approx(2.0, abs=1e-12)


def test_breakpoint_kink():
    r = integrate_with_breakpoint(lambda t: np.abs(t - 1.0), 0.0, 2.0, 1.0)
    assert r.value == pytest.approx(1.0, abs=1e-14)


def test_breakpoint_at_endpoint_equals_plain():
    f = lambda t: np.exp(np.cos(t))  # noqa: E731
    plain = integrate(f, 0.0, PI)
    assert integrate_with_breakpoint(f, 0.0, PI, 0.0).value == plain.value
    assert integrate_with_breakpoint(f, 0.0, PI, PI).value == plain.value


def test_askey_breakpoint_matches_plain():
    psi = Askey(2.0)
    f = lambda t: psi(t) * np.sin(t)  # noqa: E731
    split = integrate_with_breakpoint(f, 0.0, PI, 2.0, tol=1e-13)
    plain = integrate(f, 0.0, PI, tol=1e-13, max_panels=10**6)
    assert split.value == pytest.approx(plain.value, abs=1e-12)
    assert split.subdivisions < plain.subdivisions


def test_piecewise_counts_fewer_panels_with_cut():
    f = lambda t: np.abs(np.sin(3 * t))  # noqa: E731
    cut = integrate_piecewise(f, [0, PI / 3, 2 * PI / 3, PI])
    assert cut.value == pytest.approx(2.0, abs=1e-12)


def test_failure_reports_best_value():
    with pytest.raises(QuadratureError) as info:
        integrate(lambda t: np.sign(t - 1.0 / 3.0), 0.0, 1.0, tol=1e-15, max_panels=24)
    res = info.value.result
    assert not res.converged
    assert res.value == pytest.approx(1.0 / 3.0, abs=1e-2)
    soft = integrate(lambda t: np.sign(t - 1.0 / 3.0), 0.0, 1.0, tol=1e-15, max_panels=24,
                     raise_on_failure=False)
    assert not soft.converged


def test_invalid_arguments():
    with pytest.raises(ValueError):
        integrate(np.sin, 1.0, 0.0)
    with pytest.raises(ValueError):
        integrate(np.sin, 0.0, 1.0, tol=0.0)
    with pytest.raises(ValueError):
        integrate_with_breakpoint(np.sin, 0.0, 1.0, 2.0)


def test_refinement_does_not_increase_error_estimate():
    for f, _ in BATTERY[2:]:
        errs = [integrate(f, 0.0, PI, tol=10.0**-k).error_estimate for k in range(4, 13)]
        assert all(b <= a for a, b in zip(errs, errs[1:]))


@given(st.floats(-3, 3), st.floats(-3, 3), st.integers(0, 30))
def test_linearity(a, b, k):
    f = lambda t: np.cos(k * t) * np.exp(-t)  # noqa: E731
    g = lambda t: t**2 * np.sin(t)  # noqa: E731
    tol = 1e-12
    lhs = integrate(lambda t: a * f(t) + b * g(t), 0, PI, tol=tol, min_panels=max(16, 2 * k)).value
    rhs = a * integrate(f, 0, PI, tol=tol, min_panels=max(16, 2 * k)).value + b * integrate(g, 0, PI, tol=tol).value
    assert lhs == pytest.approx(rhs, abs=(abs(a) + abs(b) + 1) * 3 * tol)


@given(st.integers(0, 500))
def test_oscillatory_cosines(n):
    # int_0^pi cos(n t) cos(n t) dt = pi/2 (pi for n = 0)
    r = integrate(lambda t: np.cos(n * t) ** 2, 0.0, PI, min_panels=max(16, 2 * n))
    assert r.value == pytest.approx(PI if n == 0 else PI / 2, abs=1e-11)

"""Gegenbauer and Legendre polynomials, Gamma ratios and Bessel zeros.

Gegenbauer polynomials are evaluated with the three-term recurrence in
the degree, which is stable on ``[-1, 1]``. All Gamma ratios go through
:func:`math.lgamma` so that values such as ``C_n^lambda(1)`` can be
formed for degrees well beyond the range where ``Gamma`` overflows.
"""

from __future__ import annotations

import math
import operator
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .quadrature import integrate

__all__ = [
    "order_for_dimension",
    "rising_factorial",
    "gamma_ratio",
    "gegenbauer",
    "gegenbauer_at_one",
    "gegenbauer_normalized",
    "gegenbauer_normalized_table",
    "legendre",
    "generalized_binomial",
    "legendre_power_coeffs",
    "legendre_power_coeffs_exact",
    "TrigExpansion",
    "trig_expansion",
    "bessel_j",
    "first_bessel_zero",
]


def order_for_dimension(d: int) -> float:
    """Gegenbauer order ``(d - 1) / 2`` attached to the sphere ``S^d``."""
    if int(d) != d or d < 1:
        raise ValueError(f"dimension must be an integer >= 1, got {d!r}")
    return (d - 1) / 2


def rising_factorial(x: float, m: int) -> float:
    """Pochhammer symbol ``x (x+1) ... (x+m-1)``, equal to 1 for ``m = 0``."""
    if m < 0 or int(m) != m:
        raise ValueError("m must be a nonnegative integer")
    out = 1.0
    for j in range(int(m)):
        out *= x + j
    return out


def gamma_ratio(num, den) -> float:
    """``prod Gamma(a) / prod Gamma(b)`` for positive arguments, via lgamma."""
    log = sum(math.lgamma(a) for a in num) - sum(math.lgamma(b) for b in den)
    return math.exp(log)


def _check_unit_interval(x):
    x = np.asarray(x, dtype=float)
    if np.any(np.abs(x) > 1.0):
        raise ValueError("argument must lie in [-1, 1]")
    return x


def gegenbauer(n: int, lam: float, x):
    """Gegenbauer polynomial ``C_n^lam(x)`` for ``lam > 0`` and ``|x| <= 1``.

    Works elementwise on arrays; returns a float for scalar input.
    """
    if lam <= 0:
        raise ValueError("Gegenbauer order must be positive")
    if n < 0:
        raise ValueError("degree must be nonnegative")
    x = _check_unit_interval(x)
    prev = np.ones_like(x)
    if n == 0:
        return prev if prev.ndim else float(prev)
    cur = 2.0 * lam * x
    for k in range(2, n + 1):
        prev, cur = cur, (2.0 * (k + lam - 1) * x * cur - (k + 2 * lam - 2) * prev) / k
    return cur if cur.ndim else float(cur)


def gegenbauer_at_one(n: int, lam: float) -> float:
    """``C_n^lam(1) = Gamma(n + 2 lam) / (n! Gamma(2 lam))``."""
    if lam <= 0:
        raise ValueError("Gegenbauer order must be positive")
    return gamma_ratio([n + 2 * lam], [n + 1, 2 * lam])


def gegenbauer_normalized(n: int, lam: float, x):
    """``C_n^lam(x) / C_n^lam(1)``, also defined for ``lam = 0`` as ``T_n(x)``.

    The normalised polynomials obey their own recurrence,
    ``(k + 2 lam - 1) R_k = 2 (k + lam - 1) x R_{k-1} - (k - 1) R_{k-2}``,
    which never forms ``C_n^lam(1)`` and so cannot overflow.
    """
    if lam < 0:
        raise ValueError("Gegenbauer order must be nonnegative")
    x = _check_unit_interval(x)
    prev = np.ones_like(x)
    if n == 0:
        return prev if prev.ndim else float(prev)
    cur = x.copy()
    for k in range(2, n + 1):
        prev, cur = cur, (2.0 * (k + lam - 1) * x * cur - (k - 1) * prev) / (k + 2 * lam - 1)
    return cur if cur.ndim else float(cur)


def gegenbauer_normalized_table(n_max: int, lam: float, x) -> np.ndarray:
    """Rows ``C_k^lam(x) / C_k^lam(1)`` for ``k = 0..n_max``; shape ``(n_max + 1,) + x.shape``."""
    if lam < 0:
        raise ValueError("Gegenbauer order must be nonnegative")
    x = _check_unit_interval(x)
    out = np.empty((n_max + 1,) + x.shape)
    out[0] = 1.0
    if n_max >= 1:
        out[1] = x
    for k in range(2, n_max + 1):
        out[k] = (2.0 * (k + lam - 1) * x * out[k - 1] - (k - 1) * out[k - 2]) / (k + 2 * lam - 1)
    return out


def legendre(n: int, x):
    """Legendre polynomial ``P_n(x)``."""
    return gegenbauer_normalized(n, 0.5, x)


def generalized_binomial(top: Fraction, k: int) -> Fraction:
    """``binom(top, k)`` for rational ``top`` as an explicit product of ``k`` factors.

    The product form has no Gamma poles, and it is exactly zero whenever
    ``top`` is an integer in ``[0, k)``.
    """
    top = Fraction(top)
    out = Fraction(1)
    for j in range(k):
        out *= (top - j) / (k - j)
    return out


def legendre_power_coeffs_exact(n: int) -> list[Fraction]:
    """Exact rational coefficients of ``P_n`` in powers of its argument."""
    n = operator.index(n)  # numpy integers would overflow inside the exact products
    if n < 0:
        raise ValueError("degree must be nonnegative")
    return [
        2**n * math.comb(n, m) * generalized_binomial(Fraction(n + m - 1, 2), n)
        for m in range(n + 1)
    ]


def legendre_power_coeffs(n: int) -> np.ndarray:
    """Coefficients ``c_m`` with ``P_n(x) = sum_m c_m x^m``, ``m = 0..n``.

    Entries of the wrong parity are exactly zero. The coefficients grow
    roughly like ``2^n``, so evaluating ``P_n`` through them loses about
    ``0.3 n`` decimal digits; keep ``n`` modest (``<= 30``) in double
    precision.
    """
    return np.array([float(c) for c in legendre_power_coeffs_exact(n)])


@dataclass
class TrigExpansion:
    """Sine-series weights expressing ``sin^(2 lam - 1) t * C_n^lam(cos t)``.

    The identity reads ``gamma * sum_mu betas[mu] * sin((n + 2 mu + 1) t)``.
    For integer ``lam`` the list is complete; otherwise it is cut after
    ``len(betas)`` terms and ``tail_bound`` estimates the sum of the
    neglected ``|betas[mu] - betas[mu-1]|``.
    """

    n: int
    lam: float
    gamma: float
    betas: np.ndarray
    truncated: bool = False
    tail_bound: float = 0.0
    frequencies: np.ndarray = field(init=False, repr=False)

    def __post_init__(self):
        self.frequencies = self.n + 2 * np.arange(len(self.betas)) + 1

    def __call__(self, theta):
        """Evaluate the (possibly truncated) sine series at ``theta``."""
        theta = np.asarray(theta, dtype=float)
        s = np.sin(np.multiply.outer(theta, self.frequencies)) @ self.betas
        return self.gamma * s

    def remainder_bound(self, theta) -> float:
        """Bound on the neglected part of the series at ``theta`` (``0 < theta < pi``).

        Abel summation with ``|sum_{j<=k} sin((n+2j+1) t)| <= 1/|sin t|``
        bounds the remainder by the first neglected weight plus the tail
        of weight differences, both of which are at most ``tail_bound``.
        """
        if not self.truncated:
            return 0.0
        return 2.0 * self.gamma * self.tail_bound / abs(math.sin(theta))


def _beta_weights(n: int, lam: float, count: int) -> np.ndarray:
    mu = np.arange(1, count, dtype=float)
    ratios = (mu - lam) * (n + mu) / (mu * (n + lam + mu))
    return np.concatenate([[1.0], np.cumprod(ratios)])


def _power_law_tail(terms: np.ndarray, exponent: float) -> float:
    """Integral-comparison estimate of ``sum_{mu > M} t_mu`` when ``t_mu ~ mu^-exponent``."""
    m = len(terms)
    window = terms[-min(8, m):]
    return float(np.max(np.abs(window)) * m / (exponent - 1.0))


def trig_expansion(n: int, lam: float, tol: float = 1e-6, max_terms: int = 2**22) -> TrigExpansion:
    """Weights of the finite or truncated sine expansion of ``C_n^lam``.

    For integer ``lam`` exactly ``lam`` weights are returned. For other
    orders the number of weights doubles until the estimated tail of the
    weight differences, which decay like ``mu^-(2 lam + 1)``, falls below
    ``tol`` (or ``max_terms`` is reached, leaving ``tail_bound > tol``).
    """
    if lam <= 0:
        raise ValueError("order must be positive")
    if n < 0:
        raise ValueError("degree must be nonnegative")
    gamma = 2.0 ** (2 - 2 * lam) * gamma_ratio([n + 2 * lam], [lam, n + lam + 1])
    if float(lam).is_integer():
        return TrigExpansion(n, lam, gamma, _beta_weights(n, lam, int(lam)))

    count = 64
    while True:
        betas = _beta_weights(n, lam, count)
        diffs = np.abs(np.diff(betas))
        tail = _power_law_tail(diffs, 2 * lam + 1)
        if tail <= tol or count >= max_terms:
            return TrigExpansion(n, lam, gamma, betas, truncated=True, tail_bound=tail)
        count *= 2


# Bessel functions ---------------------------------------------------------

_SERIES_LIMIT = 10.0


def _bessel_series(nu: float, x: float) -> float:
    half = 0.5 * x
    term = math.exp(nu * math.log(half) - math.lgamma(nu + 1)) if x > 0 else (1.0 if nu == 0 else 0.0)
    terms = [term]
    q = half * half
    k = 0
    while True:
        k += 1
        term *= -q / (k * (k + nu))
        terms.append(term)
        if abs(term) < 1e-16 * abs(terms[0]) and k > q:
            break
    return math.fsum(terms)


def _bessel_integral(nu: float, x: float) -> float:
    # Schlafli: pi J = int_0^pi cos(nu t - x sin t) dt - sin(nu pi) int_0^inf exp(-x sinh t - nu t) dt
    panels = max(16, int(2 * x))
    first = integrate(lambda t: np.cos(nu * t - x * np.sin(t)), 0.0, math.pi,
                      tol=1e-14, min_panels=panels).value
    s = math.sin(nu * math.pi)
    if s != 0.0:
        upper = math.asinh(750.0 / x)
        first -= s * integrate(lambda t: np.exp(-x * np.sinh(t) - nu * t), 0.0, upper,
                               tol=1e-14).value
    return first / math.pi


def bessel_j(nu: float, x: float) -> float:
    """Bessel function of the first kind ``J_nu(x)`` for ``x >= 0``.

    The ascending series is summed for ``x <= 10``; beyond that its
    terms grow large enough to cost absolute accuracy, and Schlafli's
    integral representation is integrated instead.
    """
    if nu <= -1:
        raise ValueError("order must exceed -1")
    if x < 0:
        raise ValueError("argument must be nonnegative")
    if x == 0:
        return 1.0 if nu == 0 else 0.0
    if x <= _SERIES_LIMIT:
        return _bessel_series(nu, x)
    return _bessel_integral(nu, x)


def first_bessel_zero(nu: float, xtol: float = 1e-12) -> float:
    """First positive zero of ``J_nu`` by sign-change scan and bisection.

    The scan starts at ``max(nu, 1e-3)`` (there is no zero below ``nu``)
    and steps by 0.25, well below the zero spacing. The upper end
    ``nu + 2 nu^(1/3) + 5`` covers the first zero for every ``nu >= 0``.
    """
    if nu < -0.5:
        raise ValueError("order must be >= -1/2")
    lo = max(nu, 1e-3)
    hi = nu + 2.0 * max(nu, 0.0) ** (1.0 / 3.0) + 5.0
    f_lo = bessel_j(nu, lo)
    a = lo
    while True:
        b = min(a + 0.25, hi)
        f_b = bessel_j(nu, b)
        if f_b == 0.0:
            return b
        if f_lo * f_b < 0:
            break
        if b >= hi:
            raise RuntimeError(f"no sign change of J_{nu} found in [{lo}, {hi}]")
        a, f_lo = b, f_b
    while b - a > xtol:
        m = 0.5 * (a + b)
        f_m = bessel_j(nu, m)
        if f_m == 0.0:
            return m
        if f_lo * f_m < 0:
            b = m
        else:
            a, f_lo = m, f_m
    return 0.5 * (a + b)

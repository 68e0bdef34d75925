"""d-Schoenberg coefficients of isotropic kernels on spheres.

A continuous ``psi`` on ``[0, pi]`` with ``psi(0) = 1`` is positive
definite on ``S^d`` exactly when

    psi(theta) = sum_n b_{n,d} C_n^lam(cos theta) / C_n^lam(1),   lam = (d-1)/2,

with nonnegative ``b_{n,d}`` summing to one. This module obtains the
``b_{n,d}`` by direct quadrature, or from the circle (Fourier)
coefficients ``b_{m,1}`` via the dimension lift, and checks the
resulting sequences: reconstruction, nonnegativity, curvature at the
origin and Gram matrices on point sets.

Kernels are plain callables on ``[0, pi]``. An optional ``breakpoints``
attribute lists abscissae where the kernel is not smooth; the
integrator splits there.
"""

from __future__ import annotations

import math
import warnings
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from enum import Enum
from typing import Callable, Optional, Sequence, Union

import numpy as np

from .quadrature import integrate_piecewise
from .special_fn import (
    _beta_weights,
    gegenbauer_normalized,
    gegenbauer_normalized_table,
    order_for_dimension,
)

__all__ = [
    "Method",
    "SchoenbergSequence",
    "Verdict",
    "LiftResult",
    "LiftConvergenceWarning",
    "CurvatureWarning",
    "coeff_quadrature",
    "coeff_fourier_1",
    "coeff_lift",
    "quadrature_sequence",
    "lift_sequence",
    "reconstruct",
    "pd_verdict",
    "curvature_from_coeffs",
    "gram_matrix",
    "gram_check",
    "check_sphere_points",
    "fibonacci_sphere",
    "random_sphere_points",
]

B1Provider = Union[Callable[[np.ndarray], np.ndarray], Sequence[float], np.ndarray]


class Method(str, Enum):
    QUADRATURE = "quadrature"
    CLOSED = "closed"
    LIFT = "lift"


class LiftConvergenceWarning(RuntimeWarning):
    """The dimension-lift series did not reach the requested tolerance."""


class CurvatureWarning(RuntimeWarning):
    """Weighted coefficient sums show no sign of converging."""


@dataclass
class SchoenbergSequence:
    """Coefficients ``b_0 .. b_N`` of a kernel on ``S^d``."""

    d: int
    coeffs: np.ndarray
    method: Method = Method.QUADRATURE
    tol: float = 1e-12
    lift_truncation: Optional[int] = None

    def __post_init__(self):
        order_for_dimension(self.d)
        self.coeffs = np.asarray(self.coeffs, dtype=float)
        self.method = Method(self.method)

    @property
    def lam(self) -> float:
        return order_for_dimension(self.d)

    @property
    def n_max(self) -> int:
        return len(self.coeffs) - 1

    def partial_sums(self) -> np.ndarray:
        return np.cumsum(self.coeffs)


def _breakpoints(psi) -> list[float]:
    pts = getattr(psi, "breakpoints", ()) or ()
    return sorted(float(p) for p in pts if 0.0 < p < math.pi)


def _integrate_kernel(psi, weight, tol: float, min_panels: int) -> float:
    edges = [0.0, *_breakpoints(psi), math.pi]
    return integrate_piecewise(lambda t: weight(t) * psi(t), edges, tol=tol,
                               min_panels=min_panels).value


def _quadrature_prefactor(n: int, lam: float) -> float:
    # (n + lam) Gamma(lam) / (Gamma(lam + 1/2) Gamma(1/2)) times C_n^lam(1)
    log = (math.lgamma(lam) - math.lgamma(lam + 0.5) - 0.5 * math.log(math.pi)
           + math.lgamma(n + 2 * lam) - math.lgamma(n + 1) - math.lgamma(2 * lam))
    return (n + lam) * math.exp(log)


def coeff_quadrature(psi, n: int, d: int, tol: float = 1e-12) -> float:
    """``b_{n,d}`` of ``psi`` by adaptive quadrature, for ``d >= 2``.

    ``tol`` is an absolute tolerance on the returned coefficient.
    """
    if d < 2:
        raise ValueError("coeff_quadrature needs d >= 2; use coeff_fourier_1 on the circle")
    if n < 0:
        raise ValueError("degree must be nonnegative")
    lam = order_for_dimension(d)
    pref = _quadrature_prefactor(n, lam)

    def weight(t):
        return gegenbauer_normalized(n, lam, np.cos(t)) * np.sin(t) ** (2 * lam)

    return pref * _integrate_kernel(psi, weight, tol / pref, max(16, 2 * n))


def coeff_fourier_1(psi, n: int, tol: float = 1e-12) -> float:
    """Circle coefficient ``b_{n,1}``: ``(1/pi) int psi`` for ``n = 0``, ``(2/pi) int psi cos(n t)`` else."""
    if n < 0:
        raise ValueError("degree must be nonnegative")
    scale = (1.0 if n == 0 else 2.0) / math.pi
    return scale * _integrate_kernel(psi, lambda t: np.cos(n * t), tol / scale, max(16, 2 * n))


@dataclass(frozen=True)
class LiftResult:
    value: float
    mu_max: int
    tail_bound: float


def _b1_values(b1: B1Provider, m: np.ndarray) -> np.ndarray:
    if callable(b1):
        return np.asarray(b1(m), dtype=float)
    table = np.asarray(b1, dtype=float)
    if m.max() >= table.size:
        raise ValueError(
            f"insufficient circle coefficients: need index {int(m.max())}, have {table.size - 1}"
        )
    return table[m]


def _lift_tail(terms: np.ndarray) -> float:
    """Tail estimate for a series whose terms decay like a power of the index.

    The decay exponent is read off from windowed maxima at ``M/2`` and
    ``M``; the remainder is then bounded by integral comparison. Windows
    smooth parity effects (e.g. zero odd-index coefficients).
    """
    m = terms.size
    w = min(8, m // 4)
    recent = np.max(np.abs(terms[m - w:]))
    if recent == 0.0:
        return 0.0
    earlier = np.max(np.abs(terms[m // 2 - w:m // 2]))
    p = math.log(earlier / recent) / math.log(2.0) if earlier > 0 else 0.0
    if p <= 1.1:
        return math.inf
    return float(recent * m / (p - 1.0))


def coeff_lift(b1: B1Provider, n: int, d: int, mu_max: Optional[int] = None, tol: float = 1e-8,
               max_mu: int = 2**20, full_output: bool = False):
    """``b_{n,d}`` from circle coefficients ``b_{n,1}, b_{n+2,1}, ...``.

    The lift reads

        b_{n,d} = A_n [ b*_{n,1} - lam sum_{mu>=1} w_mu b_{n+2mu,1} ],
        A_n = sqrt(pi) Gamma(n+2lam) / (4^lam Gamma(lam+1/2) Gamma(n+lam)),
        w_mu = (1-lam)_{mu-1} (n+1)_{mu-1} (n+2mu) / (mu! (n+lam+1)_mu),

    with ``b*_{0,1} = 2 b_{0,1}``. For odd ``d`` the sum stops at
    ``mu = lam``. For even ``d`` it is infinite; unless ``mu_max`` is
    given, the number of terms doubles until the estimated tail is below
    ``tol``.

    Parameters
    ----------
    b1 : callable or sequence
        ``b1(m)`` for an integer array ``m``, or a table indexed by ``m``.
    full_output : bool
        Return a :class:`LiftResult` instead of the bare value.
    """
    if d < 2:
        raise ValueError("the lift needs d >= 2")
    if n < 0:
        raise ValueError("degree must be nonnegative")
    lam = order_for_dimension(d)
    pref = math.sqrt(math.pi) * math.exp(
        math.lgamma(n + 2 * lam) - 2 * lam * math.log(2.0)
        - math.lgamma(lam + 0.5) - math.lgamma(n + lam)
    )
    lead = float(_b1_values(b1, np.array([n]))[0]) * (2.0 if n == 0 else 1.0)

    def partial(count):
        mu = np.arange(1, count + 1)
        betas = _beta_weights(n, lam, count)
        weights = betas * (n + 2 * mu) / (mu * (n + lam + mu))
        terms = lam * weights * _b1_values(b1, n + 2 * mu)
        return terms

    if lam.is_integer():
        terms = partial(int(lam))
        result = LiftResult(pref * (lead - math.fsum(terms)), int(lam), 0.0)
    elif mu_max is not None:
        terms = partial(int(mu_max))
        result = LiftResult(pref * (lead - math.fsum(terms)), int(mu_max), pref * _lift_tail(terms))
    else:
        count = 32
        while True:
            terms = partial(count)
            tail = pref * _lift_tail(terms)
            if tail <= tol or count >= max_mu:
                break
            count *= 2
        if tail > tol:
            warnings.warn(
                f"lift for n={n}, d={d} stopped at mu={count} with tail {tail:.2e} > tol {tol:.2e}",
                LiftConvergenceWarning, stacklevel=2,
            )
        result = LiftResult(pref * (lead - math.fsum(terms)), count, tail)
    return result if full_output else result.value


def _batch(fn, ns, workers: Optional[int]):
    if workers is None or workers <= 1:
        return [fn(n) for n in ns]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, ns))


def quadrature_sequence(psi, d: int, n_max: int, tol: float = 1e-12,
                        workers: Optional[int] = None) -> SchoenbergSequence:
    """Quadrature coefficients ``b_{0..n_max, d}`` (Fourier coefficients when ``d = 1``).

    ``workers > 1`` spreads degrees over a thread pool; each coefficient
    is computed independently, so the result does not depend on it.
    """
    if d == 1:
        fn = lambda n: coeff_fourier_1(psi, n, tol)  # noqa: E731
    else:
        fn = lambda n: coeff_quadrature(psi, n, d, tol)  # noqa: E731
    return SchoenbergSequence(d, _batch(fn, range(n_max + 1), workers), Method.QUADRATURE, tol)


def lift_sequence(b1: B1Provider, d: int, n_max: int, tol: float = 1e-8,
                  workers: Optional[int] = None) -> SchoenbergSequence:
    """Lifted coefficients ``b_{0..n_max, d}``; records the largest ``mu_max`` used."""
    results = _batch(lambda n: coeff_lift(b1, n, d, tol=tol, full_output=True),
                     range(n_max + 1), workers)
    return SchoenbergSequence(
        d, [r.value for r in results], Method.LIFT, tol,
        lift_truncation=max(r.mu_max for r in results),
    )


def reconstruct(seq: SchoenbergSequence, theta):
    """Partial Schoenberg sum ``sum_n b_n C_n^lam(cos theta) / C_n^lam(1)``.

    Coefficients in ``[-tol, 0)`` count as numerical noise and are dropped.
    """
    theta = np.asarray(theta, dtype=float)
    b = np.where((seq.coeffs < 0) & (seq.coeffs >= -seq.tol), 0.0, seq.coeffs)
    x = np.clip(np.cos(theta), -1.0, 1.0)
    table = gegenbauer_normalized_table(seq.n_max, seq.lam, x)
    out = np.tensordot(b, table, axes=1)
    return float(out) if out.ndim == 0 else out


@dataclass(frozen=True)
class Verdict:
    """Outcome of the coefficient-sign check.

    ``violated_index`` is the first degree with ``b_n < -tol`` (or None);
    ``partial_sum_excess`` is ``max(0, max_N sum_{n<=N} b_n - 1 - tol)``.
    """

    consistent: bool
    violated_index: Optional[int]
    partial_sum_excess: float

    def __str__(self) -> str:
        if self.consistent:
            return "positive-definite-consistent"
        if self.violated_index is not None:
            return f"violated({self.violated_index})"
        return f"violated(partial sum exceeds 1 by {self.partial_sum_excess:.3e})"


def pd_verdict(seq: SchoenbergSequence, tol: float = 1e-10) -> Verdict:
    neg = np.flatnonzero(seq.coeffs < -tol)
    first = int(neg[0]) if neg.size else None
    excess = max(0.0, float(np.max(seq.partial_sums())) - 1.0 - tol)
    return Verdict(first is None and excess == 0.0, first, excess)


def curvature_from_coeffs(seq: SchoenbergSequence, full_output: bool = False):
    """``-psi''(0)`` from ``(1/d) sum_n n (n + d - 1) b_n``.

    Coefficients with ``|b_n| <= seq.tol`` are ignored when judging
    convergence. With ``full_output`` also returns an estimate of the truncation
    remainder, obtained from the decay of the last weighted terms. A
    :class:`CurvatureWarning` is issued when those terms do not decay
    faster than ``1/n``, i.e. when the series looks divergent.
    """
    n = np.arange(seq.n_max + 1)
    terms = n * (n + seq.d - 1) * seq.coeffs / seq.d
    value = math.fsum(terms)
    nonzero = np.flatnonzero(np.abs(seq.coeffs) > seq.tol)
    remainder = 0.0
    if nonzero.size and nonzero[-1] >= 16 and nonzero[-1] == seq.n_max:
        remainder = _lift_tail(terms[1:])
        if not math.isfinite(remainder) or remainder > 1e-3 * max(abs(value), 1.0):
            warnings.warn(
                "weighted coefficient sums fail the Cauchy check; -psi''(0) may not exist",
                CurvatureWarning, stacklevel=2,
            )
    return (value, remainder) if full_output else value


# Point sets and Gram matrices -------------------------------------------

def check_sphere_points(points, atol: float = 1e-12) -> np.ndarray:
    """Validate an ``(N, d+1)`` array of unit vectors and return it as floats."""
    pts = np.atleast_2d(np.asarray(points, dtype=float))
    if pts.ndim != 2:
        raise ValueError("points must be an (N, d+1) array")
    norms = np.linalg.norm(pts, axis=1)
    if np.any(np.abs(norms - 1.0) > atol):
        raise ValueError("all points must have unit Euclidean norm")
    return pts


def gram_matrix(psi, points) -> np.ndarray:
    """``psi(arccos <x_i, x_j>)`` with inner products clamped to ``[-1, 1]``."""
    pts = check_sphere_points(points)
    inner = np.clip(pts @ pts.T, -1.0, 1.0)
    theta = np.arccos(inner)
    np.fill_diagonal(theta, 0.0)
    return np.asarray(psi(theta), dtype=float)


def gram_check(psi, points) -> float:
    """Smallest eigenvalue of the kernel matrix on ``points``.

    A value ``>= -tol`` (for a tolerance suited to the matrix size) is
    consistent with positive definiteness.
    """
    pts = check_sphere_points(points)
    if len(pts) > 500:
        raise ValueError("gram_check is limited to 500 points")
    return float(np.linalg.eigvalsh(gram_matrix(psi, pts))[0])


def fibonacci_sphere(n: int) -> np.ndarray:
    """Quasi-uniform Fibonacci-lattice points on ``S^2``."""
    i = np.arange(n) + 0.5
    z = 1.0 - 2.0 * i / n
    r = np.sqrt(np.clip(1.0 - z * z, 0.0, None))
    phi = math.pi * (3.0 - math.sqrt(5.0)) * i
    pts = np.column_stack([r * np.cos(phi), r * np.sin(phi), z])
    return pts / np.linalg.norm(pts, axis=1, keepdims=True)


def random_sphere_points(n: int, d: int, seed: int = 0) -> np.ndarray:
    """``n`` normalised Gaussian vectors in ``R^{d+1}``, reproducible from ``seed``."""
    rng = np.random.default_rng(seed)
    x = rng.standard_normal((n, d + 1))
    return x / np.linalg.norm(x, axis=1, keepdims=True)

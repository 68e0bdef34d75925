"""Bounds on the minimal curvature at the origin of compactly supported kernels.

For a cutoff ``c`` let ``a_d^c`` be the infimum of ``-psi''(0)`` over
kernels positive definite on ``S^d`` that vanish beyond ``c``. Kernels
that merely vanish *at* ``c`` form a larger class, so minimising over
them gives a lower bound. Restricting to the first two (or three)
Schoenberg coefficients makes that minimisation explicit:

* ``c >= pi/2``: the two-coefficient kernel ``psi_c`` is optimal and
  gives ``1 / (1 - cos c)``;
* ``arccos(1/sqrt(d+1)) <= c < pi/2``: the three-coefficient family
  ``psi_beta`` is optimal at the left end of its admissible interval;
* below that threshold no bound is produced.

The upper bound ``4 j^2_{(d-2)/2} / (d c^2)`` uses the first positive
zero of a Bessel function.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Optional

import numpy as np

from .schoenberg import Method, SchoenbergSequence
from .special_fn import first_bessel_zero

__all__ = [
    "Regime",
    "BoundsRow",
    "three_coeff_threshold",
    "regime",
    "lower_bound",
    "upper_bound",
    "psi_c",
    "psi_c_sequence",
    "beta_interval",
    "psi_beta",
    "psi_beta_sequence",
    "bounds_table",
    "default_grid",
]


class Regime(str, Enum):
    TWO_COEFF = "TwoCoeff"
    THREE_COEFF = "ThreeCoeff"
    NO_LOWER_BOUND = "NoLowerBound"


@dataclass(frozen=True)
class BoundsRow:
    c: float
    d: int
    lower: Optional[float]
    upper: float
    regime: Regime


def _check_cutoff(c: float):
    if not 0 < c <= math.pi:
        raise ValueError(f"cutoff must lie in (0, pi], got {c!r}")


def _check_dimension(d: int):
    if int(d) != d or d < 2:
        raise ValueError("curvature bounds need an integer dimension d >= 2")


def three_coeff_threshold(d: int) -> float:
    """``arccos(sqrt(1/(d+1)))``, the smallest cutoff with a lower bound."""
    return math.acos(math.sqrt(1.0 / (d + 1)))


def regime(d: int, c: float) -> Regime:
    _check_cutoff(c)
    if c >= math.pi / 2:
        return Regime.TWO_COEFF
    if c >= three_coeff_threshold(d):
        return Regime.THREE_COEFF
    return Regime.NO_LOWER_BOUND


def _two_coeff_bound(c: float) -> float:
    return 1.0 / (1.0 - math.cos(c))


def _three_coeff_bound(d: int, c: float) -> float:
    x = math.cos(c)
    return ((d + 1) * x * (2 - x) + 1) / ((1 - x) * ((d + 1) * x + 1))


def lower_bound(d: int, c: float) -> Optional[float]:
    """Lower bound on ``a_d^c``, or ``None`` where no bound is available."""
    _check_dimension(d)
    r = regime(d, c)
    if r is Regime.TWO_COEFF:
        return _two_coeff_bound(c)
    if r is Regime.THREE_COEFF:
        return _three_coeff_bound(d, c)
    return None


def upper_bound(d: int, c: float) -> float:
    """``4 j_{(d-2)/2}^2 / (d c^2)``."""
    if int(d) != d or d < 1:
        raise ValueError("dimension must be an integer >= 1")
    _check_cutoff(c)
    j = first_bessel_zero((d - 2) / 2)
    return 4.0 * j * j / (d * c * c)


def psi_c(c: float, theta):
    """Two-coefficient kernel ``(cos theta - cos c) / (1 - cos c)`` vanishing at ``c``."""
    if not math.pi / 2 <= c <= math.pi:
        raise ValueError("psi_c needs c in [pi/2, pi]; below that its constant term is negative")
    x = math.cos(c)
    return (np.cos(theta) - x) / (1.0 - x)


def psi_c_sequence(c: float, d: int) -> SchoenbergSequence:
    """Exact Schoenberg coefficients ``(-cos c, 1) / (1 - cos c)`` of :func:`psi_c`."""
    if not math.pi / 2 <= c <= math.pi:
        raise ValueError("psi_c needs c in [pi/2, pi]")
    x = math.cos(c)
    return SchoenbergSequence(d, [-x / (1 - x), 1 / (1 - x)], Method.CLOSED, 0.0)


def beta_interval(d: int, c: float) -> Optional[tuple[float, float]]:
    """Admissible ``b_2`` values for the three-coefficient family, or ``None`` if empty."""
    _check_dimension(d)
    _check_cutoff(c)
    x = math.cos(c)
    denom = (d + 1) * x + 1
    if denom <= 0:
        return None
    lo = d * x / ((1 - x) * denom)
    hi = d / ((d + 1) * math.sin(c) ** 2)
    if lo > hi * (1 + 1e-12) + 1e-15:
        return None
    return lo, max(lo, hi)


def _beta_coeffs(d: int, c: float, beta: float) -> tuple[float, float, float]:
    x = math.cos(c)
    b0 = -x / (1 - x) + ((d + 1) * x + 1) * beta / d
    b1 = 1 / (1 - x) - (d + 1) * (1 + x) * beta / d
    return b0, b1, beta


def _check_beta(d: int, c: float, beta: float):
    interval = beta_interval(d, c)
    if interval is None:
        raise ValueError(f"no admissible beta for d={d}, c={c}")
    lo, hi = interval
    slack = 1e-12 * max(1.0, abs(hi))
    if not lo - slack <= beta <= hi + slack:
        raise ValueError(f"beta={beta} outside the admissible interval [{lo}, {hi}]")


def psi_beta(d: int, c: float, beta: float, theta):
    """Three-coefficient kernel on ``S^d`` with ``b_2 = beta`` and a zero at ``c``."""
    _check_beta(d, c, beta)
    b0, b1, b2 = _beta_coeffs(d, c, beta)
    x = np.cos(theta)
    return b0 + b1 * x + b2 * ((d + 1) * x * x - 1) / d


def psi_beta_sequence(d: int, c: float, beta: float) -> SchoenbergSequence:
    _check_beta(d, c, beta)
    return SchoenbergSequence(d, list(_beta_coeffs(d, c, beta)), Method.CLOSED, 0.0)


def default_grid(d: int, size: int = 400) -> np.ndarray:
    """Uniform cutoffs on ``[arccos(1/sqrt(d+1)), pi]``."""
    return np.linspace(three_coeff_threshold(d), math.pi, size)


def bounds_table(d: int, c_grid: Optional[Iterable[float]] = None) -> list[BoundsRow]:
    """Lower and upper bounds on ``a_d^c`` for each cutoff in ``c_grid``."""
    _check_dimension(d)
    grid = default_grid(d) if c_grid is None else c_grid
    j = first_bessel_zero((d - 2) / 2)
    rows = []
    for c in grid:
        c = float(c)
        _check_cutoff(c)
        rows.append(BoundsRow(c, d, lower_bound(d, c), 4.0 * j * j / (d * c * c), regime(d, c)))
    return rows

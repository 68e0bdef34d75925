"""Schoenberg coefficients and curvature bounds for isotropic kernels on spheres.

Submodules
----------
special_fn   Gegenbauer and Legendre polynomials, trigonometric expansions, Bessel zeros.
quadrature   Adaptive Gauss-Kronrod integration used as the reference oracle.
schoenberg   Coefficients by quadrature and dimension lift, reconstruction, checks.
families     Exponential and Askey kernels with closed-form coefficients.
curvature    Lower and upper bounds on the curvature of locally supported kernels.
cli          Command-line entry point.
"""

__version__ = "0.1.0"

from .curvature import (  # noqa: E402
    BoundsRow,
    Regime,
    beta_interval,
    bounds_table,
    lower_bound,
    psi_beta,
    psi_c,
    upper_bound,
)
from .families import (  # noqa: E402
    Askey,
    Custom,
    Exponential,
    askey_coeff2_closed,
    compute_sequence,
    exp_coeff2_closed,
)
from .schoenberg import (  # noqa: E402
    Method,
    SchoenbergSequence,
    Verdict,
    coeff_lift,
    coeff_quadrature,
    curvature_from_coeffs,
    gram_check,
    pd_verdict,
    reconstruct,
)
from .special_fn import (  # noqa: E402
    first_bessel_zero,
    gegenbauer,
    legendre,
    trig_expansion,
)

__all__ = [
    "__version__",
    "BoundsRow", "Regime", "beta_interval", "bounds_table", "lower_bound",
    "psi_beta", "psi_c", "upper_bound",
    "Askey", "Custom", "Exponential", "askey_coeff2_closed", "compute_sequence",
    "exp_coeff2_closed",
    "Method", "SchoenbergSequence", "Verdict", "coeff_lift", "coeff_quadrature",
    "curvature_from_coeffs", "gram_check", "pd_verdict", "reconstruct",
    "first_bessel_zero", "gegenbauer", "legendre", "trig_expansion",
]

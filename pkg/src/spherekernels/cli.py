"""Command-line interface: ``spherekernels <command> [options]``.

Commands
--------
coeffs       Schoenberg coefficients by one or all methods, with cross-method gaps.
bounds       Lower and upper bounds on the minimal curvature of locally supported kernels.
reconstruct  Truncated Schoenberg series against the kernel on a theta grid.
pdcheck      Coefficient-sign verdict plus a Gram-matrix eigenvalue check (JSON report).
version      Print the package version.

Exit status is 0 on success, 1 for usage errors, 2 when a numerical
tolerance is breached or positive definiteness is violated, 3 for I/O
errors. Output goes to ``--out`` (default stdout); ``--format svg``
writes a plot instead of CSV.
"""

from __future__ import annotations

import argparse
import io
import json
import math
import sys
from typing import Optional, Sequence

import numpy as np

from . import __version__
from .curvature import bounds_table, default_grid
from .families import Askey, Custom, Exponential, Kernel, compute_sequence, has_closed_form
from .quadrature import QuadratureError
from .schoenberg import (
    fibonacci_sphere,
    gram_check,
    pd_verdict,
    random_sphere_points,
    reconstruct,
)

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_TOLERANCE = 2
EXIT_IO = 3

GRAM_TOL = 1e-10
COEFF_SIGN_TOL = 1e-10
MAX_POINTS = 500


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # argparse exits with 2 on bad arguments; 2 is reserved for tolerance breaches
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def fmt(x) -> str:
    """17 significant digits, lower-case exponent; ``nan`` for undefined values."""
    if x is None:
        return "nan"
    return f"{float(x):.16e}"


def _csv(header: Sequence[str], rows) -> str:
    out = io.StringIO()
    out.write(",".join(header) + "\n")
    for row in rows:
        out.write(",".join(row) + "\n")
    return out.getvalue()


# Kernel construction -----------------------------------------------------

def _load_table(path: str):
    try:
        with open(path, encoding="utf-8") as fh:
            lines = fh.read().splitlines()
    except OSError as exc:
        raise OSError(f"cannot read table {path!r}: {exc}") from exc
    rows = []
    for k, line in enumerate(lines):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.replace(",", " ").split()
        try:
            values = [float(p) for p in parts]
        except ValueError:
            if not rows:
                continue  # header
            raise UsageError(f"{path}: non-numeric row {k + 1}")
        if len(values) != 2:
            raise UsageError(f"{path}: row {k + 1} must have two columns")
        rows.append(values)
    if len(rows) < 2:
        raise UsageError(f"{path}: table needs at least two rows")
    data = np.array(rows)
    return data[:, 0], data[:, 1]


def build_kernel(args) -> Kernel:
    family = args.family
    if family != "custom" and args.table is not None:
        raise UsageError("--table is only valid with --family custom")
    if family == "custom":
        if args.table is None:
            raise UsageError("--family custom requires --table")
        theta, values = _load_table(args.table)
        try:
            return Custom.from_table(theta, values, name=args.table)
        except ValueError as exc:
            raise UsageError(str(exc)) from exc
    if not args.alpha > 0:
        raise UsageError("--alpha must be positive")
    if family == "exponential":
        return Exponential(args.alpha)
    if not args.tau > 0:
        raise UsageError("--tau must be positive")
    return Askey(args.alpha, args.tau)


def _check_common(args):
    if args.d < 1:
        raise UsageError("--d must be at least 1")
    if args.n_max < 0:
        raise UsageError("--n-max must be nonnegative")
    if not args.tol > 0:
        raise UsageError("--tol must be positive")
    if args.workers is not None and args.workers < 1:
        raise UsageError("--workers must be positive")


def _inner_tols(tol: float):
    """Quadrature and lift tolerances that keep method gaps well below ``tol``.

    The quadrature target is floored at 1e-15, about what double
    precision can deliver for coefficients of size one.
    """
    return max(min(tol * 1e-3, 1e-12), 1e-15), tol / 10


def _sequence(kernel, args, method: str):
    q_tol, l_tol = _inner_tols(args.tol)
    tol = {"quadrature": q_tol, "lift": l_tol, "closed": q_tol}[method]
    return compute_sequence(kernel, args.d, args.n_max, method, tol, args.workers)


def _available(kernel, d: int, method: str) -> bool:
    if method == "closed":
        return has_closed_form(kernel, d)
    if method == "lift":
        return d >= 2
    return True


def _checked_method(kernel, args, method: str) -> str:
    if method == "auto":
        # summing closed forms up to N costs O(N^3) high-precision terms
        return "quadrature"
    if method == "closed" and not _available(kernel, args.d, method):
        raise UsageError(f"no closed form for family {args.family!r} on S^{args.d}"
                         " (closed forms exist for d=2, exponential and Askey tau=2 with alpha <= pi)")
    if method == "lift" and not _available(kernel, args.d, method):
        raise UsageError("the dimension lift needs --d >= 2")
    return method


# SVG output --------------------------------------------------------------

def _svg(draw) -> str:
    """Render ``draw(ax)`` to a self-contained, byte-reproducible SVG string."""
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    with matplotlib.rc_context({"svg.hashsalt": "spherekernels", "svg.fonttype": "none"}):
        fig, ax = plt.subplots(figsize=(6.4, 4.0))
        try:
            draw(ax)
            ax.grid(True, alpha=0.3)
            fig.tight_layout()
            buf = io.StringIO()
            fig.savefig(buf, format="svg", metadata={"Date": None})
        finally:
            plt.close(fig)
    return buf.getvalue()


# Commands ----------------------------------------------------------------

def cmd_coeffs(args) -> tuple[str, int]:
    _check_common(args)
    kernel = build_kernel(args)
    if args.method == "all":
        methods = [m for m in ("closed", "quadrature", "lift") if _available(kernel, args.d, m)]
    else:
        methods = [_checked_method(kernel, args, args.method)]

    seqs = {m: _sequence(kernel, args, m).coeffs for m in methods}
    pairs = [(a, b) for i, a in enumerate(methods) for b in methods[i + 1:]]
    gaps = {p: np.abs(seqs[p[0]] - seqs[p[1]]) for p in pairs}
    status = EXIT_OK
    if any(np.any(g > args.tol) for g in gaps.values()):
        status = EXIT_TOLERANCE
        worst = max(float(g.max()) for g in gaps.values())
        print(f"tolerance breach: largest cross-method gap {worst:.3e} > {args.tol:.3e}",
              file=sys.stderr)

    if args.format == "svg":
        n = np.arange(args.n_max + 1)

        def draw(ax):
            for m in methods:
                ax.plot(n, seqs[m], marker="o", markersize=2.5, linewidth=0.8, label=m)
            ax.set_xlabel("n")
            ax.set_ylabel(f"b_n,{args.d}")
            ax.set_title(f"{args.family} kernel, alpha={args.alpha:g}, d={args.d}")
            ax.legend()

        return _svg(draw), status

    header = ["n", *(f"b_{m}" for m in methods), *(f"gap_{a}_{b}" for a, b in pairs)]
    rows = []
    for n in range(args.n_max + 1):
        rows.append([str(n), *(fmt(seqs[m][n]) for m in methods),
                     *(fmt(gaps[p][n]) for p in pairs)])
    return _csv(header, rows), status


def cmd_bounds(args) -> tuple[str, int]:
    if args.d < 2:
        raise UsageError("bounds need --d >= 2")
    if args.c is not None:
        grid = np.asarray(args.c, dtype=float)
        if np.any(grid <= 0) or np.any(grid > math.pi):
            raise UsageError("--c values must lie in (0, pi]")
    else:
        if args.grid < 2:
            raise UsageError("--grid must be at least 2")
        grid = default_grid(args.d, args.grid)
    rows = bounds_table(args.d, grid)

    if args.format == "svg":
        c = np.array([r.c for r in rows])
        lower = np.array([np.nan if r.lower is None else r.lower for r in rows])
        upper = np.array([r.upper for r in rows])

        def draw(ax):
            ax.plot(c, upper, label="upper bound")
            ax.plot(c, lower, label="lower bound")
            ax.set_xlabel("c")
            ax.set_ylabel(f"a_{args.d}^c")
            ax.set_title(f"curvature bounds on S^{args.d}")
            ax.legend()

        return _svg(draw), EXIT_OK

    body = [[fmt(r.c), fmt(r.lower), fmt(r.upper), r.regime.value] for r in rows]
    return _csv(["c", "lower", "upper", "regime"], body), EXIT_OK


def cmd_reconstruct(args) -> tuple[str, int]:
    _check_common(args)
    if args.grid < 2:
        raise UsageError("--grid must be at least 2")
    kernel = build_kernel(args)
    method = _checked_method(kernel, args, args.method)
    seq = _sequence(kernel, args, method)
    theta = np.linspace(0.0, math.pi, args.grid)
    psi = kernel(theta)
    approx = reconstruct(seq, theta)
    err = np.abs(approx - psi)

    if args.format == "svg":
        def draw(ax):
            ax.plot(theta, psi, label="psi")
            ax.plot(theta, approx, linestyle="--", label=f"partial sum, N={args.n_max}")
            ax.set_xlabel("theta")
            ax.set_title(f"{args.family} kernel on S^{args.d}")
            ax.legend()

        return _svg(draw), EXIT_OK

    body = [[fmt(t), fmt(p), fmt(r), fmt(e)] for t, p, r, e in zip(theta, psi, approx, err)]
    return _csv(["theta", "psi", "reconstruction", "error"], body), EXIT_OK


def cmd_pdcheck(args) -> tuple[str, int]:
    _check_common(args)
    if not 1 <= args.points <= MAX_POINTS:
        raise UsageError(f"--points must lie in [1, {MAX_POINTS}]")
    kernel = build_kernel(args)
    method = _checked_method(kernel, args, args.method)
    seq = _sequence(kernel, args, method)
    verdict = pd_verdict(seq, COEFF_SIGN_TOL)
    if args.d == 2:
        points, layout = fibonacci_sphere(args.points), "fibonacci"
    else:
        points, layout = random_sphere_points(args.points, args.d, args.seed), "random"
    min_eig = gram_check(kernel, points)
    gram_ok = min_eig >= -GRAM_TOL
    passed = verdict.consistent and gram_ok
    report = {
        "family": args.family,
        "alpha": args.alpha if args.family != "custom" else None,
        "tau": args.tau if args.family == "askey" else None,
        "table": args.table,
        "d": args.d,
        "n_max": args.n_max,
        "method": method,
        "coefficients": {
            "verdict": str(verdict),
            "consistent": verdict.consistent,
            "violated_index": verdict.violated_index,
            "min_coefficient": float(np.min(seq.coeffs)),
            "partial_sum_max": float(np.max(seq.partial_sums())),
            "tol": COEFF_SIGN_TOL,
        },
        "gram": {
            "points": args.points,
            "layout": layout,
            "seed": args.seed if layout == "random" else None,
            "min_eigenvalue": min_eig,
            "tol": GRAM_TOL,
            "consistent": gram_ok,
        },
        "result": "pass" if passed else "violated",
    }
    return json.dumps(report, indent=2) + "\n", EXIT_OK if passed else EXIT_TOLERANCE


def cmd_version(args) -> tuple[str, int]:
    return f"spherekernels {__version__}\n", EXIT_OK


# Parser ------------------------------------------------------------------

def _kernel_flags(p):
    p.add_argument("--family", choices=["exponential", "askey", "custom"], default="exponential")
    p.add_argument("--alpha", type=float, default=1.0, help="scale parameter (default 1)")
    p.add_argument("--tau", type=float, default=2.0, help="Askey exponent (default 2)")
    p.add_argument("--table", help="two-column (theta, psi) file for --family custom")
    p.add_argument("--d", type=int, default=2, help="sphere dimension (default 2)")
    p.add_argument("--n-max", type=int, default=50, help="largest degree (default 50)")
    p.add_argument("--tol", type=float, default=1e-8, help="cross-method tolerance (default 1e-8)")
    p.add_argument("--workers", type=int, default=None, help="threads for coefficient batches")


def _output_flags(p, formats=("csv", "svg")):
    p.add_argument("--out", default="-", help="output path (default stdout)")
    p.add_argument("--format", choices=list(formats), default="csv")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="spherekernels", description=__doc__.split("\n")[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("coeffs", help="Schoenberg coefficients")
    _kernel_flags(p)
    p.add_argument("--method", choices=["closed", "quadrature", "lift", "all"], default="all")
    _output_flags(p)
    p.set_defaults(func=cmd_coeffs)

    p = sub.add_parser("bounds", help="curvature bounds table")
    p.add_argument("--d", type=int, default=2)
    p.add_argument("--grid", type=int, default=400, help="number of cutoffs (default 400)")
    p.add_argument("--c", type=float, nargs="+", help="explicit cutoffs instead of a grid")
    _output_flags(p)
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("reconstruct", help="truncated series against the kernel")
    _kernel_flags(p)
    p.add_argument("--method", choices=["auto", "closed", "quadrature", "lift"], default="auto")
    p.add_argument("--grid", type=int, default=181, help="number of theta samples (default 181)")
    _output_flags(p)
    p.set_defaults(func=cmd_reconstruct)

    p = sub.add_parser("pdcheck", help="positive-definiteness report (JSON)")
    _kernel_flags(p)
    p.add_argument("--method", choices=["auto", "closed", "quadrature", "lift"], default="auto")
    p.add_argument("--points", type=int, default=100)
    p.add_argument("--seed", type=int, default=42)
    _output_flags(p, formats=("csv",))
    p.set_defaults(func=cmd_pdcheck)

    p = sub.add_parser("version", help="print the version")
    p.set_defaults(func=cmd_version)
    return parser


def _write(text: str, path: str):
    if path in (None, "-"):
        sys.stdout.write(text)
        sys.stdout.flush()
        return
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # --help, or a usage error already reported
        return int(exc.code or 0)
    try:
        text, status = args.func(args)
    except UsageError as exc:
        print(f"spherekernels: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"spherekernels: I/O error: {exc}", file=sys.stderr)
        return EXIT_IO
    except QuadratureError as exc:
        print(f"spherekernels: numerical failure: {exc}", file=sys.stderr)
        return EXIT_TOLERANCE
    except ValueError as exc:
        print(f"spherekernels: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    try:
        _write(text, getattr(args, "out", "-"))
    except OSError as exc:
        print(f"spherekernels: I/O error: {exc}", file=sys.stderr)
        return EXIT_IO
    return status


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())

"""Command line front end.

Every subcommand builds an :class:`OutputRecord` and prints it either as an
aligned table or as JSON.  Exact rationals always cross this boundary as
``"p/q"`` strings, floats as their shortest round-trip decimal string.

Exit codes: 0 all checks passed, 1 a mathematical check (or fit) failed,
2 usage / domain error.
"""
from __future__ import annotations

import argparse
import json
import re
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Callable, Sequence

from . import jacobi_bvp, renorm, spectra
from .errors import ConsistencyError, DomainError, FitError
from .exactmath import c_constant, format_bipoly

EXIT_OK, EXIT_CHECK_FAILED, EXIT_USAGE = 0, 1, 2


def encode_rational(q) -> str:
    q = Fraction(q)
    return f"{q.numerator}/{q.denominator}"


def decode_rational(s: str) -> Fraction:
    return Fraction(s)


def encode_float(x: float) -> str:
    return repr(float(x))


def encode_sign(s: int) -> str:
    return {1: "+", 0: "0", -1: "-"}[s]


@dataclass
class OutputRecord:
    command: str
    inputs: dict[str, Any]
    results: dict[str, Any]
    checks: list[dict[str, str]] = field(default_factory=list)

    def check(self, name: str, ok: bool) -> bool:
        self.checks.append({"name": name, "status": "pass" if ok else "fail"})
        return ok

    @property
    def passed(self) -> bool:
        return all(c["status"] == "pass" for c in self.checks)

    def to_dict(self) -> dict[str, Any]:
        return {
            "command": self.command,
            "inputs": self.inputs,
            "results": self.results,
            "checks": self.checks,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2) + "\n"

    @classmethod
    def from_json(cls, text: str) -> OutputRecord:
        d = json.loads(text)
        return cls(d["command"], d["inputs"], d["results"], d["checks"])

    def to_table(self) -> str:
        rows = [("command", self.command)]
        rows += flatten(self.inputs, "inputs")
        rows += flatten(self.results, "results")
        width = max(len(k) for k, _ in rows)
        out = [f"{k.ljust(width)}  {v}" for k, v in rows]
        out += [f"[{c['status'].upper()}] {c['name']}" for c in self.checks]
        return "\n".join(out) + "\n"


def flatten(value: Any, prefix: str) -> list[tuple[str, str]]:
    """Leaves of a nested dict/list as ``(dotted.path[i], text)`` pairs."""
    if isinstance(value, dict):
        rows = []
        for k, v in value.items():
            rows += flatten(v, f"{prefix}.{k}")
        return rows
    if isinstance(value, list) and any(isinstance(v, (dict, list)) for v in value):
        rows = []
        for i, v in enumerate(value):
            rows += flatten(v, f"{prefix}[{i}]")
        return rows
    if isinstance(value, list):
        return [(prefix, "[" + ", ".join(str(v) for v in value) + "]")]
    if isinstance(value, bool):
        return [(prefix, "true" if value else "false")]
    return [(prefix, str(value))]


# --- subcommands -----------------------------------------------------------

def cmd_energy(args) -> OutputRecord:
    k, lam, area = args.k, args.lam, args.area
    rep = renorm.expansion_coefficients(k, lam, area)
    ck = c_constant(k)
    rec = OutputRecord(
        "energy",
        {"k": k, "lambda": encode_rational(lam), "area": encode_rational(area)},
        {
            "energy": encode_rational(rep.energy),
            "log_coeff": encode_rational(rep.log_coeff),
            "b_coeffs": [encode_rational(b) for b in rep.b_coeffs],
            "c_k": encode_rational(ck),
            "first_variation_constant": encode_rational(renorm.first_variation_constant(k)),
        },
    )
    rec.check("log_coeff == 2*c_k*energy", rep.log_coeff == 2 * ck * rep.energy)
    rec.check(
        "energy == 2^k (2k-1)! lambda^k area",
        rep.energy == renorm.gw_energy(k, lam, area),
    )
    return rec


def cmd_jacobi_poly(args) -> OutputRecord:
    k = args.k
    pk = jacobi_bvp.closed_form_pk(k)
    lead = -2 * c_constant(k + 1)
    rec = OutputRecord(
        "jacobi-poly",
        {"k": k, "check": bool(args.check)},
        {
            "p_k": format_bipoly(pk),
            "factored": jacobi_bvp.format_factored_pk(k),
            "lambda_shifts": [gap for _, gap in jacobi_bvp.mathcalJ_factors(k)],
            "coefficients": [
                {"x_degree": a, "lambda_degree": b, "coeff": encode_rational(c)} for (a, b), c in pk
            ],
        },
    )
    rec.check("closed form homogeneous of degree k+1", pk.is_homogeneous(k + 1))
    rec.check("x^(k+1) coefficient == -2 c_(k+1)", pk.coeff(k + 1, 0) == lead)
    if args.check:
        sol = jacobi_bvp.formal_solve(k)
        rec.results["formal_solution"] = {
            "p_k": format_bipoly(sol.p_k),
            "a_coeffs": [format_bipoly(a) for a in sol.a_coeffs],
        }
        rec.check("formal solution homogeneous of degree k+1", sol.p_k.is_homogeneous(k + 1))
        if not rec.check("formal solution == closed form", sol.p_k == pk):
            print(jacobi_bvp.pk_diff(sol.p_k, pk), file=sys.stderr)
    return rec


def cmd_sphere(args) -> OutputRecord:
    case = spectra.SphereCase(args.k, args.m)
    k, m = case.k, case.m
    lines = spectra.sphere_hessian_spectrum(case, args.jmax)
    conf, isom, const = spectra.conformal_dims(case.ambient_dim)
    kernel = spectra.sphere_kernel_dimension(case)
    moduli = spectra.sphere_moduli_dim(case)
    rec = OutputRecord(
        "sphere",
        {"k": k, "m": m, "jmax": args.jmax},
        {
            "ambient_dim": case.ambient_dim,
            "lines": [
                {
                    "j": line.label[0],
                    "eigenvalue": encode_rational(line.eigenvalue),
                    "multiplicity": line.multiplicity,
                    "second_variation": encode_rational(
                        spectra.second_variation_value(k, line.eigenvalue)
                    ),
                }
                for line in lines
            ],
            "kernel_dimension": kernel,
            "conformal": {"conf": conf, "isom": isom, "const": const},
            "moduli_dimension": moduli,
        },
    )
    rec.check("all eigenvalues >= 0", all(line.eigenvalue >= 0 for line in lines))
    rec.check(
        "eigenvalue zero exactly for j in {0, 1}",
        all((line.eigenvalue == 0) == (line.label[0] <= 1) for line in lines),
    )
    rec.check("kernel dimension == 2(k+1)m", kernel == 2 * (k + 1) * m)
    rec.check("conformal orbit dimension == kernel dimension", moduli == kernel)
    rec.check("conf == isom + const", conf == isom + const)
    return rec


def cmd_clifford(args) -> OutputRecord:
    case = spectra.clifford_setup(args.d1, args.d2)
    k = case.k
    cutoff = args.cutoff if args.cutoff is not None else Fraction(24 * k)
    lines = spectra.clifford_laplacian_spectrum(case, cutoff)
    mu_l = spectra.clifford_L_eigenvalue(k, 0)
    sign = spectra.clifford_mu_sign(k)
    moduli = spectra.clifford_moduli_dim(case)
    rec = OutputRecord(
        "clifford",
        {"d1": case.d1, "d2": case.d2, "cutoff": encode_rational(cutoff)},
        {
            "k": k,
            "r1_sq": encode_rational(case.r1_sq),
            "r2_sq": encode_rational(case.r2_sq),
            "r1": encode_float(case.r1),
            "r2": encode_float(case.r2),
            "lines": [
                {
                    "labels": [list(lab) for lab in line.label],
                    "delta_eigenvalue": encode_rational(line.eigenvalue),
                    "multiplicity": line.multiplicity,
                    "L_eigenvalue": encode_rational(spectra.clifford_L_eigenvalue(k, line.eigenvalue)),
                }
                for line in lines
            ],
            "mu_L_eigenvalue": encode_rational(mu_l),
            "mu_sign": encode_sign(sign),
            "moduli_dimension": moduli,
        },
    )
    mult = {line.eigenvalue: line.multiplicity for line in lines}
    d1, d2 = case.d1, case.d2
    rec.check("mu sign matches k-rule", sign == spectra.expected_mu_sign(k))
    rec.check(
        "L vanishes at Delta = 2k and 4k",
        spectra.clifford_L_eigenvalue(k, 2 * k) == 0 and spectra.clifford_L_eigenvalue(k, 4 * k) == 0,
    )
    if cutoff >= 4 * k:
        rec.check(
            "multiplicities at 0, 2k, 4k == 1, d1+d2+2, (d1+1)(d2+1)",
            [mult.get(Fraction(v), 0) for v in (0, 2 * k, 4 * k)]
            == [1, d1 + d2 + 2, (d1 + 1) * (d2 + 1)],
        )
    rec.check(
        "only 0, 2k, 4k occur at or below 4k",
        all(ev in (0, 2 * k, 4 * k) for ev in mult if ev <= 4 * k),
    )
    rec.check(
        "L > 0 for Delta > 4k",
        all(spectra.clifford_L_eigenvalue(k, ev) > 0 for ev in mult if ev > 4 * k),
    )
    return rec


def _relative_error(fitted: float, exact: Fraction) -> float:
    diff = abs(Fraction(fitted) - exact)
    return float(diff / abs(exact)) if exact != 0 else float(diff)


def cmd_verify_numeric(args) -> OutputRecord:
    k, lam, eps0, area = args.k, args.lam, args.eps0, args.area
    grid = renorm.default_grid(eps0, args.points)
    fit = renorm.numeric_extract(k, lam, area, eps0, grid, method=args.method)
    exact = renorm.expansion_coefficients(k, Fraction(lam), Fraction(area))
    errors = [_relative_error(b, e) for b, e in zip(fit.betas, exact.b_coeffs)]
    errors.append(_relative_error(fit.kappa, exact.log_coeff))
    worst = max(errors)
    rec = OutputRecord(
        "verify-numeric",
        {
            "k": k,
            "lambda": encode_float(lam),
            "area": encode_float(area),
            "eps0": encode_float(eps0),
            "points": args.points,
            "tol": encode_float(args.tol),
            "method": args.method,
        },
        {
            "grid": {"min": encode_float(grid[0]), "max": encode_float(grid[-1])},
            "fitted": {
                "b_coeffs": [encode_float(b) for b in fit.betas],
                "log_coeff": encode_float(fit.kappa),
                "constant": encode_float(fit.gamma),
            },
            "exact": {
                "b_coeffs": [encode_rational(b) for b in exact.b_coeffs],
                "log_coeff": encode_rational(exact.log_coeff),
            },
            "relative_errors": [encode_float(e) for e in errors],
            "max_relative_error": encode_float(worst),
            "max_residual": encode_float(fit.max_residual),
        },
    )
    rec.check(f"max relative error <= {args.tol!r}", worst <= args.tol)
    return rec


# --- argument parsing ------------------------------------------------------

def _rational_arg(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}")


def _positive_int(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}")
    if value < 1:
        raise argparse.ArgumentTypeError(f"must be >= 1, got {value}")
    return value


def _nonneg_int(text: str) -> int:
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError(f"must be >= 0, got {value}")
    return value


class _Parser(argparse.ArgumentParser):
    """Accepts negative rationals such as ``-2/7`` as option values."""

    def __init__(self, *args, **kwargs):
        super().__init__(*args, **kwargs)
        self._negative_number_matcher = re.compile(r"^-\d+(/\d+)?$|^-\d*\.\d+([eE][-+]?\d+)?$")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="gwenergy",
        description="Graham-Witten energy, its Jacobi polynomial and second-variation spectra.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name: str, func: Callable, help_text: str) -> argparse.ArgumentParser:
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--format", choices=("table", "json"), default="table")
        p.set_defaults(func=func)
        return p

    p = add("energy", cmd_energy, "renormalized area coefficients and energy")
    p.add_argument("--k", type=_positive_int, required=True, help="half the submanifold dimension")
    p.add_argument("--lambda", dest="lam", type=_rational_arg, required=True, help="Einstein parameter p/q")
    p.add_argument("--area", type=_rational_arg, required=True, help="area of the submanifold, p/q")

    p = add("jacobi-poly", cmd_jacobi_poly, "log-coefficient polynomial p_k(x, lambda)")
    p.add_argument("--k", type=_positive_int, required=True, help="k >= 1 (exact arithmetic is fast up to k = 12)")
    p.add_argument("--check", action="store_true", help="re-derive p_k by the formal recursion")

    p = add("sphere", cmd_sphere, "spectrum at a totally geodesic S^2k in S^(2k+m)")
    p.add_argument("--k", type=_positive_int, required=True)
    p.add_argument("--m", type=_positive_int, required=True)
    p.add_argument("--jmax", type=_nonneg_int, default=20)

    p = add("clifford", cmd_clifford, "spectrum at the Clifford hypersurface S^d1 x S^d2")
    p.add_argument("--d1", type=_positive_int, required=True)
    p.add_argument("--d2", type=_positive_int, required=True)
    p.add_argument("--cutoff", type=_rational_arg, default=None, help="Laplace cutoff (default 24k)")

    p = add("verify-numeric", cmd_verify_numeric, "re-extract b_l and K from quadrature by least squares")
    p.add_argument("--k", type=_positive_int, required=True)
    p.add_argument("--lambda", dest="lam", type=float, default=0.5)
    p.add_argument("--area", type=float, default=1.0)
    p.add_argument("--eps0", type=float, default=0.5)
    p.add_argument("--points", type=_positive_int, default=24)
    p.add_argument("--tol", type=float, default=1e-8)
    p.add_argument("--method", choices=("exact", "quad"), default="exact")
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        record = args.func(args)
    except DomainError as exc:
        print(f"gwenergy {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (FitError, ConsistencyError) as exc:
        print(f"gwenergy {args.command}: check failed: {exc}", file=sys.stderr)
        return EXIT_CHECK_FAILED
    sys.stdout.write(record.to_json() if args.format == "json" else record.to_table())
    return EXIT_OK if record.passed else EXIT_CHECK_FAILED


if __name__ == "__main__":
    sys.exit(main())

"""Formal solution of the Jacobi-operator boundary value problem.

For a minimal ``Sigma^{2k}`` in an Einstein manifold with the metric
``(dr^2 + (1 - lambda r^2/2)^2 g) / r^2`` on the collar, the conjugated
Jacobi operator acting on ``h(r) * nu`` is

    r^2 h J nu - (1 - lambda r^2/2)^2 (r d_r)^2 h nu
               + 2(k+1) (1 - lambda^2 r^4/4) (r d_r) h nu.

Treating ``J`` as the indeterminate ``x``, the ansatz

    nu+ = sum_j a_j(x, lambda) r^(2j) + p_k(x, lambda) r^(2k+2) log r

is solved order by order.  The indicial roots are ``0`` and ``2k+2``, so
the even coefficient ``a_{k+1}`` is free and the log coefficient ``p_k`` is
forced.  :func:`closed_form_pk` gives the product formula to compare against.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .errors import ConsistencyError, DomainError
from .exactmath import BiPoly, c_constant, format_bipoly, format_rational
from .series import LogSeries, euler_apply, series_scale_poly


def _check_k(k: int) -> None:
    if not isinstance(k, int) or k < 1:
        raise DomainError(f"k must be an integer >= 1, got {k!r}")


@dataclass(frozen=True)
class BvpSolution:
    k: int
    a_coeffs: tuple[BiPoly, ...]
    p_k: BiPoly


def apply_jacobi_conjugated(s: LogSeries, k: int) -> LogSeries:
    """Apply ``(1 - lambda r^2/2)^2 J+`` to the series ``s`` (``x`` acting as ``J``)."""
    _check_k(k)
    if s.truncation_order < k + 1:
        raise ValueError(f"series must be kept through r^{2 * k + 2}")
    if s.log_slot != k + 1:
        raise ValueError(f"log slot must sit at r^{2 * k + 2} log r for k={k}")
    x, lam = BiPoly.x(), BiPoly.lam()
    theta = euler_apply(s)
    theta2 = euler_apply(theta)
    warp = [1, -lam, lam * lam / 4]                      # (1 - lambda r^2/2)^2
    drift = [2 * (k + 1), 0, -(k + 1) * lam * lam / 2]   # 2(k+1)(1 - lambda^2 r^4/4)
    return (
        series_scale_poly(s, [0, x])
        - series_scale_poly(theta2, warp)
        + series_scale_poly(theta, drift)
    )


def formal_solve(k: int, gauge: Optional[BiPoly] = None) -> BvpSolution:
    """Solve for ``a_0 = 1, a_1, ..., a_k`` and the log coefficient ``p_k``.

    ``gauge`` fixes the free coefficient ``a_{k+1}`` (zero by default).  The
    full solution is substituted back and every coefficient through
    ``r^(2k+2)``, log slot included, must vanish; otherwise ConsistencyError.
    """
    _check_k(k)
    order, slot = k + 1, k + 1
    a = [BiPoly.one()]
    for j in range(1, k + 1):
        weight = 4 * j * (k + 1 - j)
        assert weight != 0
        residual = apply_jacobi_conjugated(LogSeries.from_coeffs(a, order, slot), k)
        a.append(-residual[j] / weight)
    a.append(gauge if gauge is not None else BiPoly.zero())

    # a_{k+1} drops out at its own order; the log term contributes -2(k+1) p_k there
    residual = apply_jacobi_conjugated(LogSeries.from_coeffs(a, order, slot), k)
    p_k = residual[k + 1] / (2 * (k + 1))

    check = apply_jacobi_conjugated(LogSeries.from_coeffs(a, order, slot, log_coeff=p_k), k)
    if not check.is_zero():
        raise ConsistencyError(f"formal solution for k={k} leaves a nonzero residual")
    return BvpSolution(k=k, a_coeffs=tuple(a), p_k=p_k)


def mathcalJ_factors(k: int) -> list[tuple[int, int]]:
    """Pairs ``(l, 2(k+l)(k-l+1))`` for ``l = 1..k+1``: the lambda-shifts in each factor of J-script."""
    _check_k(k)
    return [(l, 2 * (k + l) * (k - l + 1)) for l in range(1, k + 2)]


def closed_form_pk(k: int) -> BiPoly:
    """Expand ``-2 c_{k+1} prod_l (x + 2 lambda (k+l)(k-l+1))``."""
    x, lam = BiPoly.x(), BiPoly.lam()
    product = BiPoly.one()
    for _, gap in mathcalJ_factors(k):
        product = product * (x + gap * lam)
    return -2 * c_constant(k + 1) * product


def format_factored_pk(k: int) -> str:
    """Display ``p_k`` as its leading constant times linear factors in ``x``."""
    factors = []
    for _, gap in mathcalJ_factors(k):
        factors.append("x" if gap == 0 else f"(x + {gap}*lambda)")
    return f"{format_rational(-2 * c_constant(k + 1))} * " + " * ".join(factors)


def pk_diff(left: BiPoly, right: BiPoly) -> str:
    """One line per monomial where two polynomials disagree."""
    lines = []
    for mono in sorted(set(left.terms) | set(right.terms)):
        lc, rc = left.coeff(*mono), right.coeff(*mono)
        if lc != rc:
            lines.append(
                f"x^{mono[0]} lambda^{mono[1]}: {format_rational(lc)} != {format_rational(rc)}"
            )
    return "\n".join(lines) or f"identical: {format_bipoly(left)}"

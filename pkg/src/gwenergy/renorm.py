"""Renormalized-area expansion and Graham-Witten energy of a minimal ``Sigma^{2k}``.

With the Einstein collar metric the asymptotically minimal extension is the
product ``(0, eps0) x Sigma``, and

    Area((eps, eps0) x Sigma) = A * int_eps^eps0 r^(-2k-1) (1 - lambda r^2/2)^(2k) dr
        = sum_{l<k} b_l eps^(-2(k-l)) + K log(1/eps) + O(1),

where ``A`` is the area of ``Sigma``.  The energy is ``E = K / (2 c_k)``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Sequence

import numpy as np

from .errors import DomainError, FitError
from .exactmath import binomial, c_constant


@dataclass(frozen=True)
class ExpansionReport:
    k: int
    lam: Fraction
    area: Fraction
    b_coeffs: tuple[Fraction, ...]
    log_coeff: Fraction
    energy: Fraction


def _check_inputs(k: int, area) -> None:
    if not isinstance(k, int) or k < 1:
        raise DomainError(f"k must be an integer >= 1, got {k!r}")
    if area <= 0:
        raise DomainError(f"area must be positive, got {area}")


def gw_energy(k: int, lam, area):
    """``2^k (2k-1)! lambda^k Area``; exact whenever ``lam`` and ``area`` are."""
    _check_inputs(k, area)
    return 2**k * math.factorial(2 * k - 1) * lam**k * area


def expansion_coefficients(k: int, lam, area) -> ExpansionReport:
    _check_inputs(k, area)
    half = -Fraction(lam) / 2 if isinstance(lam, (int, Fraction)) else -lam / 2
    b = tuple(
        Fraction(1, 2 * (k - l)) * binomial(2 * k, l) * half**l * area for l in range(k)
    )
    log_coeff = binomial(2 * k, k) * half**k * area
    return ExpansionReport(
        k=k,
        lam=lam,
        area=area,
        b_coeffs=b,
        log_coeff=log_coeff,
        energy=gw_energy(k, lam, area),
    )


def first_variation_constant(k: int) -> Fraction:
    """The factor ``-1/(4k c_{k+1})`` in front of ``int g(H, V)`` in the first variation."""
    return -1 / (4 * k * c_constant(k + 1))


# --- numerical cross-check -------------------------------------------------

def area_integrand(k: int, lam: float, area: float) -> Callable[[float], float]:
    return lambda r: area * r ** (-2 * k - 1) * (1.0 - lam * r * r / 2.0) ** (2 * k)


def collar_area_exact(k: int, lam: float, area: float, eps: float, eps0: float) -> float:
    """Integrate the binomially expanded integrand term by term (fixed summation order)."""
    terms = []
    for l in range(2 * k + 1):
        c = binomial(2 * k, l) * (-lam / 2.0) ** l
        p = 2 * l - 2 * k
        if p == 0:
            terms.append(c * math.log(eps0 / eps))
        else:
            terms.append(c * (eps0**p - eps**p) / p)
    return area * math.fsum(terms)


def collar_area_quad(k: int, lam: float, area: float, eps: float, eps0: float) -> float:
    """Adaptive quadrature in ``t = log r``, where the integrand is smooth and bounded."""
    from scipy.integrate import quad

    f = lambda t: math.exp(-2 * k * t) * (1.0 - lam * math.exp(2 * t) / 2.0) ** (2 * k)
    value, _ = quad(f, math.log(eps), math.log(eps0), epsabs=0.0, epsrel=1e-13, limit=200)
    return area * value


def default_grid(eps0: float, points: int = 24) -> np.ndarray:
    """Log-spaced grid on ``[eps0/50, 0.9 eps0]``."""
    return np.geomspace(eps0 / 50.0, 0.9 * eps0, points)


@dataclass(frozen=True)
class NumericFit:
    k: int
    betas: tuple[float, ...]      # fitted b_l
    kappa: float                  # fitted log(1/eps) coefficient
    gamma: float                  # fitted constant term
    tail: tuple[float, ...]       # fitted eps^(2i), i = 1..k
    max_residual: float


def _basis(k: int) -> list[Callable[[float], float]]:
    cols = [lambda e, l=l: e ** (-2 * (k - l)) for l in range(k)]
    cols.append(lambda e: math.log(1.0 / e))
    cols.append(lambda e: 1.0)
    cols += [lambda e, i=i: e ** (2 * i) for i in range(1, k + 1)]
    return cols


def numeric_extract(
    k: int,
    lam: float,
    area: float,
    eps0: float,
    grid: Sequence[float],
    method: str = "exact",
) -> NumericFit:
    """Recover ``b_l`` and ``K`` from collar areas on a grid of cut-offs.

    The model is ``sum_l beta_l eps^(-2(k-l)) + kappa log(1/eps) + gamma +
    sum_{i=1..k} tau_i eps^(2i)``; the positive powers are the remaining terms
    of the exact expansion and must be fitted, else they bias ``kappa``.
    ``method`` is ``"exact"`` (term-by-term integration) or ``"quad"``.
    """
    if not isinstance(k, int) or k < 1:
        raise DomainError(f"k must be an integer >= 1, got {k!r}")
    if area <= 0:
        raise DomainError("area must be positive")
    if lam * eps0**2 >= 2:
        raise DomainError("need lambda * eps0^2 < 2 so the integrand stays positive")
    grid = np.asarray(grid, dtype=float)
    if np.any(grid <= 0) or np.any(grid >= eps0):
        raise DomainError("every grid point must satisfy 0 < eps < eps0")
    cols = _basis(k)
    if len(grid) < max(k + 3, len(cols)):
        raise FitError(f"{len(grid)} grid points cannot determine {len(cols)} coefficients")

    integrate = {"exact": collar_area_exact, "quad": collar_area_quad}[method]
    y = np.array([integrate(k, lam, area, float(e), eps0) for e in grid])
    design = np.array([[c(float(e)) for c in cols] for e in grid])
    mid = float(grid[len(grid) // 2])
    scale = np.array([abs(c(mid)) or 1.0 for c in cols])
    sol, _, rank, _ = np.linalg.lstsq(design / scale, y, rcond=None)
    if rank < len(cols):
        raise FitError("degenerate grid: design matrix is rank deficient")
    coef = sol / scale
    residual = float(np.max(np.abs(design @ coef - y)))
    return NumericFit(
        k=k,
        betas=tuple(float(v) for v in coef[:k]),
        kappa=float(coef[k]),
        gamma=float(coef[k + 1]),
        tail=tuple(float(v) for v in coef[k + 2:]),
        max_residual=residual,
    )

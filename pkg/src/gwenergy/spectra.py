"""Spectrum of the second-variation operator on totally geodesic spheres and Clifford hypersurfaces.

Everything is exact integer/rational arithmetic.  For ``S^{2k} in S^{2k+m}(1)``
a parallel normal frame reduces the operator to

    prod_{l=1}^{k+1} [Delta + (k+l-1)(k-l)]

on each of the ``m`` scalar components.  For the Clifford hypersurface
``S^{d1}(r1) x S^{d2}(r2) in S^{2k+1}(1)`` the Jacobi operator on ``psi mu`` is
``(Delta - 4k) psi mu`` and the relevant scalar operator is

    L = prod_{l=1}^{k+1} [Delta - 4k + (k+l)(k-l+1)].
"""
from __future__ import annotations

import math
from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import ConsistencyError, DomainError
from .exactmath import binomial


def _check_k(k: int) -> None:
    if not isinstance(k, int) or k < 1:
        raise DomainError(f"k must be an integer >= 1, got {k!r}")


@dataclass(frozen=True)
class SpectralLine:
    eigenvalue: Fraction
    multiplicity: int
    label: tuple = ()


@dataclass(frozen=True)
class SphereCase:
    """Totally geodesic ``S^{2k}`` in the unit sphere ``S^{2k+m}``; lambda is 1/2."""

    k: int
    m: int
    lam: Fraction = field(default=Fraction(1, 2), init=False)

    def __post_init__(self):
        _check_k(self.k)
        if not isinstance(self.m, int) or self.m < 1:
            raise DomainError(f"codimension m must be >= 1, got {self.m!r}")

    @property
    def ambient_dim(self) -> int:
        return 2 * self.k + self.m


@dataclass(frozen=True)
class CliffordCase:
    d1: int
    d2: int
    k: int
    r1_sq: Fraction
    r2_sq: Fraction

    @property
    def r1(self) -> float:
        return math.sqrt(self.r1_sq)

    @property
    def r2(self) -> float:
        return math.sqrt(self.r2_sq)


def sphere_multiplicity(d: int, j: int) -> int:
    return binomial(d + j, d) - binomial(d + j - 2, d)


def sphere_laplacian_line(d: int, radius_sq: Fraction, j: int) -> SpectralLine:
    """Degree-``j`` eigenvalue ``j(d+j-1)/radius^2`` of the Laplacian on ``S^d``."""
    if d < 1 or j < 0:
        raise DomainError("need d >= 1 and j >= 0")
    return SpectralLine(Fraction(j * (d + j - 1)) / radius_sq, sphere_multiplicity(d, j), (j,))


def sphere_hessian_eigenvalue(k: int, j: int) -> int:
    delta = j * (2 * k + j - 1)
    value = 1
    for l in range(1, k + 2):
        value *= delta + (k + l - 1) * (k - l)
    return value


def sphere_hessian_spectrum(case: SphereCase, jmax: int) -> list[SpectralLine]:
    if jmax < 0:
        raise DomainError("jmax must be non-negative")
    k, m = case.k, case.m
    return [
        SpectralLine(
            Fraction(sphere_hessian_eigenvalue(k, j)),
            m * sphere_multiplicity(2 * k, j),
            (j,),
        )
        for j in range(jmax + 1)
    ]


def sphere_kernel_dimension(case: SphereCase, jmax: int = 2) -> int:
    """Total multiplicity of the zero eigenvalue for degrees ``j <= max(jmax, 2)``.

    Degrees ``j >= 2`` have ``j(2k+j-1) > 2k`` and hence strictly positive
    eigenvalue, so enumeration through ``j = 2`` already sees the whole kernel.
    """
    lines = sphere_hessian_spectrum(case, max(jmax, 2))
    dim = sum(line.multiplicity for line in lines if line.eigenvalue == 0)
    expected = 2 * (case.k + 1) * case.m
    if dim != expected:
        raise ConsistencyError(f"kernel dimension {dim} != 2(k+1)m = {expected}")
    return dim


def conformal_dims(n: int) -> tuple[int, int, int]:
    """Dimensions of conf(S^n), isom(S^n) = so(n+1) and the gradient fields, in that order."""
    if n < 3:
        raise DomainError("n must be >= 3")
    conf = (n + 1) * (n + 2) // 2
    isom = n * (n + 1) // 2
    const = n + 1
    assert conf == isom + const
    return conf, isom, const


def sphere_moduli_dim(case: SphereCase) -> int:
    """``dim conf(S^{2k+m})`` minus the stabiliser ``so(2k+1,1) + so(m)`` of the sphere."""
    conf, _, _ = conformal_dims(case.ambient_dim)
    k, m = case.k, case.m
    return conf - ((k + 1) * (2 * k + 1) + m * (m - 1) // 2)


def clifford_setup(d1: int, d2: int) -> CliffordCase:
    if d1 < 1 or d2 < 1:
        raise DomainError("d1 and d2 must be positive")
    if (d1 + d2) % 2:
        raise DomainError(f"d1 + d2 = {d1 + d2} must be even")
    k = (d1 + d2) // 2
    return CliffordCase(d1, d2, k, Fraction(d1, 2 * k), Fraction(d2, 2 * k))


def _factor_lines(d: int, radius_sq: Fraction, cutoff: Fraction) -> list[SpectralLine]:
    lines, j = [], 0
    while True:
        line = sphere_laplacian_line(d, radius_sq, j)
        if line.eigenvalue > cutoff:
            return lines
        lines.append(line)
        j += 1


def clifford_laplacian_spectrum(case: CliffordCase, cutoff) -> list[SpectralLine]:
    """Eigenvalues of the Laplacian on ``S^{d1}(r1) x S^{d2}(r2)`` up to ``cutoff``.

    Equal eigenvalues from different degree pairs are merged; the label is
    the sorted tuple of contributing ``(j1, j2)``.
    """
    cutoff = Fraction(cutoff)
    if cutoff < 0:
        raise DomainError("cutoff must be non-negative")
    merged: dict[Fraction, int] = defaultdict(int)
    labels: dict[Fraction, list] = defaultdict(list)
    for a in _factor_lines(case.d1, case.r1_sq, cutoff):
        for b in _factor_lines(case.d2, case.r2_sq, cutoff - a.eigenvalue):
            ev = a.eigenvalue + b.eigenvalue
            merged[ev] += a.multiplicity * b.multiplicity
            labels[ev].append((a.label[0], b.label[0]))
    return [SpectralLine(ev, merged[ev], tuple(sorted(labels[ev]))) for ev in sorted(merged)]


def clifford_L_eigenvalue(k: int, delta_eig) -> Fraction:
    _check_k(k)
    value = Fraction(1)
    for l in range(1, k + 2):
        value *= Fraction(delta_eig) - 4 * k + (k + l) * (k - l + 1)
    return value


def _sign(q) -> int:
    return (q > 0) - (q < 0)


def expected_mu_sign(k: int) -> int:
    """Sign in the mu direction: positive for k=1, zero for k=3, negative for k=2 and k>=4."""
    return {1: 1, 3: 0}.get(k, -1)


def clifford_mu_sign(k: int) -> int:
    """Sign (+1, 0, -1) of the second variation along the constant multiple of ``mu``."""
    sign = _sign(clifford_L_eigenvalue(k, 0))
    if sign != expected_mu_sign(k):
        raise ConsistencyError(f"k={k}: computed sign {sign} contradicts the known sign rule")
    return sign


def clifford_moduli_dim(case: CliffordCase) -> int:
    """``(d1+d2+2) + (d1+1)(d2+1)``, checked against the multiplicities at ``2k`` and ``4k``."""
    d1, d2, k = case.d1, case.d2, case.k
    dim = (d1 + d2 + 2) + (d1 + 1) * (d2 + 1)
    lines = {line.eigenvalue: line.multiplicity for line in clifford_laplacian_spectrum(case, 4 * k)}
    enumerated = lines.get(Fraction(2 * k), 0) + lines.get(Fraction(4 * k), 0)
    if enumerated != dim:
        raise ConsistencyError(f"enumerated multiplicity {enumerated} != {dim}")
    conf, _, _ = conformal_dims(2 * k + 1)
    stabiliser = d1 * (d1 + 1) // 2 + d2 * (d2 + 1) // 2
    if conf - stabiliser != dim:
        raise ConsistencyError("conformal algebra count disagrees with the closed formula")
    return dim


def second_variation_value(k: int, hessian_eig) -> Fraction:
    """Second variation per unit squared L^2 norm of an eigenmode: ``eig / (2k)``."""
    _check_k(k)
    return Fraction(hessian_eig) / (2 * k)

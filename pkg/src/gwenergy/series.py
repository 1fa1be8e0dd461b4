"""Truncated series in even powers of ``r`` with a single ``r^(2s) log r`` slot.

A :class:`LogSeries` of truncation order ``N`` represents

    a_0 + a_1 r^2 + ... + a_N r^(2N) + L r^(2s) log r      (mod r^(2N+2))

with coefficients in :class:`~gwenergy.exactmath.BiPoly` and log slot ``s``.
Polynomial factors in ``r^2`` are plain sequences ``[f_0, f_1, ...]`` of
BiPoly (or rational) coefficients, ``f_i`` multiplying ``r^(2i)``.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence, Union

from .errors import ConsistencyError
from .exactmath import BiPoly, Scalar

Coefficient = Union[BiPoly, Scalar]
RSquaredPoly = Sequence[Coefficient]


def _as_bipoly(c: Coefficient) -> BiPoly:
    return c if isinstance(c, BiPoly) else BiPoly.const(c)


@dataclass(frozen=True)
class LogSeries:
    truncation_order: int
    even_coeffs: tuple[BiPoly, ...]
    log_coeff: BiPoly
    log_slot: int

    def __post_init__(self):
        if self.truncation_order < 0:
            raise ValueError("truncation order must be non-negative")
        if self.log_slot < 1:
            raise ValueError("log slot must be >= 1")
        coeffs = tuple(_as_bipoly(c) for c in self.even_coeffs)
        if len(coeffs) != self.truncation_order + 1:
            raise ValueError(
                f"expected {self.truncation_order + 1} even coefficients, got {len(coeffs)}"
            )
        object.__setattr__(self, "even_coeffs", coeffs)
        log = _as_bipoly(self.log_coeff)
        # r^(2s) log r vanishes modulo r^(2N+2) once s > N
        if self.log_slot > self.truncation_order:
            log = BiPoly.zero()
        object.__setattr__(self, "log_coeff", log)

    @classmethod
    def zero(cls, truncation_order: int, log_slot: int) -> LogSeries:
        return cls(truncation_order, (BiPoly.zero(),) * (truncation_order + 1), BiPoly.zero(), log_slot)

    @classmethod
    def from_coeffs(
        cls,
        coeffs: Sequence[Coefficient],
        truncation_order: int,
        log_slot: int,
        log_coeff: Coefficient = 0,
    ) -> LogSeries:
        """Build a series from leading even coefficients, padding with zeros or dropping the excess."""
        padded = list(coeffs[: truncation_order + 1])
        padded += [BiPoly.zero()] * (truncation_order + 1 - len(padded))
        return cls(truncation_order, tuple(padded), _as_bipoly(log_coeff), log_slot)

    @classmethod
    def monomial(cls, j: int, coeff: Coefficient, truncation_order: int, log_slot: int) -> LogSeries:
        """``coeff * r^(2j)``; dropped if ``j`` exceeds the truncation order."""
        coeffs = [BiPoly.zero()] * (truncation_order + 1)
        if j <= truncation_order:
            coeffs[j] = _as_bipoly(coeff)
        return cls(truncation_order, tuple(coeffs), BiPoly.zero(), log_slot)

    def _check_compatible(self, other: LogSeries) -> None:
        if (self.truncation_order, self.log_slot) != (other.truncation_order, other.log_slot):
            raise ValueError("series have different truncation order or log slot")

    def __add__(self, other: LogSeries) -> LogSeries:
        self._check_compatible(other)
        return LogSeries(
            self.truncation_order,
            tuple(a + b for a, b in zip(self.even_coeffs, other.even_coeffs)),
            self.log_coeff + other.log_coeff,
            self.log_slot,
        )

    def __neg__(self) -> LogSeries:
        return LogSeries(
            self.truncation_order,
            tuple(-a for a in self.even_coeffs),
            -self.log_coeff,
            self.log_slot,
        )

    def __sub__(self, other: LogSeries) -> LogSeries:
        return self + (-other)

    def scale(self, c: Coefficient) -> LogSeries:
        c = _as_bipoly(c)
        return LogSeries(
            self.truncation_order,
            tuple(c * a for a in self.even_coeffs),
            c * self.log_coeff,
            self.log_slot,
        )

    def is_zero(self) -> bool:
        return self.log_coeff.is_zero() and all(a.is_zero() for a in self.even_coeffs)

    def __getitem__(self, j: int) -> BiPoly:
        return self.even_coeffs[j]


def euler_apply(s: LogSeries) -> LogSeries:
    """Apply ``r d/dr`` termwise.

    ``r^(2j) -> 2j r^(2j)`` and ``r^(2j) log r -> 2j r^(2j) log r + r^(2j)``.
    """
    coeffs = [2 * j * a for j, a in enumerate(s.even_coeffs)]
    if s.log_slot <= s.truncation_order:
        coeffs[s.log_slot] = coeffs[s.log_slot] + s.log_coeff
    return LogSeries(s.truncation_order, tuple(coeffs), 2 * s.log_slot * s.log_coeff, s.log_slot)


def series_scale_poly(s: LogSeries, factor: RSquaredPoly) -> LogSeries:
    """Multiply ``s`` by the polynomial ``sum_i factor[i] r^(2i)``, truncated.

    Products landing beyond the truncation order are dropped.  A log term
    shifted to another order that is still inside the truncation would need a
    second log slot; that is not representable and raises ConsistencyError.
    """
    f = [_as_bipoly(c) for c in factor]
    n = s.truncation_order
    coeffs = []
    for j in range(n + 1):
        acc = BiPoly.zero()
        for i in range(min(j, len(f) - 1) + 1):
            acc = acc + f[i] * s.even_coeffs[j - i]
        coeffs.append(acc)
    log = f[0] * s.log_coeff if f else BiPoly.zero()
    if not s.log_coeff.is_zero():
        for i in range(1, len(f)):
            if s.log_slot + i <= n and not (f[i] * s.log_coeff).is_zero():
                raise ConsistencyError(
                    f"log term shifted to r^{2 * (s.log_slot + i)} log r inside truncation order {n}"
                )
    return LogSeries(n, tuple(coeffs), log, s.log_slot)


def euler_poly(factor: RSquaredPoly) -> list[BiPoly]:
    """``r d/dr`` of a polynomial in ``r^2``."""
    return [2 * i * _as_bipoly(c) for i, c in enumerate(factor)]

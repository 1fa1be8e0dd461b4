"""Exact rational scalars, combinatorial constants and the ring Q[x, lambda].

Scalars are :class:`fractions.Fraction` (arbitrary precision, always reduced
with a positive denominator).  :class:`BiPoly` is a sparse bivariate
polynomial whose first indeterminate ``x`` stands for the Jacobi operator and
whose second stands for the Einstein parameter ``lambda``.
"""
from __future__ import annotations

import math
from fractions import Fraction
from numbers import Rational as _RationalABC
from typing import Iterable, Iterator, Mapping, Tuple, Union

from .errors import DomainError

Rational = Fraction
Scalar = Union[int, Fraction]
Monomial = Tuple[int, int]


def _to_fraction(value: Scalar) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, _RationalABC):
        return Fraction(value.numerator, value.denominator)
    raise TypeError(f"expected an exact rational, got {type(value).__name__}")


def c_constant(k: int) -> Fraction:
    """Return ``c_k = (-1)^k / (2^(2k) (k-1)! k!)``.

    >>> c_constant(1), c_constant(2), c_constant(3)
    (Fraction(-1, 4), Fraction(1, 32), Fraction(-1, 768))
    """
    if not isinstance(k, int) or k < 1:
        raise DomainError(f"c_k is defined for integers k >= 1, got {k!r}")
    denom = 4**k * math.factorial(k - 1) * math.factorial(k)
    return Fraction((-1) ** k, denom)


def binomial(n: int, r: int) -> int:
    """Binomial coefficient with the combinatorial convention: 0 unless 0 <= r <= n."""
    if r < 0 or r > n:
        return 0
    return math.comb(n, r)


class BiPoly:
    """Polynomial in ``x`` and ``lambda`` with exact rational coefficients.

    Stored sparsely as ``{(a, b): coeff}`` for the monomial ``x^a lambda^b``;
    zero coefficients are never stored.  Instances are immutable and hashable.
    """

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[Monomial, Scalar] | Iterable[Tuple[Monomial, Scalar]] = ()):
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict[Monomial, Fraction] = {}
        for (a, b), c in items:
            if a < 0 or b < 0:
                raise ValueError(f"negative exponent in monomial {(a, b)}")
            acc[(a, b)] = acc.get((a, b), Fraction(0)) + _to_fraction(c)
        self._terms = {m: c for m, c in sorted(acc.items()) if c != 0}
        self._hash = None

    # constructors
    @classmethod
    def const(cls, c: Scalar) -> BiPoly:
        return cls({(0, 0): c})

    @classmethod
    def x(cls) -> BiPoly:
        return cls({(1, 0): 1})

    @classmethod
    def lam(cls) -> BiPoly:
        return cls({(0, 1): 1})

    @classmethod
    def zero(cls) -> BiPoly:
        return cls()

    @classmethod
    def one(cls) -> BiPoly:
        return cls({(0, 0): 1})

    # container protocol
    @property
    def terms(self) -> dict[Monomial, Fraction]:
        """Copy of the monomial -> coefficient map, in sorted monomial order."""
        return dict(self._terms)

    def coeff(self, a: int, b: int) -> Fraction:
        return self._terms.get((a, b), Fraction(0))

    def __iter__(self) -> Iterator[Tuple[Monomial, Fraction]]:
        return iter(self._terms.items())

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    # ring operations
    def _coerce(self, other) -> BiPoly:
        if isinstance(other, BiPoly):
            return other
        if isinstance(other, _RationalABC):
            return BiPoly.const(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        acc = dict(self._terms)
        for m, c in other._terms.items():
            acc[m] = acc.get(m, Fraction(0)) + c
        return BiPoly(acc)

    __radd__ = __add__

    def __neg__(self) -> BiPoly:
        return BiPoly({m: -c for m, c in self._terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other - self

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        acc: dict[Monomial, Fraction] = {}
        for (a1, b1), c1 in self._terms.items():
            for (a2, b2), c2 in other._terms.items():
                m = (a1 + a2, b1 + b2)
                acc[m] = acc.get(m, Fraction(0)) + c1 * c2
        return BiPoly(acc)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if not isinstance(other, _RationalABC):
            return NotImplemented
        d = _to_fraction(other)
        if d == 0:
            raise ZeroDivisionError("BiPoly division by zero")
        return BiPoly({m: c / d for m, c in self._terms.items()})

    def __pow__(self, n: int) -> BiPoly:
        if not isinstance(n, int) or n < 0:
            raise ValueError("BiPoly powers must be non-negative integers")
        result, base = BiPoly.one(), self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other) -> bool:
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(tuple(self._terms.items()))
        return self._hash

    # structure
    def total_degrees(self) -> set[int]:
        return {a + b for a, b in self._terms}

    def is_homogeneous(self, degree: int) -> bool:
        """True when every monomial has total degree ``degree`` (vacuous for 0)."""
        return all(a + b == degree for a, b in self._terms)

    def __repr__(self) -> str:
        return f"BiPoly({self._terms!r})"

    def __str__(self) -> str:
        return format_bipoly(self)


def poly_eval(p: BiPoly, x_val: Scalar, lambda_val: Scalar) -> Fraction:
    """Substitute ``x = x_val`` and ``lambda = lambda_val`` exactly."""
    xv, lv = _to_fraction(x_val), _to_fraction(lambda_val)
    total = Fraction(0)
    for (a, b), c in p:
        total += c * xv**a * lv**b
    return total


def format_rational(q: Scalar) -> str:
    q = _to_fraction(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def _format_monomial(a: int, b: int) -> str:
    parts = []
    if a:
        parts.append("x" if a == 1 else f"x^{a}")
    if b:
        parts.append("lambda" if b == 1 else f"lambda^{b}")
    return "*".join(parts)


def format_bipoly(p: BiPoly) -> str:
    """Human readable form, highest power of ``x`` first, e.g. ``-1/16*x^2 - 1/4*x*lambda``."""
    if p.is_zero():
        return "0"
    out = []
    for (a, b), c in sorted(p, key=lambda t: (-t[0][0], t[0][1])):
        mono = _format_monomial(a, b)
        mag = abs(c)
        if mono and mag == 1:
            body = mono
        elif mono:
            body = f"{format_rational(mag)}*{mono}"
        else:
            body = format_rational(mag)
        if not out:
            out.append(body if c > 0 else f"-{body}")
        else:
            out.append(f"+ {body}" if c > 0 else f"- {body}")
    return " ".join(out)

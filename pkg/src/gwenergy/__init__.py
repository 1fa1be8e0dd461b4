"""Exact toolkit for the Graham-Witten energy of minimal submanifolds.

Submodules:

- ``exactmath``: rationals, ``c_k``, binomials, the ring ``Q[x, lambda]``
- ``series``: truncated even series in ``r`` with one ``log r`` slot
- ``renorm``: area expansion, energy, and a least-squares numeric cross-check
- ``jacobi_bvp``: formal solution of the Jacobi boundary value problem
- ``spectra``: second-variation spectra at spheres and Clifford hypersurfaces
- ``cli``: the ``gwenergy`` command
"""
from .errors import ConsistencyError, DomainError, FitError
from .exactmath import BiPoly, binomial, c_constant, poly_eval
from .jacobi_bvp import closed_form_pk, formal_solve, mathcalJ_factors
from .renorm import expansion_coefficients, first_variation_constant, gw_energy, numeric_extract

__all__ = [
    "BiPoly",
    "ConsistencyError",
    "DomainError",
    "FitError",
    "binomial",
    "c_constant",
    "closed_form_pk",
    "expansion_coefficients",
    "first_variation_constant",
    "formal_solve",
    "gw_energy",
    "mathcalJ_factors",
    "numeric_extract",
    "poly_eval",
]

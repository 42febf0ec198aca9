"""Exact graded commutative algebra for generalized divisors and biliaison."""

from __future__ import annotations

from .ring import GF, QQ, PolyRing, Polynomial, PrimeField, RationalField
from .groebner import (
    Ideal,
    ImproperIdealError,
    codimension,
    eliminate,
    groebner_basis,
    ideal_quotient,
    intersect,
    is_nonzerodivisor,
    normal_form,
    parse_ideal,
    saturation,
)

__version__ = "0.1.0"

"""Exact polynomial arithmetic, Groebner bases and ideal operations."""

from .field import QQ, FieldSpec
from .groebner import GroebnerBasis
from .ideal import (
    INFINITE,
    Ideal,
    contains_power_of_irrelevant,
    groebner_basis,
    hilbert_function,
    hilbert_function_values,
    ideal_colon,
    ideal_intersection,
    ideal_power,
    ideal_product,
    ideal_sum,
    irrelevant_ideal,
    is_finite,
    krull_dimension,
    normal_form,
    saturation,
    standard_monomials,
    vector_space_length,
)
from .parse import PolynomialSyntaxError, parse_polynomial
from .poly import MINUS_INFINITY, Monomial, PolyRing, Polynomial

__all__ = [
    "QQ",
    "FieldSpec",
    "GroebnerBasis",
    "INFINITE",
    "Ideal",
    "MINUS_INFINITY",
    "Monomial",
    "PolyRing",
    "Polynomial",
    "PolynomialSyntaxError",
    "contains_power_of_irrelevant",
    "groebner_basis",
    "hilbert_function",
    "hilbert_function_values",
    "ideal_colon",
    "ideal_intersection",
    "ideal_power",
    "ideal_product",
    "ideal_sum",
    "irrelevant_ideal",
    "is_finite",
    "krull_dimension",
    "normal_form",
    "parse_polynomial",
    "saturation",
    "standard_monomials",
    "vector_space_length",
]

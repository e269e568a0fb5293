"""Exact vertex-superalgebra engine with Zhu-algebra machinery."""

from .scalar import (
    Scalar,
    FormalSeries,
    declare_parameter,
    parameter_names,
    bernoulli_plus,
    fn_coeff,
    u_coefficients,
    parse_scalar,
)

__all__ = [
    "Scalar",
    "FormalSeries",
    "declare_parameter",
    "parameter_names",
    "bernoulli_plus",
    "fn_coeff",
    "u_coefficients",
    "parse_scalar",
]

"""Exact arithmetic kernel."""

from .fields import (QQ, QQ_I, QQ_XI3, FieldScalar, NumberField, Rational,
                     cyclotomic_field, quadratic_field, root_of_unity)
from .poly import INFINITY, NEG_INFINITY, Infinite, MultiPoly, is_squarefree, poly_gcd, resultant, valuation, x_y
from .binary import BinaryForm, field_roots, linear_factors, normalize_point, point_of_linear
from .ratfunc import JetSeries, RatFunc, taylor_jet

__all__ = [
    "QQ", "QQ_I", "QQ_XI3", "FieldScalar", "NumberField", "Rational",
    "cyclotomic_field", "quadratic_field", "root_of_unity",
    "INFINITY", "NEG_INFINITY", "Infinite", "MultiPoly", "is_squarefree", "poly_gcd",
    "resultant", "valuation", "x_y",
    "BinaryForm", "field_roots", "linear_factors", "normalize_point", "point_of_linear",
    "JetSeries", "RatFunc", "taylor_jet",
]

"""Exact arithmetic over the rationals: polynomials, gcds, resultants, Groebner bases."""

from .gcd import divide_exact, divides, poly_gcd, poly_gcd_many, poly_lcm, squarefree_part, strip_factors
from .groebner import Ideal, groebner_basis, ideal_is_trivial, normal_form, standard_monomials
from .poly import Poly, parse_poly, poly_eval
from .ratfun import RatFun, ratfun_compose
from .resultant import resultant, sylvester_matrix
from .scalar import format_scalar, parse_scalar, scalar

__all__ = [
    "Poly", "RatFun", "Ideal", "parse_poly", "poly_eval", "poly_gcd", "poly_gcd_many", "poly_lcm",
    "divide_exact", "divides", "squarefree_part", "strip_factors", "resultant", "sylvester_matrix",
    "groebner_basis", "ideal_is_trivial", "normal_form", "standard_monomials", "ratfun_compose",
    "scalar", "parse_scalar", "format_scalar",
]

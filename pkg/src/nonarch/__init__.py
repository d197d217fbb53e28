"""Exact non-Archimedean value distribution over Q with a p-adic absolute value,
plus per-radius checkers for estimates on rational solutions of functional
equations.

All logarithms are base p, so every quantity is an exact ``Fraction``.
"""
from .algebra import AffineMap, DiffPoly, OperatorSpec, UniPoly
from .checkers import CheckReport, Verdict
from .dsl import parse, parse_diffpoly, parse_poly, parse_ratfunc, to_text
from .nevanlinna import N_hat, T_hat, characteristic_table, jensen_defect, m_hat, parse_ladder
from .ratfunc import RatFunc, mu_hat_rat
from .scalar import BOTTOM, Prime, valuation
from .series import NewtonPolygon, TruncatedSeries, ValuedPoly, mu_hat, newton_polygon, zero_log_radii

__all__ = [
    "AffineMap", "BOTTOM", "CheckReport", "DiffPoly", "N_hat", "NewtonPolygon", "OperatorSpec",
    "Prime", "RatFunc", "T_hat", "TruncatedSeries", "UniPoly", "ValuedPoly", "Verdict",
    "characteristic_table", "jensen_defect", "m_hat", "mu_hat", "mu_hat_rat", "newton_polygon",
    "parse", "parse_diffpoly", "parse_ladder", "parse_poly", "parse_ratfunc", "to_text",
    "valuation", "zero_log_radii",
]

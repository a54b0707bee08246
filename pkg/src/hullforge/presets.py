"""Canonical example inputs: the symbol whose torus graph has a fat hull.

The default symbol p = 1 - 4z^2 + 4w^2 - z^2 w^2 satisfies
(zw)^2 * reflect(p) + p = 0 identically, its hull-criterion determinant
factors as unit * (z - iw) * (z + iw) * p, and its zero set meets the
bidisc in the double cover w^2 = (4z^2 - 1) / (4 - z^2).
"""

from __future__ import annotations

from .laurent import LaurentPoly2, parse

DEFAULT_SYMBOL_EXPR = "1 - 4*z^2 + 4*w^2 - z^2*w^2"
DEFAULT_UNIT_EXPR = "-16*z^-3*w^-3"
DEFAULT_FACTOR_EXPRS = ("z - i*w", "z + i*w", DEFAULT_SYMBOL_EXPR)
DEFAULT_RATIO_EXPR = "(4*z^2 - 1)/(4 - z^2)"


def default_symbol() -> LaurentPoly2:
    return parse(DEFAULT_SYMBOL_EXPR)


def default_unit() -> LaurentPoly2:
    return parse(DEFAULT_UNIT_EXPR)


def default_factors() -> tuple:
    return tuple(parse(expr) for expr in DEFAULT_FACTOR_EXPRS)

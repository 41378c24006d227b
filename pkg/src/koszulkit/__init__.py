"""Hilbert-series obstructions, monomial certificates and truncated free
resolutions for standard graded algebras."""

__version__ = "0.1.0"

from .errors import KoszulkitError
from .hilbert import AlgebraNumerics, segre_numerics, tensor_numerics, user_numerics, veronese_numerics
from .obstruction import br_obstruction, family_scan
from .series import IntPolynomial, TruncatedSeries, expand_rational_series, factor_out_neg_one

__all__ = [
    "__version__",
    "KoszulkitError",
    "AlgebraNumerics",
    "IntPolynomial",
    "TruncatedSeries",
    "br_obstruction",
    "expand_rational_series",
    "factor_out_neg_one",
    "family_scan",
    "segre_numerics",
    "tensor_numerics",
    "user_numerics",
    "veronese_numerics",
]

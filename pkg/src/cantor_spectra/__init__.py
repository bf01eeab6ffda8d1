"""Spectra of Cantor measures with consecutive digits.

Subpackages
-----------
numtheory
    Signed ``b``-adic expansions, ``q``-adic words and the zero set.
fourier
    The infinite-product transform with certified truncation.
treemap
    Tree labelings and the frequency sets they generate.
certify
    Orthogonality, ``Q`` sums, growth criteria and verdicts.
"""
from . import certify, fourier, numtheory, treemap
from .errors import (CanonicalFormError, CantorSpectraError, DomainError, ParameterError,
                     RefinementNeeded, ResourceError, SchemaError, TruncationInfeasible,
                     UnsupportedParameters, ValidationFailure)
from .numtheory import MeasureParams

__version__ = "0.1.0"

__all__ = [
    "CanonicalFormError", "CantorSpectraError", "DomainError", "MeasureParams", "ParameterError",
    "RefinementNeeded", "ResourceError", "SchemaError", "TruncationInfeasible",
    "UnsupportedParameters", "ValidationFailure", "certify", "fourier", "numtheory", "treemap",
]

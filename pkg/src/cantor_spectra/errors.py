"""Exception hierarchy shared by every module."""


class CantorSpectraError(Exception):
    """Base class for all package errors."""


class ParameterError(CantorSpectraError, ValueError):
    """Invalid measure parameters or construction arguments."""


class DomainError(CantorSpectraError, ValueError):
    """Argument outside the domain of an operation."""


class CanonicalFormError(CantorSpectraError, ValueError):
    """A word or digit string is not in canonical form."""


class UnsupportedParameters(CantorSpectraError, ValueError):
    """The operation needs q | b but the parameters do not satisfy it."""


class TruncationInfeasible(CantorSpectraError, ValueError):
    """The requested product depth cannot certify the neglected tail."""


class RefinementNeeded(CantorSpectraError, ValueError):
    """A grid is too coarse to certify the requested bound."""


class ResourceError(CantorSpectraError, RuntimeError):
    """A configured size budget would be exceeded."""


class SchemaError(CantorSpectraError, ValueError):
    """Malformed mapping-spec JSON.

    Parameters
    ----------
    message : str
        Human readable description.
    path : str, optional
        Location inside the document, e.g. ``overrides[2].word``.
    """

    def __init__(self, message: str, path: str = ""):
        self.path = path
        super().__init__(f"{path}: {message}" if path else message)


class ValidationFailure(CantorSpectraError, ValueError):
    """A mapping failed a structural or orthogonality check.

    Attributes
    ----------
    pair : tuple of int or None
        Witness pair ``(lambda_i, lambda_j)`` whose scaled difference is
        not a zero of the transform.
    violations : list
        Node-level violations from :func:`cantor_spectra.treemap.validate`.
    """

    def __init__(self, message: str, pair=None, violations=()):
        self.pair = pair
        self.violations = list(violations)
        super().__init__(message)

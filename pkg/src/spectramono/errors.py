"""Exception hierarchy shared by all spectramono modules."""


class SpectramonoError(Exception):
    """Base class for every error raised by this package."""


class InputError(SpectramonoError):
    """Malformed or out-of-domain arguments (bad scalars, shapes, documents)."""


class ModeMixError(InputError):
    """Exact and approximate values combined in one operation."""


class InvariantError(SpectramonoError):
    """A structural invariant failed (non-Hermitian matrix, unequal selector moduli)."""


class NotTwoMonomorphicError(SpectramonoError):
    """Operation requires labels of one common nonzero modulus and the input has none.

    Carries the offending detail in args[0].
    """


class ExactnessError(SpectramonoError):
    """The requested result exists over the complex numbers but has no
    representation with rational components (for example a normalized form
    whose labels need a square root)."""


class ReductionError(SpectramonoError):
    """Canonical label reduction failed.

    Attributes:
        reason: short machine-readable tag
        detail: human-readable explanation
        pair: offending vertex pair when one exists, else None
    """

    def __init__(self, reason, detail, pair=None):
        super().__init__(detail)
        self.reason = reason
        self.detail = detail
        self.pair = pair


class TheoremRangeError(SpectramonoError):
    """Classification was requested outside the range where the
    characterization theorems apply."""

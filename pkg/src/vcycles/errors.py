"""Exception hierarchy shared by all modules."""


class VcyclesError(Exception):
    """Base class for all library errors."""


class RingMismatchError(VcyclesError):
    """Operands live in different rings (field or variable list differ)."""


class ZeroPolynomialError(VcyclesError):
    """An operation that needs a nonzero polynomial got the zero polynomial."""


class ParseError(VcyclesError):
    """Malformed polynomial text or problem file."""


class SingularMatrixError(VcyclesError):
    """A coordinate change requires an invertible matrix."""


class NonHomogeneousError(VcyclesError):
    """A projective computation received a non-homogeneous generator."""


class GenericityError(VcyclesError):
    """Random draws failed an a-posteriori genericity check after the retry budget."""


class NonDominantError(VcyclesError):
    """The residual cycle became empty before the last step: the map is not
    dominant and generically finite, violating the input promise."""

    def __init__(self, message, step=None):
        super().__init__(message)
        self.step = step


class DisagreementError(VcyclesError):
    """Independent verification runs produced different values."""


class StabilizationError(VcyclesError):
    """An iteration cap was exceeded before a value stabilized (diagnostic)."""


class CapTooSmallError(VcyclesError):
    """The degree cap ended the scan while the quotient was still shrinking."""

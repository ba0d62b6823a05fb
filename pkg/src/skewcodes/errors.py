"""Shared exception types."""


class MixedStructureError(ValueError):
    """Operands belong to different fields, algebras or contexts."""


class AxiomError(ValueError):
    """A claimed algebraic structure fails one of its axioms.

    The message names the first failing instance.
    """


class RingUnavailableError(ValueError):
    """The requested ring does not exist for this context.

    Raised when a series ring is requested with a non-nilpotent delta, or a
    Laurent ring without (sigma invertible, delta and delta' nilpotent).
    """


class PrecisionError(ValueError):
    """An operand does not carry enough coefficients for the request."""

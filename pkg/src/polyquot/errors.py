"""Exception hierarchy shared by all modules.

Every error raised on bad input derives from :class:`PolyquotError`, which is
itself a ``ValueError``; the command line front end maps these to exit code 2.
"""


class PolyquotError(ValueError):
    """Base class for input errors."""

    kind = "error"


class EmptySetError(PolyquotError):
    kind = "EmptySet"


class SchemaError(PolyquotError):
    kind = "SchemaError"


class ValidationError(PolyquotError):
    kind = "ValidationError"


class UnknownName(PolyquotError):
    kind = "UnknownName"


class BadParameter(PolyquotError):
    kind = "BadParameter"


class LengthMismatch(PolyquotError):
    kind = "LengthMismatch"


class DimensionMismatch(PolyquotError):
    kind = "DimensionMismatch"


class ZeroInvolution(PolyquotError):
    kind = "ZeroInvolution"


class ZeroColumn(PolyquotError):
    kind = "ZeroColumn"


class NotHamiltonian(PolyquotError):
    kind = "NotHamiltonian"


class NotSpanning(PolyquotError):
    kind = "NotSpanning"


class NotSubgraph(PolyquotError):
    kind = "NotSubgraph"


class ImproperSubgraph(PolyquotError):
    kind = "ImproperSubgraph"


class FaceTreeViolation(PolyquotError):
    kind = "FaceTreeViolation"


class EmptyFace(PolyquotError):
    kind = "EmptyFace"


class NotDecidableWarning(UserWarning):
    """Emitted when a question lies outside what the toolkit can certify."""

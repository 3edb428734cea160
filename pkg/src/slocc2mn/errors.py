class SloccError(Exception):
    """Base class for all library errors."""


class Singular(SloccError):
    pass


class MalformedInput(SloccError):
    pass


class DimensionMismatch(MalformedInput):
    pass


class EigenvalueOutsideField(SloccError):
    """A characteristic polynomial does not split over Q(i)."""


class UnsupportedStructure(SloccError):
    """The reduction reached a configuration it cannot normalize.

    Never expected for trimmed inputs; seeing it means a bug.
    """


class DimensionOutOfRange(SloccError):
    pass


class ConstraintViolation(SloccError):
    pass

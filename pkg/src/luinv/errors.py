"""Exception hierarchy shared by all modules."""


class LUError(Exception):
    """Base class for every error raised by luinv."""


class NotSquare(LUError, ValueError):
    pass


class NotHermitian(LUError, ValueError):
    pass


class NonRealTrace(LUError, ValueError):
    pass


class DimensionMismatch(LUError, ValueError):
    pass


class NotUnitary(LUError, ValueError):
    pass


class InvalidState(LUError, ValueError):
    """A state violates normalization, hermiticity or positivity."""


class WrongArity(LUError, ValueError):
    """Operation needs a different number of subsystems."""


class BadLabel(LUError, ValueError):
    pass


class BadSubset(LUError, ValueError):
    pass


class BadCut(LUError, ValueError):
    pass


class DimensionOrder(LUError, ValueError):
    """First subsystem is larger than one of the others."""


class FamilyMismatch(LUError, ValueError):
    pass


class ShapeMismatch(LUError, ValueError):
    pass


class BadSpec(LUError, ValueError):
    """Invalid zoo family specification."""


class BadDimensionParity(BadSpec):
    pass


class BadWeightCount(BadSpec):
    pass


class NonOrthogonalBranches(BadSpec):
    pass


class ParseError(LUError, ValueError):
    """A state file could not be read."""

"""Exception types raised across the package."""


class OreSmoothError(Exception):
    """Base class for every error raised by oresmooth."""


class IncompatibleBaseRing(OreSmoothError):
    """A substitution or operand leaves the base ring it was asked to stay in."""


class SpecMismatch(OreSmoothError):
    """Operands belong to different algebras."""


class NonInvertibleImage(OreSmoothError):
    """An algebra map needs the image of x to be a unit but it is not."""


class NotAdmissibleSpec(OreSmoothError):
    """The automorphisms required by the calculus do not exist for this algebra."""


class NoPreimage(OreSmoothError):
    """Internal consistency failure: the divergence could not be inverted."""


class ParseError(OreSmoothError):
    def __init__(self, message, line=1, column=1):
        super().__init__(f"{line}:{column}: {message}")
        self.message = message
        self.line = line
        self.column = column

class EntropicError(ValueError):
    """Base class of every error raised on purpose by entropicpy."""


class InvalidInputError(EntropicError):
    """Input values are outside of their domain (non-finite, negative...)."""


class ShapeError(EntropicError):
    """Row or column counts of the inputs do not agree."""


class CapacityError(EntropicError):
    """A requested object is too large to be allocated."""


class InsufficientDataError(EntropicError):
    """There are not enough observations for the requested estimate."""


class DivergenceError(EntropicError):
    """A simulated trajectory left the finite numbers."""


class ParseError(EntropicError):
    """A data or model file could not be parsed."""

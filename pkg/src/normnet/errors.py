"""Exception hierarchy.

Every error raised on bad input derives from :class:`NormNetError`, so
callers (and the CLI) can catch one type. Subclasses also derive from
``ValueError``/``KeyError`` where that is the natural builtin.
"""


class NormNetError(Exception):
    """Base class for all errors raised by this package."""


class ValidationError(NormNetError, ValueError):
    """A norm net, assignment or configuration breaks a structural rule.

    ``ids`` names the offending norm ids (or pair), when applicable.
    """

    def __init__(self, message="", ids=()):
        self.ids = tuple(ids)
        super().__init__(message)


# norm net construction
class DuplicateId(ValidationError):
    pass


class UnknownEndpoint(ValidationError):
    pass


class SelfRelation(ValidationError):
    pass


class OverlappingRelationSets(ValidationError):
    pass


class GeneralisationCycle(ValidationError):
    pass


class MultipleParents(ValidationError):
    pass


class NegativeCost(ValidationError):
    pass


class IdCollision(ValidationError):
    pass


class UnknownId(NormNetError, KeyError):
    def __str__(self):
        # KeyError repr-quotes its argument; keep plain messages
        return str(self.args[0]) if self.args else ""


# representation power
class MissingEntry(ValidationError):
    pass


class NonPositivePower(ValidationError):
    pass


class AncestorMonotonicityViolation(ValidationError):
    def __init__(self, norm, ancestor, message=None):
        self.pair = (norm, ancestor)
        super().__init__(
            message
            or f"power({norm}) exceeds power of its ancestor {ancestor}",
            ids=self.pair,
        )


# values
class EmptyOrder(ValidationError):
    pass


class DuplicateValueId(ValidationError):
    pass


class NormWithoutValues(ValidationError):
    pass


class UnknownValueId(ValidationError):
    pass


# encoding
class ConfigInvariantViolation(ValidationError):
    pass


class MissingRepresentation(ValidationError):
    pass


class ZeroRMax(ValidationError):
    pass


class ZeroVMax(ValidationError):
    pass


# solving
class NonBinaryVariable(NormNetError, ValueError):
    pass


class TooLarge(NormNetError, ValueError):
    pass


# io
class ParseError(NormNetError, ValueError):
    """Input document could not be turned into a norm net.

    ``path`` is a JSON-pointer-like location (``$.norms[2].cost``) and
    ``cause`` the underlying validation error, when there is one.
    """

    def __init__(self, message, path="$", cause=None):
        self.path = path
        self.cause = cause
        super().__init__(f"{path}: {message}")


class MalformedJson(ParseError):
    pass


class SchemaViolation(ParseError):
    pass


class InvalidParams(ValidationError):
    pass

"""Exception hierarchy shared by every sylowkit module."""


class SylowKitError(Exception):
    """Base class for all errors raised by sylowkit."""


class PreconditionError(SylowKitError, ValueError):
    """An operation was called with arguments outside its contract."""


class ResourceLimit(SylowKitError):
    """A configured enumeration or evaluation budget was exceeded."""


class InternalInconsistency(SylowKitError):
    """A mathematically impossible state was reached.

    These are red-flag errors: they mean either a bug or a broken invariant,
    never bad user input.
    """


# group core / sylow / escalation

class NotNormal(PreconditionError):
    pass


class NotPGroup(PreconditionError):
    pass


class NotSylow(PreconditionError):
    pass


class NotTwoGroup(InternalInconsistency):
    pass


class DichotomyFailure(InternalInconsistency):
    pass


# folang

class FormulaSyntaxError(SylowKitError, SyntaxError):
    """Parse error carrying the character offset of the failure."""

    def __init__(self, message: str, position: int, text: str = ""):
        super().__init__(f"{message} at position {position}")
        self.position = position
        self.text = text


class UnboundVariable(PreconditionError):
    pass


# exact arithmetic / p-adics / Platonov

class SingularMatrix(PreconditionError, ZeroDivisionError):
    pass


class NotUnimodular(PreconditionError):
    pass


class NotInvolution(PreconditionError):
    pass


class NotPrime(PreconditionError):
    pass


class ParityViolation(InternalInconsistency):
    pass


class BadPrime(PreconditionError):
    pass


class SamePrime(PreconditionError):
    pass

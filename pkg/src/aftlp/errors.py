"""Exception hierarchy shared by the lattice, fixpoint and program layers."""

from __future__ import annotations


class AftError(Exception):
    """Base class for every error raised by this package."""


class DomainError(AftError, ValueError):
    """An argument lies outside the domain of the operation."""


class EmptyIntervalError(DomainError):
    pass


class InconsistentPairError(DomainError):
    pass


class MonotonicityError(AftError):
    """A Kleene iteration left its sublattice or failed to ascend.

    This only happens when the operator handed to ``lfp`` is not
    order-preserving on the region it is iterated over.
    """


class PreconditionError(AftError, ValueError):
    pass


class InvariantError(AftError, RuntimeError):
    """Internal invariant violated; should be unreachable."""


class ResourceCapError(AftError):
    """A configured enumeration cap would be exceeded."""

    def __init__(self, message: str, cap: int, needed: int | None = None):
        super().__init__(message)
        self.cap = cap
        self.needed = needed


class ProgramSyntaxError(AftError, ValueError):
    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"{line}:{column}: {message}")
        self.line = line
        self.column = column

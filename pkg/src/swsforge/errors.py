"""Exception types shared across the toolchain."""

from __future__ import annotations


class SwsforgeError(Exception):
    """Base class for every error raised by this package."""


class DocumentSyntaxError(SwsforgeError):
    """Malformed input document (JSON structure, condition text, stub registry)."""

    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        if line is not None:
            message = f"{message} (line {line}, column {column})"
        super().__init__(message)
        self.line = line
        self.column = column


class UnresolvedReference(SwsforgeError):
    """A name reference does not resolve to a declared entity."""


class DuplicateName(SwsforgeError):
    """Two sibling entities share a name that must be unique."""


class InvalidModel(SwsforgeError):
    """An operation required a clean model but validation found violations."""

    def __init__(self, message: str, violations: tuple = ()):
        if violations:
            details = "; ".join(f"{v.code} {v.path}" for v in violations)
            message = f"{message}: {details}"
        super().__init__(message)
        self.violations = tuple(violations)


class UnknownService(SwsforgeError):
    """A service name does not resolve in the model."""


class NotComposite(SwsforgeError):
    """A composite-only operation was applied to an atomic service."""


class CompositionCycle(SwsforgeError):
    """Composite component references form a cycle."""


class XmlSyntaxError(SwsforgeError):
    """Input bytes are not well-formed XML."""


class MissingNamespace(SwsforgeError):
    """An XML document lacks the required root namespace."""


class UnsupportedFeature(SwsforgeError):
    """A document uses a construct outside the supported subset."""

    def __init__(self, message: str, feature: str | None = None):
        super().__init__(message)
        self.feature = feature


class InvariantViolation(SwsforgeError):
    """A structural invariant of an in-memory tree does not hold."""


class AmbiguousReverse(SwsforgeError):
    """A description construct has no home in the service model."""

    def __init__(self, message: str, node: str | None = None):
        super().__init__(message)
        self.node = node


class UnstructuredGraph(SwsforgeError):
    """A behavior graph cannot be decomposed into well-nested regions."""

    def __init__(self, message: str, entry_node: str | None = None):
        if entry_node is not None:
            message = f"{message} (region entry: {entry_node})"
        super().__init__(message)
        self.entry_node = entry_node


class MissingStub(SwsforgeError):
    """The stub registry has no entry for an invoked operation."""


class TypeMismatch(SwsforgeError):
    """A runtime value does not fit the operation applied to it."""


class NoMatchingExclusiveBranch(SwsforgeError):
    """No branch of an exclusive choice matched and no default exists."""

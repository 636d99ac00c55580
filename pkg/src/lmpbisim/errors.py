"""Exception hierarchy shared by all engine modules.

Domain errors derive from LmpError so the CLI can map them uniformly to
exit code 1; everything else (bugs) propagates as-is.
"""


class LmpError(Exception):
    """Base class for all domain errors raised by the engine."""


class SetNotMeasurable(LmpError):
    """A state set is not a union of atoms of the relevant algebra."""


class CarrierOverlap(LmpError):
    """Direct-sum components share states."""


class NotSymmetric(LmpError):
    """A relation that must be symmetric is not."""


class NotSubAlgebra(LmpError):
    """An algebra is not included in the ambient one."""


class UnknownLabel(LmpError):
    """A formula mentions a label the process does not have."""


class CapacityExceeded(LmpError):
    """An enumeration would exceed the configured safety cap."""


class TooLarge(LmpError):
    """Input exceeds the size bound of a brute-force oracle."""


class FormulaSyntaxError(LmpError):
    """Concrete-syntax error in a modal formula.

    Carries the byte offset of the failure and the set of expected tokens.
    """

    def __init__(self, message, offset, expected=()):
        super().__init__(f"{message} at offset {offset}" +
                         (f" (expected one of: {', '.join(sorted(expected))})" if expected else ""))
        self.offset = offset
        self.expected = frozenset(expected)


class OrdinalSyntaxError(LmpError):
    """Concrete-syntax error in an ordinal literal."""

    def __init__(self, message, offset):
        super().__init__(f"{message} at offset {offset}")
        self.offset = offset


class NonCanonical(LmpError):
    """An ordinal term list violates Cantor normal form."""


class NotLimit(LmpError):
    """A limit ordinal was required."""


class OrdinalOutOfRange(LmpError):
    """An ordinal parameter is outside the supported range."""


class NotSuccessorZhou(LmpError):
    """The amalgam construction needs an inner process whose Zhou ordinal
    is a successor."""


class UnsupportedConfiguration(LmpError):
    """The symbolic engine met a kernel-shape/descriptor combination outside
    its derivation rules and refuses to guess."""


class FileFormatError(LmpError):
    """A process description file is malformed."""

"""Exception taxonomy.

Every error raised by this package derives from :class:`WittkitError`, so
callers can catch one type at an API boundary.  The CLI maps subclasses to
exit codes (usage/parse problems exit 64, everything else surfaces as a
normal Python traceback unless ``--json`` is given).
"""

from __future__ import annotations


class WittkitError(Exception):
    """Base class for all package errors."""


class ZeroElement(WittkitError):
    """A diagonal entry or scalar that must be nonzero is zero."""


class UnsupportedField(WittkitError):
    """The requested operation is not implemented over this field."""


class UnsupportedInput(WittkitError):
    """Input is structurally valid but outside the decidable/safe range
    (e.g. an integer whose square part cannot be factored within budget)."""


class FieldMismatch(WittkitError):
    """Two operands live over different fields."""


class Degenerate(WittkitError):
    """A quadratic form required to be nondegenerate has determinant zero."""


class NotSymmetric(WittkitError):
    """A Gram matrix is not symmetric."""


class InconsistentInvariants(WittkitError):
    """No quadratic form exists with the requested invariants."""


class SquareArgument(WittkitError):
    """An element required to be a non-square is a square."""


class NotSquareFree(WittkitError):
    """A polynomial required to be square-free has a repeated factor."""


class NonMonic(WittkitError):
    """A polynomial required to be monic is not."""


class ParseError(WittkitError):
    """A field spec or form expression failed to parse; the message names
    the offending position."""


class ZeroEntry(ParseError):
    """A form expression supplied a zero diagonal entry or Pfister slot."""


class UnknownVariable(ParseError):
    """A form expression used a variable the field tower does not declare."""


class UnknownSuite(WittkitError):
    """The requested verification suite id does not exist."""


class VacuousSuite(WittkitError):
    """A verification suite skipped so many instances it tested nothing."""

class UncertainPMError(Exception):
    """Base class for all errors raised by this package."""


class ValidationError(UncertainPMError, ValueError):
    """Raised when a log breaks one or more data-model invariants."""

    def __init__(self, violations):
        self.violations = list(violations)
        lines = [str(v) for v in self.violations[:10]]
        if len(self.violations) > 10:
            lines.append("... (%d more)" % (len(self.violations) - 10))
        super().__init__("invalid log:\n  " + "\n  ".join(lines))


class CapExceededError(UncertainPMError):
    """An exhaustive enumeration ran past one of its caps.

    ``cap_name`` says which limit was hit, ``partial_count`` how many items
    had been produced when the enumeration stopped. ``partial`` optionally
    carries a partial result (e.g. a lower conformance bound).
    """

    def __init__(self, cap_name, cap, partial_count, partial=None, context=None):
        self.cap_name = cap_name
        self.cap = cap
        self.partial_count = partial_count
        self.partial = partial
        self.context = context
        super().__init__(cap_name, cap, partial_count)

    def __str__(self):
        # context may be filled in by a caller higher up the stack
        msg = "%s=%d exceeded (%d produced before stopping)" % (self.cap_name, self.cap, self.partial_count)
        return "%s: %s" % (self.context, msg) if self.context else msg


class ShorthandSyntaxError(UncertainPMError, ValueError):
    def __init__(self, message, line, column):
        self.line = line
        self.column = column
        super().__init__("%s at line %d, column %d" % (message, line, column))


class SchemaError(UncertainPMError, ValueError):
    """Input document does not match the expected schema; ``path`` is a JSON path."""

    def __init__(self, message, path="$"):
        self.path = path
        super().__init__("%s: %s" % (path, message))


class NotEnabledError(UncertainPMError, ValueError):
    pass


class AlignmentError(UncertainPMError):
    """The final marking of the synchronous product is unreachable."""


class StrongUncertaintyError(UncertainPMError, ValueError):
    """A probability was requested for an attribute that carries none."""

"""Exception hierarchy shared by all pctsolve modules."""


class PctError(Exception):
    """Base class for all errors raised by pctsolve."""


class DomainError(PctError, ValueError):
    """Argument lies outside the mathematical domain of the operation."""


class PoleError(PctError, ZeroDivisionError):
    """Evaluation requested at (or numerically on top of) a pole."""


class RangeOverflowError(PctError, OverflowError):
    """Result exceeded the double-precision floating range."""


class ArgumentError(PctError, ValueError):
    """Structurally invalid argument (negative degree, level out of range, ...)."""


class ConfigError(PctError, ValueError):
    """Invalid configuration; message carries a field-path diagnostic."""


class GridMismatchError(PctError, ValueError):
    """Two grid functions defined on different grids were combined."""


class ExprSyntaxError(PctError, ValueError):
    """Syntax error in an expression string, with byte offset."""

    def __init__(self, message, offset, expected=()):
        super().__init__(f"{message} at offset {offset}")
        self.offset = offset
        self.expected = frozenset(expected)


class UnknownFunctionError(ExprSyntaxError):
    """Call to a function name the expression language does not define."""


class UnboundParameterError(PctError, KeyError):
    """Expression references a parameter missing from the parameter table."""

"""Exception hierarchy shared by all jetcover modules."""


class JetcoverError(Exception):
    """Base class for all errors raised by this package."""


class DivisionByZeroError(JetcoverError):
    """An exact field operation attempted to divide by zero.

    Carries the name of the offending operation so reports can name it.
    """

    def __init__(self, operation: str):
        self.operation = operation
        super().__init__(f"division by zero in operation {operation!r}")


class SubstitutionError(JetcoverError):
    """A substitution is malformed or makes a denominator vanish."""


class CyclicSubstitutionError(SubstitutionError):
    """A substitution image reintroduces one of the substituted symbols."""


class TruncationError(JetcoverError):
    """A computation needs a jet or fiber coordinate beyond the declared order.

    The missing coordinate name is kept so callers can report the exact
    order budget that was exceeded.
    """

    def __init__(self, missing: str, max_order: int):
        self.missing = missing
        self.max_order = max_order
        super().__init__(
            f"truncation overflow: coordinate {missing!r} lies beyond order {max_order}"
        )


class EquationError(JetcoverError):
    """An equation cannot be put in solved form, or reduction cannot terminate."""


class CoveringError(JetcoverError):
    """A covering declaration is incomplete or inconsistent."""


class BacklundError(JetcoverError):
    """A relation system is not of the supported (affine, first-order) shape."""


class ParseError(JetcoverError):
    """Problem-file syntax or declaration error, with source position."""

    def __init__(self, message: str, line: int, column: int = 0):
        self.line = line
        self.column = column
        super().__init__(f"line {line}, column {column}: {message}")

"""Exception hierarchy shared by every module and mapped to CLI exit codes."""


class OrbicurveError(Exception):
    """Base class for all library errors."""


class InputError(OrbicurveError, ValueError):
    """Malformed or out-of-domain input (exit code 1)."""


class ParseError(InputError):
    """Syntax error in a polynomial or rational-function text."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at position {position}")
        self.position = position


class PremiseError(OrbicurveError):
    """A stated precondition of a check does not hold (exit code 2)."""


class QuadratureError(OrbicurveError):
    """Numeric integration did not reach its tolerance (exit code 3)."""

    def __init__(self, message: str, achieved: float):
        super().__init__(f"{message} (achieved error estimate {achieved:.3g})")
        self.achieved = achieved

"""Exception hierarchy shared by the engine, the module code and the CLI."""


class B2Error(Exception):
    """Base class for every error raised by this package."""


class InvalidRootOfUnity(B2Error, ValueError):
    pass


class EngineError(B2Error):
    """An internal consistency check failed (signals a bug, never bad input)."""


class NoRuleError(EngineError):
    pass


class InexpandableDividedPower(B2Error):
    pass


class UnresolvedDivision(B2Error):
    pass


class DivisionError(B2Error):
    pass


class DegreeError(B2Error):
    """Raised for the zero element or an inhomogeneous element."""


class NotRestrictedError(B2Error):
    pass


class NotWeightVector(B2Error):
    pass


class InconsistentModule(EngineError):
    pass


class FormInconsistency(EngineError):
    pass


class NegativeMultiplicity(EngineError):
    pass


class ParseError(B2Error):
    def __init__(self, message, line=1, column=1):
        super().__init__(f"{message} at line {line}, column {column}")
        self.line = line
        self.column = column

class HopfCoradError(Exception):
    """Base class for library errors."""


class DimensionError(HopfCoradError, ValueError):
    pass


class FieldMismatchError(HopfCoradError, ValueError):
    pass


class StructureError(HopfCoradError, ValueError):
    """Malformed structure tables (wrong shapes, unknown labels)."""


class AxiomError(HopfCoradError, ValueError):
    def __init__(self, message: str, report=None):
        super().__init__(message)
        self.report = report


class WindowOverflowError(HopfCoradError, ArithmeticError):
    """A product would land above the window's maximal degree."""


class PreconditionError(HopfCoradError, ValueError):
    def __init__(self, message: str, witness=None):
        super().__init__(message)
        self.witness = witness


class ParseError(HopfCoradError, ValueError):
    def __init__(self, message: str, text: str = "", pos: int = 0):
        super().__init__(f"{message} at position {pos}")
        self.text = text
        self.pos = pos


class UnknownBuilderError(HopfCoradError, ValueError):
    pass

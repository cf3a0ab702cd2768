"""Exception hierarchy shared by every module."""


class PetriPolyError(Exception):
    """Base class for domain errors (mapped to exit status 1 by the CLI)."""


class Underflow(PetriPolyError):
    def __init__(self, symbol):
        super().__init__(f"count of {symbol!r} would become negative")
        self.symbol = symbol


class UnknownTransition(PetriPolyError):
    def __init__(self, name):
        super().__init__(f"unknown transition {name!r}")
        self.name = name


class UnknownRule(UnknownTransition):
    pass


class UnknownCell(UnknownTransition):
    pass


class NotEnabled(PetriPolyError):
    def __init__(self, name, missing):
        super().__init__(f"{name!r} is not enabled, missing {missing}")
        self.name = name
        self.missing = missing


class CapExceeded(PetriPolyError):
    def __init__(self, cap):
        super().__init__(f"equivalence class exceeds cap {cap}")
        self.cap = cap


class ParikhMismatch(PetriPolyError):
    pass


class HasOneCells(PetriPolyError):
    pass


class FuelExhausted(PetriPolyError):
    def __init__(self, fuel):
        super().__init__(f"normalization did not finish within {fuel} steps")
        self.fuel = fuel


class NotComposable(PetriPolyError):
    pass


class ParseError(PetriPolyError):
    def __init__(self, line, message):
        super().__init__(message if line is None else f"line {line}: {message}")
        self.line = line


class UndeclaredSymbol(ParseError):
    def __init__(self, line, name):
        super().__init__(line, f"undeclared symbol {name!r}")
        self.name = name


class DuplicateName(ParseError):
    def __init__(self, line, name):
        super().__init__(line, f"duplicate name {name!r}")
        self.name = name

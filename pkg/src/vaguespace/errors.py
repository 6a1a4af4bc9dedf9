"""Exception hierarchy."""


class VagueSpaceError(Exception):
    """Base class for errors raised by this package."""


class DomainError(VagueSpaceError, ValueError):
    """An argument lies outside the domain of an operation."""


class ExprSyntaxError(VagueSpaceError, ValueError):
    def __init__(self, message: str, pos: int, text: str = ""):
        self.pos = pos
        self.text = text
        super().__init__(f"{message} at position {pos}")


class UnknownAttributeError(VagueSpaceError, KeyError):
    def __init__(self, name: str):
        self.name = name
        super().__init__(name)

    def __str__(self) -> str:
        return f"unknown attribute {self.name!r}"


class UnsupportedCompositionError(VagueSpaceError):
    """Negation of a compound attribute in a non-regular space under strict evaluation."""


class InvalidSpaceError(VagueSpaceError, ValueError):
    pass


class SpecFileError(VagueSpaceError, ValueError):
    """A space/partition/process file failed validation; ``field`` names the culprit."""

    def __init__(self, field: str, message: str):
        self.field = field
        super().__init__(f"{field}: {message}")

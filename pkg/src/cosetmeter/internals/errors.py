from __future__ import annotations

from typing import TYPE_CHECKING

if TYPE_CHECKING:
    from cosetmeter.internals.stabilizer import Violation


class CosetmeterError(Exception):
    """
    Base class for every error raised by cosetmeter.
    """


class DimensionMismatchError(CosetmeterError, ValueError):
    pass


class ParameterError(CosetmeterError, ValueError):
    pass


class PauliParseError(CosetmeterError, ValueError):
    def __init__(self, text: str, position: int, character: str) -> None:
        self.text = text
        self.position = position
        self.character = character
        super().__init__(
            f"invalid Pauli character {character!r} at position {position}; expected one of I, X, Y, Z"
        )


class CodeValidationError(CosetmeterError):
    def __init__(self, violations: list[Violation], name: str = "code") -> None:
        self.violations = violations
        details = "; ".join(violation.message for violation in violations)
        super().__init__(f"{name} failed validation: {details}")


class CodeFormatError(CosetmeterError):
    """
    A code file could not be parsed. `where` names the line or field.
    """

    def __init__(self, source: str, where: str, message: str) -> None:
        self.source = source
        self.where = where
        super().__init__(f"{source}: {where}: {message}")


class EnumerationCapError(CosetmeterError):
    def __init__(self, generators: int, cap: int) -> None:
        self.generators = generators
        self.cap = cap
        super().__init__(
            f"refusing to enumerate 2^{generators} stabilizer elements (cap is N-k <= {cap})"
        )


class NotInCentralizerError(CosetmeterError):
    def __init__(self) -> None:
        super().__init__(
            "not in centralizer: operator has a nonzero syndrome, the encoded Pauli test is undefined"
        )


class NoLogicalQubitsError(CosetmeterError):
    def __init__(self) -> None:
        super().__init__("no logical qubits: k = 0")


class ConfigError(CosetmeterError):
    def __init__(self, field: str, message: str) -> None:
        self.field = field
        super().__init__(f"{field}: {message}")


class TraceFormatError(CosetmeterError):
    def __init__(self, line_number: int, message: str) -> None:
        self.line_number = line_number
        super().__init__(f"line {line_number}: {message}")


class NotCssError(CosetmeterError):
    def __init__(self, name: str, purpose: str) -> None:
        self.name = name
        super().__init__(f"{name} is not a CSS code; {purpose} needs an hx/hz pair")
